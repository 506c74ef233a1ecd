#pragma once

#include <memory>
#include <optional>

#include "tdgl/config.hpp"
#include "tdgl/diagnostics.hpp"
#include "tdgl/stepper.hpp"

namespace tdgl {

/// Everything needed to start a run.
struct Problem {
  std::shared_ptr<const Discretization> disc;
  SchemeParams params;
  CurlField a0;
  ComplexFn psi0;
  std::optional<ExactSolution> exact;
  bool weakly_acute_warning = false;
};

Mesh build_mesh(const RunConfig& cfg);
Problem build_problem(const RunConfig& cfg, AcutePolicy acute = AcutePolicy::AllowWeak);

/// Manufactured solution on the unit square:
///   psi = e^{-t}(cos 2 pi x + i cos pi y),
///   A   = (e^{t-y} sin pi x, e^{t-x} sin 2 pi y),
///   H   = curl A.
namespace manufactured {

ExactSolution exact_solution();
double applied_field(Vec2 x, double t);
/// Source in the A-equation so that the exact pair solves the scheme's PDE.
Vec2 forcing_a(Vec2 x, double t, double kappa, double sigma);
/// Source in the psi-equation.
Complex forcing_psi(Vec2 x, double t, double kappa);

}  // namespace manufactured

}  // namespace tdgl
