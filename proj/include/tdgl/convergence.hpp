#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdgl/config.hpp"
#include "tdgl/diagnostics.hpp"

namespace tdgl {

struct ConvergenceTable {
  std::vector<int> resolutions;  // 1/h
  std::vector<ErrorReport> errors;
  std::vector<std::optional<double>> rate_a, rate_curl_a, rate_psi, rate_grad_psi;
  bool complete = true;  // false when a run failed and the table is partial
  std::string failure;
};

/// Rates from a list of absolute error reports with halving h.
ConvergenceTable tabulate(std::vector<int> resolutions, std::vector<ErrorReport> errors);

struct ConvergenceHooks {
  // Replace the time stepping; returns (A_h, Psi_h) at T.
  std::function<std::pair<EdgeField, NodalField>(const Discretization&, const ExactSolution&, double T)> solve;
  std::optional<ExactSolution> exact;
};

/// Runs the manufactured problem at each resolution M with tau = 1/M (unless
/// the config fixes tau) and measures errors at T.
ConvergenceTable run_convergence_study(const RunConfig& cfg, const std::vector<int>& resolutions,
                                       const ConvergenceHooks& hooks = {});

std::string format_convergence_csv(const ConvergenceTable& table, bool relative = false);

}  // namespace tdgl
