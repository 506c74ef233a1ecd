#pragma once

#include <memory>
#include <functional>
#include <optional>
#include <vector>

#include "tdgl/diagnostics.hpp"
#include "tdgl/errors.hpp"
#include "tdgl/fem.hpp"
#include "tdgl/linalg.hpp"

namespace tdgl {

/// Applied magnetic field H(x, t). `stationary` turns the energy-decay
/// assertion on.
struct AppliedField {
  ScalarFnT value;
  bool stationary = true;

  static AppliedField constant(double h);
};

struct MuPolicy {
  enum class Mode { Fixed, Auto };
  Mode mode = Mode::Fixed;
  double value = 2.0;
  double safety_factor = 2.0;

  static constexpr double kFloor = 2.0;
};

struct TauPolicy {
  bool adaptive = false;
  double tau = 0.02;  // fixed step
  double alpha = 1e5;
  double tau_min = 0.02;
  double tau_max = 0.2;
};

enum class CheckAction { Off, Warn, Abort };

struct SchemeParams {
  double kappa = 1.0;
  double sigma = 1.0;
  MuPolicy mu;
  AppliedField H = AppliedField::constant(0.0);
  VectorFnT forcing_a;
  ComplexFnT forcing_psi;
  double T = 1.0;
  TauPolicy tau;
  KrylovConfig krylov;
  CgConfig cg;
  CheckAction energy_check = CheckAction::Warn;
  CheckAction mbp_check = CheckAction::Warn;
};

/// One record per time level, starting with the initial state.
struct EnergyRecord {
  double t = 0.0;
  double tau = 0.0;
  EnergyBreakdown energy;
  double max_psi = 0.0;
  double mu = 0.0;
  double field_work = 0.0;  // -4 pi (M_h^n, d_t H); zero for stationary H
};

struct SimulationState {
  EdgeField A;
  NodalField Psi;
  double t = 0.0;
  int n = 0;
  double tau_current = 0.0;
  std::vector<EnergyRecord> energy_history;

  bool initial_bound_warning = false;  // max |psi0| > 1 at initialization
  int energy_increases = 0;
  int mbp_violations = 0;
};

inline constexpr double kEnergySlack = 1e-9;
inline constexpr double kMbpSlack = 1e-10;

/// f_mu(x) = (1 - |x|^2) x + mu x.
Complex f_mu(Complex x, double mu);

/// max{tau_min, tau_max / sqrt(1 + alpha |(G^{n-1} - G^{n-2}) / tau^{n-1}|^2)};
/// tau_min while fewer than two energies are known.
double adaptive_tau(const std::vector<EnergyRecord>& history, const TauPolicy& policy);

/// Max over cells and vertices of the pointwise Euclidean norm of A_h.
double edge_field_sup_norm(const Discretization& disc, std::span<const double> a);

struct RunCallbacks {
  std::function<void(const SimulationState&)> on_step;
  std::vector<double> snapshot_times;
  // Called once per requested time, on the first level with t >= requested.
  std::function<void(const SimulationState&, double requested)> on_snapshot;
};

/// Thrown by Stepper::run; carries the state reached before the failure.
class RunAborted : public Error {
 public:
  RunAborted(const std::string& what, SimulationState state) : Error(what), state_(std::move(state)) {}
  const SimulationState& state() const { return state_; }

 private:
  SimulationState state_;
};

/// Decoupled scheme: backward-Euler A-step, then stabilized ETD1 psi-step.
class Stepper {
 public:
  Stepper(std::shared_ptr<const Discretization> disc, SchemeParams params);

  const Discretization& discretization() const { return *disc_; }
  const SchemeParams& params() const { return params_; }

  SimulationState initialize(const CurlField& a0, const ComplexFn& psi0) const;

  /// A^n from (A^{n-1}, Psi^{n-1}); Psi^n never enters.
  EdgeField step_A(const SimulationState& state, double tau, double t_n) const;
  double choose_mu(std::span<const double> a_new) const;
  /// Psi^n = phi0(tau L) Psi^{n-1} - tau phi1(tau L) (f_mu(Psi^{n-1}) + g^{n-1}).
  NodalField step_psi(const SimulationState& state, std::span<const double> a_new, double tau, double mu) const;

  /// One full step: tau from the policy, A-step, mu, psi-step, diagnostics.
  void advance(SimulationState& state) const;
  void append_energy(SimulationState& state, double tau, double mu, double t_prev) const;

  /// Steps until t >= T.
  SimulationState run(SimulationState state, const RunCallbacks& callbacks = {}) const;

  double next_tau(const SimulationState& state) const;

 private:
  std::shared_ptr<const Discretization> disc_;
  SchemeParams params_;
};

}  // namespace tdgl
