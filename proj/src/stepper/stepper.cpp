#include "tdgl/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "tdgl/errors.hpp"

namespace tdgl {

AppliedField AppliedField::constant(double h) {
  return {[h](Vec2, double) { return h; }, true};
}

Complex f_mu(Complex x, double mu) { return (1.0 - std::norm(x)) * x + mu * x; }

double adaptive_tau(const std::vector<EnergyRecord>& history, const TauPolicy& policy) {
  if (history.size() < 2) return policy.tau_min;
  const auto& last = history[history.size() - 1];
  const auto& prev = history[history.size() - 2];
  const double rate = (last.energy.total - prev.energy.total) / last.tau;
  return std::max(policy.tau_min, policy.tau_max / std::sqrt(1.0 + policy.alpha * rate * rate));
}

double edge_field_sup_norm(const Discretization& disc, std::span<const double> a) {
  static constexpr std::array<std::array<double, 3>, 3> corners{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  double sup = 0.0;
  for (int c = 0; c < disc.num_cells(); ++c)
    for (const auto& b : corners) sup = std::max(sup, std::sqrt(norm2(disc.edge_value(a, c, b))));
  return sup;
}

Stepper::Stepper(std::shared_ptr<const Discretization> disc, SchemeParams params)
    : disc_(std::move(disc)), params_(std::move(params)) {
  if (!disc_) throw Error("Stepper: null discretization");
  if (!(params_.kappa > 0.0)) throw Error("Stepper: kappa must be positive");
  if (!(params_.sigma > 0.0)) throw Error("Stepper: sigma must be positive");
  if (!params_.H.value) throw Error("Stepper: applied field is required");
  if (params_.tau.adaptive) {
    if (!(params_.tau.tau_min > 0.0) || params_.tau.tau_min > params_.tau.tau_max)
      throw Error("Stepper: need 0 < tau_min <= tau_max");
  } else if (!(params_.tau.tau > 0.0)) {
    throw Error("Stepper: tau must be positive");
  }
}

SimulationState Stepper::initialize(const CurlField& a0, const ComplexFn& psi0) const {
  SimulationState s;
  s.A = ritz_projection(*disc_, a0, params_.cg);
  s.Psi = interpolate_nodal(disc_->mesh(), psi0);
  s.initial_bound_warning = mbp_stats(s.Psi).max_modulus > 1.0 + kMbpSlack;
  if (s.initial_bound_warning)
    std::cerr << "warning: max |psi0| > 1, the discrete maximum bound is not guaranteed\n";
  append_energy(s, 0.0, choose_mu(s.A), 0.0);
  return s;
}

EdgeField Stepper::step_A(const SimulationState& state, double tau, double t_n) const {
  const RealCsr system = assemble_A_system(*disc_, state.Psi, params_.sigma, tau);
  const auto rhs = assemble_A_rhs(*disc_, state.Psi, state.A, params_.H.value, params_.forcing_a, params_.kappa,
                                  params_.sigma, tau, t_n);
  return cg_solve(system, rhs, params_.cg, state.A).x;
}

double Stepper::choose_mu(std::span<const double> a_new) const {
  const auto& p = params_.mu;
  if (p.mode == MuPolicy::Mode::Fixed) return std::max(MuPolicy::kFloor, p.value);
  const double sup = edge_field_sup_norm(*disc_, a_new);
  return std::max(MuPolicy::kFloor, 0.375 * sup * sup * p.safety_factor);
}

NodalField Stepper::step_psi(const SimulationState& state, std::span<const double> a_new, double tau,
                             double mu) const {
  const ComplexCsr lhat = assemble_Lhat(*disc_, a_new, params_.kappa);
  const int n = disc_->num_nodes();
  std::vector<Complex> nonlinear(n);
  for (int i = 0; i < n; ++i) {
    nonlinear[i] = f_mu(state.Psi[i], mu);
    if (params_.forcing_psi) nonlinear[i] += params_.forcing_psi(disc_->mesh().vertex(i), state.t);
  }
  const auto& d = disc_->mass().d;
  const auto linear = phi_apply(lhat, d, mu, tau, state.Psi, PhiKind::Phi0, params_.krylov);
  const auto source = phi_apply(lhat, d, mu, tau, nonlinear, PhiKind::Phi1, params_.krylov);
  NodalField out(n);
  for (int i = 0; i < n; ++i) out[i] = linear.values[i] - tau * source.values[i];
  return out;
}

double Stepper::next_tau(const SimulationState& state) const {
  return params_.tau.adaptive ? adaptive_tau(state.energy_history, params_.tau) : params_.tau.tau;
}

void Stepper::append_energy(SimulationState& state, double tau, double mu, double t_prev) const {
  EnergyRecord r;
  r.t = state.t;
  r.tau = tau;
  r.mu = mu;
  r.energy = discrete_energy(*disc_, state.A, state.Psi, params_.H.value, state.t, params_.kappa);
  r.max_psi = mbp_stats(state.Psi).max_modulus;
  if (!params_.H.stationary && tau > 0.0) r.field_work = field_work(*disc_, state.A, params_.H.value, t_prev, state.t);
  state.energy_history.push_back(r);
}

void Stepper::advance(SimulationState& state) const {
  const double tau = next_tau(state);
  const double t_prev = state.t;
  const double t_n = t_prev + tau;

  EdgeField a_new = step_A(state, tau, t_n);
  const double mu = choose_mu(a_new);
  NodalField psi_new = step_psi(state, a_new, tau, mu);

  state.A = std::move(a_new);
  state.Psi = std::move(psi_new);
  state.t = t_n;
  state.n += 1;
  state.tau_current = tau;
  append_energy(state, tau, mu, t_prev);

  const auto& hist = state.energy_history;
  const double g_now = hist.back().energy.total, g_prev = hist[hist.size() - 2].energy.total;
  const double slack = kEnergySlack * std::max(1.0, std::abs(hist.front().energy.total));
  if (params_.H.stationary && params_.energy_check != CheckAction::Off && g_now > g_prev + slack) {
    ++state.energy_increases;
    const std::string msg = "energy increased at step " + std::to_string(state.n) + " (" + std::to_string(g_prev) +
                            " -> " + std::to_string(g_now) + ")";
    if (params_.energy_check == CheckAction::Abort) throw Error(msg);
    std::cerr << "warning: " << msg << "\n";
  }
  if (!state.initial_bound_warning && params_.mbp_check != CheckAction::Off &&
      hist.back().max_psi > 1.0 + kMbpSlack) {
    ++state.mbp_violations;
    const std::string msg = "max |psi| = " + std::to_string(hist.back().max_psi) + " exceeds 1 at step " +
                            std::to_string(state.n);
    if (params_.mbp_check == CheckAction::Abort) throw Error(msg);
    std::cerr << "warning: " << msg << "\n";
  }
}

SimulationState Stepper::run(SimulationState state, const RunCallbacks& callbacks) const {
  std::vector<double> pending = callbacks.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;
  auto emit_snapshots = [&] {
    while (next_snapshot < pending.size() && state.t >= pending[next_snapshot] - 1e-12) {
      if (callbacks.on_snapshot) callbacks.on_snapshot(state, pending[next_snapshot]);
      ++next_snapshot;
    }
  };
  emit_snapshots();
  const double end = params_.T - 1e-12 * std::max(1.0, params_.T);
  while (state.t < end) {
    try {
      advance(state);
    } catch (const Error& e) {
      throw RunAborted(std::string("step ") + std::to_string(state.n + 1) + " failed: " + e.what(), state);
    }
    if (callbacks.on_step) callbacks.on_step(state);
    emit_snapshots();
  }
  return state;
}

}  // namespace tdgl
