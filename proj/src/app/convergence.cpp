#include "tdgl/convergence.hpp"

#include <cstdio>

#include "tdgl/errors.hpp"
#include "tdgl/scenarios.hpp"

namespace tdgl {

namespace {

std::vector<std::optional<double>> rates_of(const std::vector<ErrorReport>& errors, double ErrorReport::*member) {
  std::vector<std::pair<double, double>> he;
  for (const auto& e : errors) he.emplace_back(e.h, e.*member);
  return convergence_rates(he);
}

}  // namespace

ConvergenceTable tabulate(std::vector<int> resolutions, std::vector<ErrorReport> errors) {
  ConvergenceTable t;
  t.resolutions = std::move(resolutions);
  t.errors = std::move(errors);
  t.rate_a = rates_of(t.errors, &ErrorReport::l2_a);
  t.rate_curl_a = rates_of(t.errors, &ErrorReport::l2_curl_a);
  t.rate_psi = rates_of(t.errors, &ErrorReport::l2_psi);
  t.rate_grad_psi = rates_of(t.errors, &ErrorReport::l2_grad_psi);
  return t;
}

ConvergenceTable run_convergence_study(const RunConfig& cfg, const std::vector<int>& resolutions,
                                       const ConvergenceHooks& hooks) {
  if (cfg.scenario != Scenario::Manufactured) throw ConfigError("scenario", "convergence study needs 'manufactured'");
  std::vector<int> done;
  std::vector<ErrorReport> errors;
  std::string failure;
  for (int M : resolutions) {
    RunConfig c = cfg;
    c.mesh_M = M;
    try {
      Problem p = build_problem(c);
      const ExactSolution exact = hooks.exact ? *hooks.exact : *p.exact;
      EdgeField a;
      NodalField psi;
      double t_end = c.T;
      if (hooks.solve) {
        std::tie(a, psi) = hooks.solve(*p.disc, exact, c.T);
      } else {
        Stepper stepper(p.disc, p.params);
        SimulationState s = stepper.run(stepper.initialize(p.a0, p.psi0));
        a = std::move(s.A);
        psi = std::move(s.Psi);
        t_end = s.t;
      }
      ErrorReport e = error_norms(*p.disc, a, psi, exact, t_end);
      e.tau = p.params.tau.tau;
      errors.push_back(e);
      done.push_back(M);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      failure = "1/h=" + std::to_string(M) + ": " + ex.what();
      break;
    }
  }
  ConvergenceTable table = tabulate(std::move(done), std::move(errors));
  if (!failure.empty()) {
    table.complete = false;
    table.failure = failure;
  }
  return table;
}

std::string format_convergence_csv(const ConvergenceTable& table, bool relative) {
  std::string out = "inv_h,h,tau,err_A,rate_A,err_curlA,rate_curlA,err_psi,rate_psi,err_gradpsi,rate_gradpsi\n";
  auto rate = [](const std::vector<std::optional<double>>& r, std::size_t k) -> std::string {
    if (k == 0 || k - 1 >= r.size() || !r[k - 1]) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *r[k - 1]);
    return buf;
  };
  for (std::size_t k = 0; k < table.errors.size(); ++k) {
    const ErrorReport e = relative ? table.errors[k].relative() : table.errors[k];
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.6e,%s,%.6e,%s,%.6e,%s,%.6e,%s\n", table.resolutions[k], e.h, e.tau,
                  e.l2_a, rate(table.rate_a, k).c_str(), e.l2_curl_a, rate(table.rate_curl_a, k).c_str(), e.l2_psi,
                  rate(table.rate_psi, k).c_str(), e.l2_grad_psi, rate(table.rate_grad_psi, k).c_str());
    out += buf;
  }
  if (!table.complete) out += "# incomplete: " + table.failure + "\n";
  return out;
}

}  // namespace tdgl
