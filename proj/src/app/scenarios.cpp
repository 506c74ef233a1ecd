#include "tdgl/scenarios.hpp"

#include <charconv>

#include "tdgl/errors.hpp"

namespace tdgl {

namespace {

double number(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key, "expected a number, got '" + v + "'");
  return out;
}

CheckAction check_action(const std::string& v) {
  if (v == "off") return CheckAction::Off;
  if (v == "abort") return CheckAction::Abort;
  return CheckAction::Warn;
}

}  // namespace

Mesh build_mesh(const RunConfig& cfg) {
  if (cfg.mesh_generator == "unit_square") return generate_uniform(StructuredDomain::unit_square(), cfg.mesh_M);
  if (cfg.mesh_generator == "lshape") return generate_uniform(StructuredDomain::lshape(), cfg.mesh_M);
  if (cfg.mesh_generator == "holes") return generate_uniform(StructuredDomain::square_with_holes(), cfg.mesh_M);
  if (cfg.mesh_generator == "file") return load_mesh_file(cfg.mesh_file);
  throw ConfigError("generator", "unknown mesh generator '" + cfg.mesh_generator + "'");
}

Problem build_problem(const RunConfig& cfg, AcutePolicy acute) {
  validate(cfg);
  Mesh mesh = build_mesh(cfg);
  Problem p;
  p.weakly_acute_warning = enforce_acute_policy(audit_mesh(mesh), acute);
  p.disc = std::make_shared<const Discretization>(std::move(mesh));

  SchemeParams& s = p.params;
  s.kappa = cfg.kappa;
  s.sigma = cfg.sigma;
  if (cfg.mu == "auto") {
    s.mu.mode = MuPolicy::Mode::Auto;
  } else {
    s.mu.mode = MuPolicy::Mode::Fixed;
    s.mu.value = number("mu", cfg.mu);
  }
  s.mu.safety_factor = cfg.mu_safety;
  s.T = cfg.T;

  if (cfg.tau == "adaptive") {
    s.tau.adaptive = true;
  } else if (cfg.tau == "h") {
    s.tau.tau = 1.0 / cfg.mesh_M;
  } else {
    s.tau.tau = number("tau", cfg.tau);
  }
  s.tau.alpha = cfg.alpha;
  s.tau.tau_min = cfg.tau_min;
  s.tau.tau_max = cfg.tau_max;

  s.krylov.tol = cfg.krylov_tol;
  s.krylov.max_dim = cfg.krylov_max_dim;
  s.cg.tol = cfg.cg_tol;
  s.energy_check = check_action(cfg.energy_check);
  s.mbp_check = s.energy_check;

  if (cfg.applied_field == "manufactured") {
    const double kappa = cfg.kappa, sigma = cfg.sigma;
    s.H = AppliedField{manufactured::applied_field, false};
    s.forcing_a = [kappa, sigma](Vec2 x, double t) { return manufactured::forcing_a(x, t, kappa, sigma); };
    s.forcing_psi = [kappa](Vec2 x, double t) { return manufactured::forcing_psi(x, t, kappa); };
    const ExactSolution exact = manufactured::exact_solution();
    p.exact = exact;
    p.a0 = CurlField{[exact](Vec2 x) { return exact.a(x, 0.0); }, [exact](Vec2 x) { return exact.curl_a(x, 0.0); }};
    p.psi0 = [exact](Vec2 x) { return exact.psi(x, 0.0); };
  } else {
    s.H = AppliedField::constant(number("H", cfg.applied_field));
    p.a0 = CurlField{[](Vec2) { return Vec2{0.0, 0.0}; }, [](Vec2) { return 0.0; }};
    const Complex psi0{cfg.psi0_re, cfg.psi0_im};
    p.psi0 = [psi0](Vec2) { return psi0; };
  }
  return p;
}

}  // namespace tdgl
