#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tdgl {

enum class Scenario { Manufactured, LShape, SquareWithHoles, Custom };

std::string_view scenario_name(Scenario s);

/// Validated run configuration. Text form is line-oriented `key = value`
/// with `[section]` headers; `#` starts a comment.
///
///     scenario = lshape
///     [mesh]      generator, M, file
///     [physics]   kappa, sigma, H, mu, mu_safety, psi0_re, psi0_im
///     [time]      T, tau, alpha, tau_min, tau_max
///     [solver]    krylov_tol, krylov_max_dim, cg_tol, energy_check
///     [output]    directory, snapshots, series_every
struct RunConfig {
  Scenario scenario = Scenario::LShape;

  std::string mesh_generator = "lshape";  // unit_square | lshape | holes | file
  int mesh_M = 16;
  std::string mesh_file;

  double kappa = 10.0;
  double sigma = 1.0;
  std::string applied_field = "5";  // a number or "manufactured"
  std::string mu = "2";             // a number or "auto"
  double mu_safety = 2.0;
  double psi0_re = 0.6;
  double psi0_im = 0.8;

  double T = 20.0;
  std::string tau = "adaptive";  // a number, "adaptive", or "h" (tau = 1/M)
  double alpha = 1e5;
  double tau_min = 0.02;
  double tau_max = 0.2;

  double krylov_tol = 1e-10;
  int krylov_max_dim = 100;
  double cg_tol = 1e-12;
  std::string energy_check = "warn";  // off | warn | abort

  std::string output_directory = "out";
  std::vector<double> snapshots;
  int series_every = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Scenario defaults before any override.
RunConfig default_config(Scenario s);

/// Unknown keys, unparsable values and out-of-range values throw ConfigError
/// naming the key.
RunConfig parse_config(std::string_view text);
std::string emit_config(const RunConfig& cfg);
void validate(const RunConfig& cfg);

RunConfig load_config_file(const std::string& path);

}  // namespace tdgl
