#include <cmath>
#include <numbers>

#include "tdgl/diagnostics.hpp"

namespace tdgl {

EnergyBreakdown discrete_energy(const Discretization& disc, std::span<const double> a, std::span<const Complex> psi,
                                const ScalarFnT& applied_field, double t, double kappa) {
  EnergyBreakdown e;
  e.covariant = 0.5 * covariant_energy_seminorm(disc, a, psi, kappa);

  const auto& rule = dunavant4_rule();
  double mag = 0.0;
  for (int c = 0; c < disc.num_cells(); ++c) {
    const double curl = disc.edge_curl(a, c);
    double cell = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double hval = applied_field ? applied_field(disc.point(c, rule.points[q]), t) : 0.0;
      cell += rule.weights[q] * (curl - hval) * (curl - hval);
    }
    mag += disc.geometry(c).area * cell;
  }
  e.magnetic = 0.5 * mag;

  const auto& d = disc.mass().d;
  double pot = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double s = std::norm(psi[i]) - 1.0;
    pot += d[i] * s * s;
  }
  e.potential = 0.25 * pot;
  e.total = e.covariant + e.magnetic + e.potential;
  return e;
}

std::vector<double> magnetization(const Discretization& disc, std::span<const double> a,
                                  const ScalarFnT& applied_field, double t) {
  std::vector<double> m(disc.num_cells());
  const auto& centroid = centroid_rule().points[0];
  for (int c = 0; c < disc.num_cells(); ++c) {
    const double hval = applied_field ? applied_field(disc.point(c, centroid), t) : 0.0;
    m[c] = (disc.edge_curl(a, c) - hval) / (4.0 * std::numbers::pi);
  }
  return m;
}

double field_work(const Discretization& disc, std::span<const double> a, const ScalarFnT& applied_field,
                  double t_prev, double t_n) {
  if (!applied_field || !(t_n > t_prev)) return 0.0;
  const auto& rule = dunavant4_rule();
  double total = 0.0;
  for (int c = 0; c < disc.num_cells(); ++c) {
    const double curl = disc.edge_curl(a, c);
    double cell = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Vec2 x = disc.point(c, rule.points[q]);
      const double hn = applied_field(x, t_n);
      const double dh = (hn - applied_field(x, t_prev)) / (t_n - t_prev);
      cell += rule.weights[q] * (curl - hn) * dh;
    }
    total += disc.geometry(c).area * cell;
  }
  // -4 pi (M, dH) with M = (curl A - H)/(4 pi)
  return -total;
}

MbpStats mbp_stats(std::span<const Complex> psi) {
  MbpStats s;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double m = std::abs(psi[i]);
    if (s.index < 0 || m > s.max_modulus) {
      s.max_modulus = m;
      s.index = static_cast<int>(i);
    }
  }
  return s;
}

}  // namespace tdgl
