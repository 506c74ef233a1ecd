#include <cmath>

#include "tdgl/diagnostics.hpp"
#include "tdgl/errors.hpp"

namespace tdgl {

ErrorReport ErrorReport::relative() const {
  auto ratio = [](double e, double n) { return n > 0.0 ? e / n : e; };
  ErrorReport r = *this;
  r.l2_a = ratio(l2_a, norm_a);
  r.l2_curl_a = ratio(l2_curl_a, norm_curl_a);
  r.l2_psi = ratio(l2_psi, norm_psi);
  r.l2_grad_psi = ratio(l2_grad_psi, norm_grad_psi);
  return r;
}

ErrorReport error_norms(const Discretization& disc, std::span<const double> a, std::span<const Complex> psi,
                        const ExactSolution& exact, double t) {
  const auto& rule = dunavant4_rule();
  ErrorReport r;
  r.h = disc.mesh().h();
  for (int c = 0; c < disc.num_cells(); ++c) {
    const double area = disc.geometry(c).area;
    const double curl_h = disc.edge_curl(a, c);
    const ComplexVec2 grad_h = disc.nodal_gradient(psi, c);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& b = rule.points[q];
      const double w = rule.weights[q] * area;
      const Vec2 x = disc.point(c, b);
      const Vec2 ae = exact.a(x, t);
      const double ce = exact.curl_a(x, t);
      const Complex pe = exact.psi(x, t);
      const ComplexVec2 ge = exact.grad_psi(x, t);
      r.l2_a += w * norm2(ae - disc.edge_value(a, c, b));
      r.l2_curl_a += w * (ce - curl_h) * (ce - curl_h);
      r.l2_psi += w * std::norm(pe - disc.nodal_value(psi, c, b));
      r.l2_grad_psi += w * (std::norm(ge.x - grad_h.x) + std::norm(ge.y - grad_h.y));
      r.norm_a += w * norm2(ae);
      r.norm_curl_a += w * ce * ce;
      r.norm_psi += w * std::norm(pe);
      r.norm_grad_psi += w * (std::norm(ge.x) + std::norm(ge.y));
    }
  }
  for (double* v : {&r.l2_a, &r.l2_curl_a, &r.l2_psi, &r.l2_grad_psi, &r.norm_a, &r.norm_curl_a, &r.norm_psi,
                    &r.norm_grad_psi})
    *v = std::sqrt(*v);
  return r;
}

std::vector<std::optional<double>> convergence_rates(std::span<const std::pair<double, double>> h_and_error) {
  std::vector<std::optional<double>> rates;
  for (std::size_t k = 0; k + 1 < h_and_error.size(); ++k) {
    const auto [h0, e0] = h_and_error[k];
    const auto [h1, e1] = h_and_error[k + 1];
    if (!(h1 < h0) || std::abs(h0 / h1 - 2.0) > 1e-9)
      throw Error("convergence_rates: mesh size must halve between consecutive entries");
    // Errors at rounding level carry no rate information.
    constexpr double floor = 1e-12;
    if (e0 > floor && e1 > floor && std::isfinite(e0) && std::isfinite(e1))
      rates.emplace_back(std::log2(e0 / e1));
    else
      rates.emplace_back(std::nullopt);
  }
  return rates;
}

}  // namespace tdgl
