#include <cmath>
#include <random>

#include "tdgl/diagnostics.hpp"
#include "tdgl/kernels.hpp"

namespace tdgl {

namespace {

std::vector<Complex> random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> u(n);
  for (auto& z : u) {
    const double re = normal(rng);
    z = Complex(re, normal(rng));
  }
  return u;
}

}  // namespace

double contraction_value(const ComplexCsr& lhat, std::span<const double> mass, double mu, std::span<const Complex> u) {
  const int i = mbp_stats(u).index;
  Complex row{};
  for (int k = lhat.row_ptr[i]; k < lhat.row_ptr[i + 1]; ++k) row += lhat.val[k] * u[lhat.col[k]];
  const Complex lu = row / mass[i] - mu * u[i];
  return (std::conj(u[i]) * lu).real();
}

ContractionReport contraction_check(const ComplexCsr& lhat, std::span<const double> mass, double mu,
                                    std::span<const std::vector<Complex>> vectors) {
  ContractionReport rep;
  for (const auto& u : vectors) {
    const double v = contraction_value(lhat, mass, mu, u);
    const double umax = mbp_stats(u).max_modulus;
    // Rounding scale of the row evaluation.
    const double tol = 1e-12 * umax * umax * (1.0 + mu);
    ++rep.trials;
    rep.worst = std::max(rep.worst, v);
    if (v > tol)
      ++rep.violations;
    else if (v >= -tol)
      ++rep.boundary_cases;
  }
  return rep;
}

ContractionReport contraction_check(const ComplexCsr& lhat, std::span<const double> mass, double mu, int trials,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Complex>> vectors;
  vectors.reserve(trials);
  for (int t = 0; t < trials; ++t) vectors.push_back(random_vector(rng, lhat.n));
  return contraction_check(lhat, mass, mu, vectors);
}

DefinitenessReport negative_definiteness_check(const ComplexCsr& lhat, std::span<const double> mass, double mu,
                                               int trials, std::uint64_t seed, double slack) {
  std::mt19937_64 rng(seed);
  DefinitenessReport rep;
  std::vector<Complex> lw(lhat.n);
  for (int t = 0; t < trials; ++t) {
    const auto w = random_vector(rng, lhat.n);
    kernels::spmv(lhat, w, lw);
    // W^H D (D^{-1} Lhat - mu I) W = W^H Lhat W - mu W^H D W
    double dnorm = 0.0;
    for (int i = 0; i < lhat.n; ++i) dnorm += mass[i] * std::norm(w[i]);
    const double quad = kernels::dotc(w, lw).real() - mu * dnorm;
    const double margin = quad + mu * dnorm;
    ++rep.trials;
    rep.worst_margin = std::max(rep.worst_margin, margin);
    if (margin > slack) ++rep.violations;
  }
  return rep;
}

}  // namespace tdgl
