#pragma once

#include <random>
#include <vector>

#include "tdgl/fem.hpp"
#include "tdgl/kernels.hpp"

namespace tdgl::testing {

inline std::vector<double> random_real(int n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (auto& x : v) x = scale * nd(rng);
  return v;
}

inline std::vector<Complex> random_complex(int n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<Complex> v(n);
  for (auto& z : v) z = scale * Complex(nd(rng), nd(rng));
  return v;
}

inline std::vector<double> matvec(const RealCsr& m, std::span<const double> x) {
  std::vector<double> y(m.n);
  kernels::serial::spmv(m, x, y);
  return y;
}

inline std::vector<Complex> matvec(const ComplexCsr& m, std::span<const Complex> x) {
  std::vector<Complex> y(m.n);
  kernels::serial::spmv(m, x, y);
  return y;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_abs(std::span<const double> a) {
  double d = 0.0;
  for (double x : a) d = std::max(d, std::abs(x));
  return d;
}

}  // namespace tdgl::testing
