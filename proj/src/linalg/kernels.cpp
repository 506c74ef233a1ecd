#include "tdgl/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <vector>

namespace tdgl::kernels {

namespace {

template <class T>
void spmv_rows(const CsrMatrix<T>& a, const T* x, T* y, int i) {
  T s{};
  for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) s += a.val[k] * x[a.col[k]];
  y[i] = s;
}

template <class T, class Term>
T blocked_sum(std::size_t n, Term term) {
  const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> partial(nblocks, T{});
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
    const std::size_t lo = b * kReductionBlock, hi = std::min(n, lo + kReductionBlock);
    T s{};
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[b] = s;
  }
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace

namespace serial {

void spmv(const RealCsr& a, std::span<const double> x, std::span<double> y) {
  for (int i = 0; i < a.n; ++i) spmv_rows(a, x.data(), y.data(), i);
}

void spmv(const ComplexCsr& a, std::span<const Complex> x, std::span<Complex> y) {
  for (int i = 0; i < a.n; ++i) spmv_rows(a, x.data(), y.data(), i);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Complex dotc(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace serial

namespace parallel {

void spmv(const RealCsr& a, std::span<const double> x, std::span<double> y) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.n; ++i) spmv_rows(a, x.data(), y.data(), i);
}

void spmv(const ComplexCsr& a, std::span<const Complex> x, std::span<Complex> y) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.n; ++i) spmv_rows(a, x.data(), y.data(), i);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return blocked_sum<double>(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

Complex dotc(std::span<const Complex> a, std::span<const Complex> b) {
  return blocked_sum<Complex>(a.size(), [&](std::size_t i) { return std::conj(a[i]) * b[i]; });
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace parallel

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }
double norm(std::span<const Complex> a) { return std::sqrt(dotc(a, a).real()); }

int max_threads() { return omp_get_max_threads(); }
void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace tdgl::kernels
