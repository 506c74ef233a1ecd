#pragma once

#include <complex>
#include <span>

#include "tdgl/sparse.hpp"

// Data-parallel inner kernels. Every kernel has a plain serial reference in
// `serial` and an OpenMP version in `parallel`. Parallel reductions sum
// fixed-size blocks and combine the partials in block order, so results do not
// depend on the thread count. The unqualified entry points in `kernels`
// dispatch to the parallel versions.
namespace tdgl::kernels {

inline constexpr int kReductionBlock = 2048;

namespace serial {
void spmv(const RealCsr& a, std::span<const double> x, std::span<double> y);
void spmv(const ComplexCsr& a, std::span<const Complex> x, std::span<Complex> y);
double dot(std::span<const double> a, std::span<const double> b);
// sum conj(a_i) b_i
Complex dotc(std::span<const Complex> a, std::span<const Complex> b);
// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
}  // namespace serial

namespace parallel {
void spmv(const RealCsr& a, std::span<const double> x, std::span<double> y);
void spmv(const ComplexCsr& a, std::span<const Complex> x, std::span<Complex> y);
double dot(std::span<const double> a, std::span<const double> b);
Complex dotc(std::span<const Complex> a, std::span<const Complex> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
}  // namespace parallel

using parallel::axpy;
using parallel::dot;
using parallel::dotc;
using parallel::spmv;

double norm(std::span<const double> a);
double norm(std::span<const Complex> a);

int max_threads();
void set_threads(int n);

}  // namespace tdgl::kernels
