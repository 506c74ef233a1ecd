#include <doctest.h>

#include "helpers.hpp"
#include "tdgl/fem.hpp"
#include "tdgl/kernels.hpp"

using namespace tdgl;
using namespace tdgl::testing;

// The parallel kernels must agree with the serial reference, and reductions
// must not depend on the thread count.

TEST_CASE("spmv agrees with the serial reference") {
  const Discretization d(generate_uniform(StructuredDomain::unit_square(), 32));
  const RealCsr m = assemble_A_system(d, random_complex(d.num_nodes(), 1), 1.0, 0.1);
  const ComplexCsr l = assemble_Lhat(d, random_real(d.num_edge_dofs(), 2), 1.0);
  const auto x = random_real(m.n, 3);
  const auto z = random_complex(l.n, 4);
  std::vector<double> ys(m.n), yp(m.n);
  kernels::serial::spmv(m, x, ys);
  kernels::parallel::spmv(m, x, yp);
  CHECK(ys == yp);
  std::vector<Complex> zs(l.n), zp(l.n);
  kernels::serial::spmv(l, z, zs);
  kernels::parallel::spmv(l, z, zp);
  CHECK(zs == zp);
}

TEST_CASE("reductions and axpy") {
  for (int n : {0, 1, 2047, 2048, 2049, 10000}) {
    const auto a = random_real(n, 10 + n), b = random_real(n, 20 + n);
    const auto za = random_complex(n, 30 + n), zb = random_complex(n, 40 + n);
    CHECK(kernels::parallel::dot(a, b) == doctest::Approx(kernels::serial::dot(a, b)).epsilon(1e-12));
    const Complex cs = kernels::serial::dotc(za, zb), cp = kernels::parallel::dotc(za, zb);
    CHECK(std::abs(cs - cp) <= 1e-12 * (1.0 + std::abs(cs)));

    auto ys = b, yp = b;
    kernels::serial::axpy(0.7, a, ys);
    kernels::parallel::axpy(0.7, a, yp);
    CHECK(ys == yp);
    auto zs = zb, zp = zb;
    kernels::serial::axpy(Complex(0.2, -0.4), za, zs);
    kernels::parallel::axpy(Complex(0.2, -0.4), za, zp);
    CHECK(zs == zp);
  }
}

TEST_CASE("parallel reductions are independent of the thread count") {
  const auto a = random_real(50000, 5), b = random_real(50000, 6);
  const auto za = random_complex(50000, 7);
  const int saved = kernels::max_threads();
  kernels::set_threads(1);
  const double d1 = kernels::parallel::dot(a, b);
  const double n1 = kernels::norm(za);
  for (int t : {2, 3, 4}) {
    kernels::set_threads(t);
    CHECK(kernels::parallel::dot(a, b) == d1);
    CHECK(kernels::norm(za) == n1);
  }
  kernels::set_threads(saved);
}

TEST_CASE("assembly is independent of the thread count") {
  const Discretization d(generate_uniform(StructuredDomain::lshape(), 16));
  const auto a = random_real(d.num_edge_dofs(), 1);
  const int saved = kernels::max_threads();
  kernels::set_threads(1);
  const ComplexCsr l1 = assemble_Lhat(d, a, 10.0);
  kernels::set_threads(3);
  const ComplexCsr l3 = assemble_Lhat(d, a, 10.0);
  kernels::set_threads(saved);
  CHECK(l1.val == l3.val);
}
