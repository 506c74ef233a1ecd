#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "tdgl/diagnostics.hpp"
#include "tdgl/errors.hpp"

using namespace tdgl;
using namespace tdgl::testing;

namespace {

const ScalarFnT kNoField = [](Vec2, double) { return 0.0; };

Discretization square(int M) { return Discretization(generate_uniform(StructuredDomain::unit_square(), M)); }

}  // namespace

TEST_CASE("energy of the ground state and the normal state") {
  const Discretization d = square(8);
  const EdgeField zero(d.num_edge_dofs(), 0.0);
  const EnergyBreakdown g = discrete_energy(d, zero, NodalField(d.num_nodes(), 1.0), kNoField, 0.0, 2.0);
  CHECK(std::abs(g.total) <= 1e-12);
  const EnergyBreakdown n = discrete_energy(d, zero, NodalField(d.num_nodes(), 0.0), kNoField, 0.0, 2.0);
  CHECK(n.total == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(n.potential == n.total);
}

TEST_CASE("energy of the rotation field") {
  const Discretization d = square(4);
  const EdgeField a = interpolate_edge(d, [](Vec2 p) { return Vec2{-p.y, p.x}; });
  const EnergyBreakdown e = discrete_energy(d, a, NodalField(d.num_nodes(), 0.0), kNoField, 0.0, 1.0);
  CHECK(e.magnetic == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e.potential == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(e.covariant == 0.0);
  CHECK(e.total == doctest::Approx(2.25).epsilon(1e-12));
}

TEST_CASE("energy parts: additivity, sign, lumped potential, phase invariance") {
  const Discretization d(generate_uniform(StructuredDomain::lshape(), 8));
  const ScalarFnT h = [](Vec2 p, double t) { return 1.0 + p.x * t; };
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = random_real(d.num_edge_dofs(), seed, 0.5);
    const auto psi = random_complex(d.num_nodes(), seed + 50, 0.7);
    const EnergyBreakdown e = discrete_energy(d, a, psi, h, 0.3, 3.0);
    CHECK(e.covariant >= 0.0);
    CHECK(e.magnetic >= 0.0);
    CHECK(e.potential >= 0.0);
    CHECK(e.total == e.covariant + e.magnetic + e.potential);

    double pot = 0.0;
    for (int i = 0; i < d.num_nodes(); ++i) pot += d.mass().d[i] * std::pow(std::norm(psi[i]) - 1.0, 2);
    CHECK(e.potential == doctest::Approx(0.25 * pot).epsilon(1e-14));
    CHECK(e.covariant == doctest::Approx(0.5 * covariant_energy_seminorm(d, a, psi, 3.0)).epsilon(1e-14));

    NodalField rotated(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) rotated[i] = std::polar(1.0, 1.234) * psi[i];
    const EnergyBreakdown r = discrete_energy(d, a, rotated, h, 0.3, 3.0);
    CHECK(std::abs(r.total - e.total) <= 1e-12 * std::max(1.0, e.total));
  }
}

TEST_CASE("magnetization") {
  const Discretization d = square(2);
  const EdgeField a = interpolate_edge(d, [](Vec2 p) { return Vec2{-p.y, p.x}; });
  const auto m = magnetization(d, a, [](Vec2, double) { return 0.5; }, 0.0);
  REQUIRE(m.size() == static_cast<std::size_t>(d.num_cells()));
  for (double v : m) CHECK(v == doctest::Approx(1.5 / (4 * std::numbers::pi)));
  CHECK(field_work(d, a, [](Vec2, double) { return 0.5; }, 0.0, 0.1) == 0.0);
  // dH/dt = 1: work is -(curl A - H, 1) = -(2 - 0.1) |Omega|.
  CHECK(field_work(d, a, [](Vec2, double t) { return t; }, 0.0, 0.1) == doctest::Approx(-1.9));
}

TEST_CASE("mbp statistics") {
  const NodalField c(7, Complex(0.6, 0.8));
  CHECK(mbp_stats(c).max_modulus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mbp_stats(c).index == 0);
  CHECK(mbp_stats(NodalField(3, 0.0)).max_modulus == 0.0);
  const NodalField v{0.5, Complex(0, -0.9), Complex(0.3, 0.4)};
  CHECK(mbp_stats(v).max_modulus == doctest::Approx(0.9));
  CHECK(mbp_stats(v).index == 1);
}

TEST_CASE("error norms against self are zero") {
  const Discretization d = square(4);
  ExactSolution ex;
  ex.a = [](Vec2 p, double t) { return Vec2{-p.y * (1 + t), p.x * (1 + t)}; };
  ex.curl_a = [](Vec2, double t) { return 2.0 * (1 + t); };
  ex.psi = [](Vec2 p, double) { return Complex(p.x, p.y); };
  ex.grad_psi = [](Vec2, double) { return ComplexVec2{1.0, Complex(0, 1)}; };
  const double t = 0.5;
  const EdgeField a = interpolate_edge(d, [&](Vec2 p) { return ex.a(p, t); });
  const NodalField psi = interpolate_nodal(d.mesh(), [&](Vec2 p) { return ex.psi(p, t); });
  const ErrorReport r = error_norms(d, a, psi, ex, t);
  CHECK(r.l2_a <= 1e-13);
  CHECK(r.l2_curl_a <= 1e-13);
  CHECK(r.l2_psi <= 1e-13);
  CHECK(r.l2_grad_psi <= 1e-13);
  CHECK(r.norm_curl_a == doctest::Approx(3.0));
  CHECK(r.norm_grad_psi == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.h == d.mesh().h());
}

TEST_CASE("convergence rates") {
  using P = std::pair<double, double>;
  const std::vector<P> halving{{0.5, 0.4}, {0.25, 0.2}, {0.125, 0.1}};
  const auto r = convergence_rates(halving);
  REQUIRE(r.size() == 2);
  CHECK(*r[0] == doctest::Approx(1.0));
  CHECK(*r[1] == doctest::Approx(1.0));

  const std::vector<P> a_col{{1.0 / 16, 1.47e-1}, {1.0 / 32, 7.08e-2}};
  CHECK(*convergence_rates(a_col)[0] == doctest::Approx(1.05).epsilon(0.01));
  const std::vector<P> psi_col{{1.0 / 8, 4.22e-1}, {1.0 / 16, 1.26e-1}};
  CHECK(*convergence_rates(psi_col)[0] == doctest::Approx(1.74).epsilon(0.01));

  const std::vector<P> zeros{{0.5, 0.0}, {0.25, 0.0}};
  CHECK_FALSE(convergence_rates(zeros)[0].has_value());
  const std::vector<P> bad{{0.5, 0.1}, {0.4, 0.05}};
  CHECK_THROWS_AS(convergence_rates(bad), Error);
  const std::vector<P> growing{{0.25, 0.1}, {0.5, 0.05}};
  CHECK_THROWS_AS(convergence_rates(growing), Error);
}

TEST_CASE("contraction condition") {
  const Discretization d(generate_uniform(StructuredDomain::lshape(), 8));
  const ComplexCsr l0 = assemble_Lhat(d, EdgeField(d.num_edge_dofs(), 0.0), 10.0);
  const std::vector<Complex> ones(d.num_nodes(), 1.0);
  CHECK(contraction_value(l0, d.mass().d, 2.0, ones) == doctest::Approx(-2.0).epsilon(1e-12));

  const std::vector<std::vector<Complex>> kernel_vectors{ones};
  const ContractionReport kernel = contraction_check(l0, d.mass().d, 0.0, kernel_vectors);
  CHECK(kernel.trials == 1);
  CHECK(kernel.boundary_cases == 1);
  CHECK(kernel.violations == 0);

  const ContractionReport rep = contraction_check(l0, d.mass().d, 2.0, 1000);
  CHECK(rep.trials == 1000);
  CHECK(rep.violations == 0);
  CHECK(rep.worst < 0.0);

  const ComplexCsr la = assemble_Lhat(d, random_real(d.num_edge_dofs(), 4, 1.0), 10.0);
  CHECK(contraction_check(la, d.mass().d, 2.0, 1000).violations == 0);
}

TEST_CASE("negative definiteness") {
  const Discretization d(generate_uniform(StructuredDomain::lshape(), 8));
  for (double mu : {0.5, 2.0, 10.0}) {
    const ComplexCsr l = assemble_Lhat(d, random_real(d.num_edge_dofs(), 9, 2.0), 1.0);
    const DefinitenessReport r = negative_definiteness_check(l, d.mass().d, mu, 200);
    CHECK(r.violations == 0);
    CHECK(r.worst_margin <= 1e-10);
  }
}
