#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "tdgl/errors.hpp"
#include "tdgl/fem.hpp"
#include "tdgl/linalg.hpp"

using namespace tdgl;
using namespace tdgl::testing;

namespace {

constexpr double pi = std::numbers::pi;

Discretization square(int M) { return Discretization(generate_uniform(StructuredDomain::unit_square(), M)); }

Discretization unit_triangle() { return Discretization(Mesh::from_cells({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}})); }

Discretization hexagon() {
  std::vector<Vec2> v{{0, 0}};
  for (int k = 0; k < 6; ++k) v.push_back({std::cos(k * pi / 3), std::sin(k * pi / 3)});
  std::vector<Cell> c;
  for (int k = 0; k < 6; ++k) c.push_back({0, 1 + k, 1 + (k + 1) % 6});
  return Discretization(Mesh::from_cells(v, c));
}

double monomial(const std::array<double, 3>& b, int i, int j, int k) {
  return std::pow(b[0], i) * std::pow(b[1], j) * std::pow(b[2], k);
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Integral of l0^i l1^j l2^k over a triangle divided by its area.
double exact_bary_average(int i, int j, int k) {
  return 2.0 * factorial(i) * factorial(j) * factorial(k) / factorial(i + j + k + 2);
}

const EdgeField rotation_field(const Discretization& d) {
  return interpolate_edge(d, [](Vec2 p) { return Vec2{-p.y, p.x}; });
}

}  // namespace

TEST_CASE("quadrature rules integrate their degree exactly") {
  for (const QuadRule* rule : {&centroid_rule(), &midpoint_rule(), &dunavant4_rule()}) {
    double wsum = 0.0;
    for (double w : rule->weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
    for (int i = 0; i <= rule->degree; ++i)
      for (int j = 0; i + j <= rule->degree; ++j)
        for (int k = 0; i + j + k <= rule->degree; ++k) {
          double q = 0.0;
          for (std::size_t p = 0; p < rule->points.size(); ++p) q += rule->weights[p] * monomial(rule->points[p], i, j, k);
          CHECK(q == doctest::Approx(exact_bary_average(i, j, k)).epsilon(1e-14));
        }
  }
}

TEST_CASE("lumped mass") {
  const LumpedMass single = lumped_mass(unit_triangle().mesh());
  for (double d : single.d) CHECK(d == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  const int M = 8;
  const Discretization d = square(M);
  double sum = 0.0;
  for (double x : d.mass().d) {
    CHECK(x > 0.0);
    sum += x;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < d.num_nodes(); ++i) {
    const Vec2 p = d.mesh().vertex(i);
    if (p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1) CHECK(d.mass().d[i] == doctest::Approx(1.0 / (M * M)).epsilon(1e-13));
  }
}

TEST_CASE("Lhat with zero potential is the scaled stiffness matrix") {
  const Discretization d = square(4);
  const EdgeField zero(d.num_edge_dofs(), 0.0);
  const double kappa = 3.0;
  const ComplexCsr l = assemble_Lhat(d, zero, kappa);
  const RealCsr k = assemble_P1_stiffness(d);
  for (int i = 0; i < l.n; ++i)
    for (int p = l.row_ptr[i]; p < l.row_ptr[i + 1]; ++p) {
      CHECK(l.val[p].imag() == 0.0);
      CHECK(l.val[p].real() == doctest::Approx(-k.at(i, l.col[p]) / (kappa * kappa)).epsilon(1e-14));
    }
  const std::vector<Complex> ones(d.num_nodes(), 1.0);
  CHECK(max_abs_diff(matvec(l, ones), std::vector<Complex>(d.num_nodes())) < 1e-13);
  CHECK_THROWS_AS(assemble_Lhat(d, zero, 0.0), Error);
}

TEST_CASE("Lhat diagonal on the unit right triangle") {
  const Discretization d = unit_triangle();
  const ComplexCsr l = assemble_Lhat(d, EdgeField(d.num_edge_dofs(), 0.0), 1.0);
  CHECK(l.at(0, 0).real() == doctest::Approx(-1.0));
  CHECK(l.at(1, 1).real() == doctest::Approx(-0.5));
  CHECK(l.at(2, 2).real() == doctest::Approx(-0.5));
}

TEST_CASE("Lhat is exactly Hermitian for random potentials") {
  const Discretization d(generate_uniform(StructuredDomain::lshape(), 8));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const ComplexCsr l = assemble_Lhat(d, random_real(d.num_edge_dofs(), seed, 2.0), 0.7);
    CHECK(hermitian_defect(l) == 0.0);
  }
}

TEST_CASE("stiffness off-diagonals negative on a strictly acute mesh") {
  const Discretization d = hexagon();
  const RealCsr k = assemble_P1_stiffness(d);
  for (int i = 0; i < k.n; ++i)
    for (int p = k.row_ptr[i]; p < k.row_ptr[i + 1]; ++p)
      if (k.col[p] != i) CHECK(k.val[p] < 0.0);
}

TEST_CASE("A system is SPD") {
  const Discretization d = square(2);
  const NodalField psi(d.num_nodes(), 0.0);
  const RealCsr m = assemble_A_system(d, psi, 1.0, 0.1);
  CHECK(symmetry_defect(m) == 0.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto x = random_real(m.n, seed);
    CHECK(kernels::serial::dot(x, matvec(m, x)) > 0.0);
  }
  const auto rhs = random_real(m.n, 99);
  const CgResult r = cg_solve(m, rhs);
  CHECK(r.relative_residual <= 1e-12);
  CHECK_THROWS_AS(assemble_A_system(d, psi, 0.0, 0.1), Error);
  CHECK_THROWS_AS(assemble_A_system(d, psi, 1.0, 0.0), Error);
}

TEST_CASE("curl of the rotation field is 2 in every cell") {
  const Discretization d = square(4);
  const EdgeField a = rotation_field(d);
  for (int c = 0; c < d.num_cells(); ++c) CHECK(d.edge_curl(a, c) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("weighted mass with constant unit psi equals the edge mass") {
  const Discretization d(generate_uniform(StructuredDomain::lshape(), 4));
  NodalField psi(d.num_nodes());
  for (int i = 0; i < d.num_nodes(); ++i) psi[i] = std::polar(1.0, 0.37);
  const RealCsr w = assemble_weighted_edge_mass(d, psi);
  const RealCsr m = assemble_edge_mass(d);
  REQUIRE(w.nnz() == m.nnz());
  CHECK(max_abs_diff(w.val, m.val) < 1e-12);
}

TEST_CASE("edge mass agrees with quadrature of the basis") {
  const Discretization d = square(3);
  const RealCsr m = assemble_edge_mass(d);
  RealCsr q = d.edge_pattern().zero_matrix<double>();
  const auto& rule = dunavant4_rule();
  for (int c = 0; c < d.num_cells(); ++c) {
    const auto& ec = d.edge_cell(c);
    std::array<double, 36> local{};
    for (std::size_t p = 0; p < rule.points.size(); ++p)
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          local[6 * i + j] += rule.weights[p] * d.geometry(c).area * rule.points[p][ec.vertex[i]] *
                              rule.points[p][ec.vertex[j]] * dot(ec.w[i], ec.w[j]);
    d.edge_pattern().scatter_add<double>(q, c, local);
  }
  CHECK(max_abs_diff(m.val, q.val) < 1e-15);
}

TEST_CASE("edge fields are tangentially continuous") {
  const Discretization d(generate_uniform(StructuredDomain::lshape(), 4));
  const EdgeField a = random_real(d.num_edge_dofs(), 5);
  const Mesh& mesh = d.mesh();
  std::vector<std::vector<int>> cells_of_edge(mesh.num_edges());
  for (int c = 0; c < mesh.num_cells(); ++c)
    for (const CellEdge& ce : mesh.cell_edges()[c]) cells_of_edge[ce.edge].push_back(c);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge ed = mesh.edges()[e];
    const Vec2 t = mesh.tangent(e);
    for (double s : {0.0, 0.3, 1.0}) {
      std::vector<double> values;
      for (int c : cells_of_edge[e]) {
        std::array<double, 3> b{};
        for (int k = 0; k < 3; ++k) {
          if (mesh.cell(c)[k] == ed.a) b[k] = 1.0 - s;
          if (mesh.cell(c)[k] == ed.b) b[k] = s;
        }
        values.push_back(dot(d.edge_value(a, c, b), t));
      }
      // Endpoint values are the dofs themselves.
      if (s == 0.0) CHECK(values[0] == doctest::Approx(a[2 * e]));
      if (s == 1.0) CHECK(values[0] == doctest::Approx(a[2 * e + 1]));
      if (values.size() == 2) CHECK(values[0] == doctest::Approx(values[1]).epsilon(1e-13));
    }
  }
}

TEST_CASE("edge interpolation reproduces linear vector fields") {
  const Discretization d = square(3);
  auto f = [](Vec2 p) { return Vec2{1.0 - p.y + 0.5 * p.x, 2.0 + p.x - 3.0 * p.y}; };
  const EdgeField a = interpolate_edge(d, f);
  const auto& rule = dunavant4_rule();
  for (int c = 0; c < d.num_cells(); ++c)
    for (const auto& b : rule.points) {
      const Vec2 v = d.edge_value(a, c, b), e = f(d.point(c, b));
      CHECK(v.x == doctest::Approx(e.x).epsilon(1e-13));
      CHECK(v.y == doctest::Approx(e.y).epsilon(1e-13));
    }
}

TEST_CASE("A rhs examples") {
  const Discretization d = square(1);
  const int n = d.num_edge_dofs();
  const EdgeField zero(n, 0.0);
  const NodalField constant(d.num_nodes(), Complex(0.3, 0.4));
  const std::vector<double> rhs0 = assemble_A_rhs(d, constant, zero, [](Vec2, double) { return 0.0; }, {}, 1.0, 1.0, 0.1, 0.0);
  CHECK(max_abs(rhs0) == 0.0);

  const double c = 1.7;
  const NodalField none(d.num_nodes(), 0.0);
  const std::vector<double> rhs = assemble_A_rhs(d, none, zero, [c](Vec2, double) { return c; }, {}, 1.0, 1.0, 0.1, 0.0);
  const EdgeField unit_curl = interpolate_edge(d, [](Vec2 p) { return Vec2{-0.5 * p.y, 0.5 * p.x}; });
  CHECK(kernels::serial::dot(rhs, unit_curl) == doctest::Approx(c * 1.0).epsilon(1e-13));
}

TEST_CASE("supercurrent of a plane wave") {
  for (double kappa : {1.0, 4.0, 10.0})
    for (double x : {0.0, 0.3, 0.9}) {
      const Complex psi = std::polar(1.0, kappa * x);
      const Vec2 g = supercurrent(psi, {Complex(0, kappa) * psi, 0.0}, kappa);
      CHECK(g.x == doctest::Approx(-1.0).epsilon(1e-14));
      CHECK(g.y == doctest::Approx(0.0));
    }
}

TEST_CASE("Ritz projection reproduces members of the edge space") {
  const Discretization d(generate_uniform(StructuredDomain::lshape(), 4));
  const EdgeField a = ritz_projection(d, {[](Vec2 p) { return Vec2{-p.y, p.x}; }, [](Vec2) { return 2.0; }});
  CHECK(max_abs_diff(a, rotation_field(d)) < 1e-10);
  const EdgeField z = ritz_projection(d, {[](Vec2) { return Vec2{0, 0}; }, [](Vec2) { return 0.0; }});
  CHECK(max_abs(z) == 0.0);
}

TEST_CASE("Ritz projection error decays quadratically") {
  const CurlField f{[](Vec2 p) { return Vec2{std::sin(pi * p.x) * std::sin(pi * p.y), p.x * p.x * p.y}; },
                    [](Vec2 p) { return 2 * p.x * p.y - pi * std::sin(pi * p.x) * std::cos(pi * p.y); }};
  std::vector<double> err;
  for (int M : {8, 16}) {
    const Discretization d = square(M);
    const EdgeField a = ritz_projection(d, f);
    double e2 = 0.0;
    for (int c = 0; c < d.num_cells(); ++c)
      for (std::size_t q = 0; q < dunavant4_rule().points.size(); ++q) {
        const auto& b = dunavant4_rule().points[q];
        e2 += dunavant4_rule().weights[q] * d.geometry(c).area * norm2(d.edge_value(a, c, b) - f.value(d.point(c, b)));
      }
    err.push_back(std::sqrt(e2));
  }
  CHECK(std::log2(err[0] / err[1]) > 1.8);
}

TEST_CASE("nodal interpolation") {
  const Mesh m = generate_uniform(StructuredDomain::unit_square(), 4);
  const NodalField c = interpolate_nodal(m, [](Vec2) { return Complex(0.2, -0.1); });
  for (Complex z : c) CHECK(z == Complex(0.2, -0.1));
  const NodalField l = interpolate_nodal(m, [](Vec2 p) { return Complex(p.x, p.y); });
  bool found = false;
  for (int i = 0; i < m.num_vertices(); ++i)
    if (m.vertex(i) == Vec2{0.25, 0.5}) {
      CHECK(l[i] == Complex(0.25, 0.5));
      found = true;
    }
  CHECK(found);
}

TEST_CASE("nodal interpolation error is second order in L2") {
  auto f = [](Vec2 p) { return Complex(std::cos(2 * pi * p.x), std::cos(pi * p.y)); };
  std::vector<double> err;
  for (int M : {8, 16, 32}) {
    const Discretization d = square(M);
    const NodalField psi = interpolate_nodal(d.mesh(), f);
    double e2 = 0.0;
    for (int c = 0; c < d.num_cells(); ++c)
      for (std::size_t q = 0; q < dunavant4_rule().points.size(); ++q) {
        const auto& b = dunavant4_rule().points[q];
        e2 += dunavant4_rule().weights[q] * d.geometry(c).area * std::norm(d.nodal_value(psi, c, b) - f(d.point(c, b)));
      }
    err.push_back(std::sqrt(e2));
  }
  CHECK(std::log2(err[1] / err[2]) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("covariant seminorm") {
  const Discretization d(generate_uniform(StructuredDomain::lshape(), 4));
  const EdgeField zero(d.num_edge_dofs(), 0.0);
  const EdgeField a = random_real(d.num_edge_dofs(), 11, 1.5);
  CHECK(covariant_energy_seminorm(d, a, NodalField(d.num_nodes(), 0.0), 2.0) == 0.0);
  CHECK(covariant_energy_seminorm(d, zero, NodalField(d.num_nodes(), 1.0), 2.0) == doctest::Approx(0.0));

  for (double kappa : {0.5, 1.0, 10.0}) {
    const auto psi = random_complex(d.num_nodes(), 21);
    const double value = covariant_energy_seminorm(d, a, psi, kappa);
    const ComplexCsr l = assemble_Lhat(d, a, kappa);
    const Complex quad = kernels::serial::dotc(psi, matvec(l, psi));
    CHECK(value == doctest::Approx(-quad.real()).epsilon(1e-10));
    CHECK(std::abs(quad.imag()) < 1e-10 * value);
  }
}

TEST_CASE("lumped inner product equals the integral of the interpolated product") {
  const Discretization d(generate_uniform(StructuredDomain::lshape(), 4));
  const auto v = random_complex(d.num_nodes(), 3), w = random_complex(d.num_nodes(), 4);
  Complex lumped = 0.0;
  for (int i = 0; i < d.num_nodes(); ++i) lumped += d.mass().d[i] * v[i] * std::conj(w[i]);
  NodalField prod(d.num_nodes());
  for (int i = 0; i < d.num_nodes(); ++i) prod[i] = v[i] * std::conj(w[i]);
  Complex integral = 0.0;
  for (int c = 0; c < d.num_cells(); ++c)
    for (std::size_t q = 0; q < midpoint_rule().points.size(); ++q)
      integral += midpoint_rule().weights[q] * d.geometry(c).area * d.nodal_value(prod, c, midpoint_rule().points[q]);
  CHECK(std::abs(lumped - integral) < 1e-13);
}

TEST_CASE("lumped and L2 norms are uniformly equivalent") {
  double lo = 1e300, hi = 0.0;
  for (int M : {4, 8, 16}) {
    const Discretization d = square(M);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto v = random_complex(d.num_nodes(), seed + 100 * M);
      double l2 = 0.0, lumped = 0.0;
      for (int i = 0; i < d.num_nodes(); ++i) lumped += d.mass().d[i] * std::norm(v[i]);
      for (int c = 0; c < d.num_cells(); ++c)
        for (std::size_t q = 0; q < midpoint_rule().points.size(); ++q)
          l2 += midpoint_rule().weights[q] * d.geometry(c).area * std::norm(d.nodal_value(v, c, midpoint_rule().points[q]));
      lo = std::min(lo, std::sqrt(lumped / l2));
      hi = std::max(hi, std::sqrt(lumped / l2));
    }
  }
  // Element-wise bounds for P1: the lumped mass dominates the consistent one
  // and is at most 4 times it.
  CHECK(lo >= 1.0 - 1e-12);
  CHECK(hi <= 2.0 + 1e-12);
}

TEST_CASE("assembled matrices do not depend on cell order") {
  const Mesh base = generate_uniform(StructuredDomain::lshape(), 4);
  std::vector<Cell> cells = base.cells();
  std::mt19937 rng(3);
  std::shuffle(cells.begin(), cells.end(), rng);
  for (auto& c : cells) std::rotate(c.begin(), c.begin() + rng() % 3, c.end());
  const Discretization d0(base), d1(Mesh::from_cells(base.vertices(), cells));
  REQUIRE(d0.mesh().edges() == d1.mesh().edges());

  const EdgeField a = random_real(d0.num_edge_dofs(), 8);
  const auto psi = random_complex(d0.num_nodes(), 9);
  auto same = [](const auto& x, const auto& y) {
    REQUIRE(x.n == y.n);
    double scale = 0.0, diff = 0.0;
    for (int i = 0; i < x.n; ++i)
      for (int p = x.row_ptr[i]; p < x.row_ptr[i + 1]; ++p) {
        scale = std::max(scale, std::abs(x.val[p]));
        diff = std::max(diff, std::abs(x.val[p] - y.at(i, x.col[p])));
      }
    CHECK(x.nnz() == y.nnz());
    CHECK(diff <= 1e-13 * scale);
  };
  same(assemble_Lhat(d0, a, 2.0), assemble_Lhat(d1, a, 2.0));
  same(assemble_A_system(d0, psi, 1.0, 0.1), assemble_A_system(d1, psi, 1.0, 0.1));
  same(assemble_curl_curl(d0), assemble_curl_curl(d1));
  same(assemble_P1_stiffness(d0), assemble_P1_stiffness(d1));
}
