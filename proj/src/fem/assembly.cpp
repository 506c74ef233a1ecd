#include <cmath>

#include "tdgl/errors.hpp"
#include "tdgl/fem.hpp"
#include "tdgl/kernels.hpp"

namespace tdgl {

namespace {

// Element blocks are computed in parallel into one buffer and scattered in
// cell order, which keeps the summation order (and result) fixed.
template <class T, int B, class Local>
CsrMatrix<T> assemble_blocks(const SparsityPattern& pattern, int num_cells, Local&& local) {
  constexpr int bb = B * B;
  std::vector<T> blocks(static_cast<std::size_t>(num_cells) * bb);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < num_cells; ++c) local(c, std::span<T, bb>(blocks.data() + static_cast<std::size_t>(c) * bb, bb));
  CsrMatrix<T> m = pattern.zero_matrix<T>();
  for (int c = 0; c < num_cells; ++c)
    pattern.scatter_add<T>(m, c, std::span<const T>(blocks.data() + static_cast<std::size_t>(c) * bb, bb));
  return m;
}

struct EdgeTerms {
  double mass = 0.0;   // coefficient of M_edge
  double curl = 0.0;   // coefficient of K_curl
  std::span<const Complex> psi;  // |psi_h|^2 weighted mass when non-empty
};

RealCsr assemble_edge_operator(const Discretization& disc, const EdgeTerms& terms) {
  return assemble_blocks<double, 6>(disc.edge_pattern(), disc.num_cells(), [&](int c, std::span<double, 36> out) {
    const auto& g = disc.geometry(c);
    const auto& ec = disc.edge_cell(c);
    double curls[6];
    for (int j = 0; j < 6; ++j) curls[j] = cross(g.grad[ec.vertex[j]], ec.w[j]);
    for (int j = 0; j < 6; ++j)
      for (int k = j; k < 6; ++k) {
        // integral of lambda_a lambda_b is |K|(1 + delta_ab)/12
        const double lam = g.area * (ec.vertex[j] == ec.vertex[k] ? 2.0 : 1.0) / 12.0;
        double v = terms.mass * lam * dot(ec.w[j], ec.w[k]) + terms.curl * g.area * curls[j] * curls[k];
        out[6 * j + k] = v;
      }
    if (!terms.psi.empty()) {
      const auto& rule = dunavant4_rule();
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const auto& b = rule.points[q];
        const double weight = rule.weights[q] * g.area * std::norm(disc.nodal_value(terms.psi, c, b));
        for (int j = 0; j < 6; ++j)
          for (int k = j; k < 6; ++k)
            out[6 * j + k] += weight * b[ec.vertex[j]] * b[ec.vertex[k]] * dot(ec.w[j], ec.w[k]);
      }
    }
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < j; ++k) out[6 * j + k] = out[6 * k + j];
  });
}

}  // namespace

ComplexCsr assemble_Lhat(const Discretization& disc, std::span<const double> a, double kappa) {
  if (!(kappa > 0.0)) throw Error("assemble_Lhat: kappa must be positive");
  if (static_cast<int>(a.size()) != disc.num_edge_dofs()) throw Error("assemble_Lhat: edge field size mismatch");
  const double inv_k2 = 1.0 / (kappa * kappa), inv_k = 1.0 / kappa;
  const auto& rule = dunavant4_rule();
  return assemble_blocks<Complex, 3>(disc.nodal_pattern(), disc.num_cells(), [&](int c, std::span<Complex, 9> out) {
    const auto& g = disc.geometry(c);
    double mass_a[3][3] = {}, coupling[3][3] = {};
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& b = rule.points[q];
      const double w = rule.weights[q] * g.area;
      const Vec2 av = disc.edge_value(a, c, b);
      const double a2 = norm2(av);
      double a_grad[3];
      for (int i = 0; i < 3; ++i) a_grad[i] = dot(av, g.grad[i]);
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
          mass_a[i][j] += w * a2 * b[i] * b[j];
          coupling[i][j] += w * (b[j] * a_grad[i] - b[i] * a_grad[j]);
        }
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const double stiff = g.area * dot(g.grad[i], g.grad[j]);
        const Complex v(-inv_k2 * stiff - mass_a[i][j], inv_k * coupling[i][j]);
        out[3 * i + j] = v;
        out[3 * j + i] = std::conj(v);
      }
  });
}

RealCsr assemble_edge_mass(const Discretization& disc) { return assemble_edge_operator(disc, {1.0, 0.0, {}}); }

RealCsr assemble_curl_curl(const Discretization& disc) { return assemble_edge_operator(disc, {0.0, 1.0, {}}); }

RealCsr assemble_weighted_edge_mass(const Discretization& disc, std::span<const Complex> psi) {
  if (static_cast<int>(psi.size()) != disc.num_nodes()) throw Error("weighted mass: nodal field size mismatch");
  return assemble_edge_operator(disc, {0.0, 0.0, psi});
}

RealCsr assemble_P1_stiffness(const Discretization& disc) {
  return assemble_blocks<double, 3>(disc.nodal_pattern(), disc.num_cells(), [&](int c, std::span<double, 9> out) {
    const auto& g = disc.geometry(c);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[3 * i + j] = g.area * dot(g.grad[i], g.grad[j]);
  });
}

RealCsr assemble_A_system(const Discretization& disc, std::span<const Complex> psi_prev, double sigma, double tau) {
  if (!(sigma > 0.0)) throw Error("assemble_A_system: sigma must be positive");
  if (!(tau > 0.0)) throw Error("assemble_A_system: tau must be positive");
  if (static_cast<int>(psi_prev.size()) != disc.num_nodes()) throw Error("assemble_A_system: nodal field size mismatch");
  return assemble_edge_operator(disc, {sigma / tau, 1.0, psi_prev});
}

Vec2 supercurrent(Complex psi, ComplexVec2 grad, double kappa) {
  const Complex gx = std::conj(psi) * grad.x, gy = std::conj(psi) * grad.y;
  return {-gx.imag() / kappa, -gy.imag() / kappa};
}

std::vector<double> assemble_A_rhs(const Discretization& disc, std::span<const Complex> psi_prev,
                                   std::span<const double> a_prev, const ScalarFnT& applied_field,
                                   const VectorFnT& forcing, double kappa, double sigma, double tau, double t_n) {
  if (static_cast<int>(psi_prev.size()) != disc.num_nodes() || static_cast<int>(a_prev.size()) != disc.num_edge_dofs())
    throw Error("assemble_A_rhs: size mismatch");
  if (!(kappa > 0.0) || !(sigma > 0.0) || !(tau > 0.0)) throw Error("assemble_A_rhs: kappa, sigma, tau must be positive");

  const int nc = disc.num_cells();
  const auto& rule = dunavant4_rule();
  std::vector<double> blocks(static_cast<std::size_t>(nc) * 6, 0.0);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const auto& g = disc.geometry(c);
    const auto& ec = disc.edge_cell(c);
    double* out = blocks.data() + static_cast<std::size_t>(c) * 6;
    const ComplexVec2 grad = disc.nodal_gradient(psi_prev, c);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& b = rule.points[q];
      const double w = rule.weights[q] * g.area;
      const Vec2 x = disc.point(c, b);
      const double hval = applied_field ? applied_field(x, t_n) : 0.0;
      Vec2 load = (-1.0) * supercurrent(disc.nodal_value(psi_prev, c, b), grad, kappa);
      if (forcing) load = load + forcing(x, t_n);
      for (int j = 0; j < 6; ++j) {
        const double curl_j = cross(g.grad[ec.vertex[j]], ec.w[j]);
        out[j] += w * (hval * curl_j + b[ec.vertex[j]] * dot(load, ec.w[j]));
      }
    }
  }
  std::vector<double> rhs(disc.num_edge_dofs(), 0.0);
  for (int c = 0; c < nc; ++c)
    for (int j = 0; j < 6; ++j) rhs[disc.edge_cell(c).dof[j]] += blocks[static_cast<std::size_t>(c) * 6 + j];

  const RealCsr mass = assemble_edge_mass(disc);
  std::vector<double> ma(rhs.size());
  kernels::spmv(mass, a_prev, ma);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += (sigma / tau) * ma[i];
  return rhs;
}

}  // namespace tdgl
