#include "tdgl/errors.hpp"
#include "tdgl/fem.hpp"
#include "tdgl/kernels.hpp"

namespace tdgl {

EdgeField ritz_projection(const Discretization& disc, const CurlField& exact, const CgConfig& cg) {
  if (!exact.value || !exact.curl) throw Error("ritz_projection: field value and curl are both required");
  const int nc = disc.num_cells();
  const auto& rule = dunavant4_rule();
  std::vector<double> load(disc.num_edge_dofs(), 0.0);
  for (int c = 0; c < nc; ++c) {
    const auto& g = disc.geometry(c);
    const auto& ec = disc.edge_cell(c);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& b = rule.points[q];
      const double w = rule.weights[q] * g.area;
      const Vec2 x = disc.point(c, b);
      const Vec2 av = exact.value(x);
      const double cv = exact.curl(x);
      for (int j = 0; j < 6; ++j)
        load[ec.dof[j]] += w * (cv * cross(g.grad[ec.vertex[j]], ec.w[j]) + b[ec.vertex[j]] * dot(av, ec.w[j]));
    }
  }
  RealCsr system = assemble_curl_curl(disc);
  const RealCsr mass = assemble_edge_mass(disc);
  for (std::size_t k = 0; k < system.val.size(); ++k) system.val[k] += mass.val[k];
  return cg_solve(system, load, cg).x;
}

EdgeField interpolate_edge(const Discretization& disc, const VectorFn& field) {
  const Mesh& mesh = disc.mesh();
  EdgeField out(disc.num_edge_dofs());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Vec2 t = mesh.tangent(e);
    out[2 * e] = dot(field(mesh.vertex(mesh.edges()[e].a)), t);
    out[2 * e + 1] = dot(field(mesh.vertex(mesh.edges()[e].b)), t);
  }
  return out;
}

NodalField interpolate_nodal(const Mesh& mesh, const ComplexFn& psi) {
  NodalField out(mesh.num_vertices());
  for (int i = 0; i < mesh.num_vertices(); ++i) out[i] = psi(mesh.vertex(i));
  return out;
}

double covariant_energy_seminorm(const Discretization& disc, std::span<const double> a,
                                 std::span<const Complex> psi, double kappa) {
  const auto& rule = dunavant4_rule();
  const Complex ik(0.0, 1.0 / kappa);
  double total = 0.0;
  for (int c = 0; c < disc.num_cells(); ++c) {
    const ComplexVec2 grad = disc.nodal_gradient(psi, c);
    const double area = disc.geometry(c).area;
    double cell = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& b = rule.points[q];
      const Vec2 av = disc.edge_value(a, c, b);
      const Complex p = disc.nodal_value(psi, c, b);
      cell += rule.weights[q] * (std::norm(ik * grad.x + av.x * p) + std::norm(ik * grad.y + av.y * p));
    }
    total += area * cell;
  }
  return total;
}

}  // namespace tdgl
