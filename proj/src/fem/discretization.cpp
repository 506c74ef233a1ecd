#include "tdgl/errors.hpp"
#include "tdgl/fem.hpp"

namespace tdgl {

LumpedMass lumped_mass(const Mesh& mesh) {
  LumpedMass m;
  m.d.assign(mesh.num_vertices(), 0.0);
  for (int c = 0; c < mesh.num_cells(); ++c)
    for (int v : mesh.cell(c)) m.d[v] += mesh.area(c) / 3.0;
  return m;
}

Discretization::Discretization(Mesh mesh) : mesh_(std::move(mesh)) {
  const int nc = mesh_.num_cells();
  geometry_.resize(nc);
  edge_cells_.resize(nc);
  std::vector<int> nodal_dofs(3 * nc), edge_dofs(6 * nc);

  for (int c = 0; c < nc; ++c) {
    const auto& cell = mesh_.cell(c);
    CellGeometry& g = geometry_[c];
    for (int k = 0; k < 3; ++k) g.p[k] = mesh_.vertex(cell[k]);
    g.area = mesh_.area(c);
    const double inv2a = 1.0 / (2.0 * g.area);
    for (int k = 0; k < 3; ++k) {
      const Vec2 p1 = g.p[(k + 1) % 3], p2 = g.p[(k + 2) % 3];
      g.grad[k] = {(p1.y - p2.y) * inv2a, (p2.x - p1.x) * inv2a};
    }

    EdgeCell& ec = edge_cells_[c];
    const auto& ce = mesh_.cell_edges()[c];
    for (int v = 0; v < 3; ++v) {
      const int gv = cell[v];
      const int local_edges[2] = {v, (v + 2) % 3};
      Vec2 t[2];
      for (int s = 0; s < 2; ++s) {
        const int e = ce[local_edges[s]].edge;
        t[s] = mesh_.tangent(e);
        ec.dof[2 * v + s] = 2 * e + (mesh_.edges()[e].a == gv ? 0 : 1);
        ec.vertex[2 * v + s] = v;
      }
      // Columns of [t0^T; t1^T]^{-1}.
      const double det = cross(t[0], t[1]);
      ec.w[2 * v] = {t[1].y / det, -t[1].x / det};
      ec.w[2 * v + 1] = {-t[0].y / det, t[0].x / det};
    }
    for (int k = 0; k < 3; ++k) nodal_dofs[3 * c + k] = cell[k];
    for (int k = 0; k < 6; ++k) edge_dofs[6 * c + k] = ec.dof[k];
  }
  mass_ = lumped_mass(mesh_);
  nodal_pattern_ = SparsityPattern(mesh_.num_vertices(), 3, nodal_dofs);
  edge_pattern_ = SparsityPattern(num_edge_dofs(), 6, edge_dofs);
}

Vec2 Discretization::point(int c, const std::array<double, 3>& bary) const {
  const auto& g = geometry_[c];
  return bary[0] * g.p[0] + bary[1] * g.p[1] + bary[2] * g.p[2];
}

Vec2 Discretization::edge_value(std::span<const double> a, int c, const std::array<double, 3>& bary) const {
  const auto& ec = edge_cells_[c];
  Vec2 out;
  for (int j = 0; j < 6; ++j) out = out + (a[ec.dof[j]] * bary[ec.vertex[j]]) * ec.w[j];
  return out;
}

double Discretization::edge_curl(std::span<const double> a, int c) const {
  const auto& ec = edge_cells_[c];
  const auto& g = geometry_[c];
  double curl = 0.0;
  for (int j = 0; j < 6; ++j) curl += a[ec.dof[j]] * cross(g.grad[ec.vertex[j]], ec.w[j]);
  return curl;
}

Complex Discretization::nodal_value(std::span<const Complex> psi, int c, const std::array<double, 3>& bary) const {
  const auto& cell = mesh_.cell(c);
  return bary[0] * psi[cell[0]] + bary[1] * psi[cell[1]] + bary[2] * psi[cell[2]];
}

ComplexVec2 Discretization::nodal_gradient(std::span<const Complex> psi, int c) const {
  const auto& cell = mesh_.cell(c);
  const auto& g = geometry_[c];
  ComplexVec2 out{};
  for (int k = 0; k < 3; ++k) {
    out.x += psi[cell[k]] * g.grad[k].x;
    out.y += psi[cell[k]] * g.grad[k].y;
  }
  return out;
}

}  // namespace tdgl
