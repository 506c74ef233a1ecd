#include "tdgl/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "tdgl/errors.hpp"

namespace tdgl {

double signed_area(Vec2 p0, Vec2 p1, Vec2 p2) {
  return 0.5 * cross(p1 - p0, p2 - p0);
}

Mesh Mesh::from_cells(std::vector<Vec2> vertices, std::vector<Cell> cells) {
  if (cells.empty()) throw MeshError(MeshError::Kind::Empty, "mesh has no cells");

  const int nv = static_cast<int>(vertices.size());
  std::vector<int> use_count(nv, 0);
  Mesh m;
  m.areas_.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto& cell = cells[c];
    for (int v : cell) {
      if (v < 0 || v >= nv)
        throw MeshError(MeshError::Kind::Malformed,
                        "cell " + std::to_string(c) + " references unknown vertex " + std::to_string(v));
      ++use_count[v];
    }
    if (cell[0] == cell[1] || cell[1] == cell[2] || cell[0] == cell[2])
      throw MeshError(MeshError::Kind::Degenerate, "cell " + std::to_string(c) + " repeats a vertex");
    double a = signed_area(vertices[cell[0]], vertices[cell[1]], vertices[cell[2]]);
    if (a < 0.0) {
      std::swap(cell[1], cell[2]);
      a = -a;
    }
    if (!(a > 0.0))
      throw MeshError(MeshError::Kind::Degenerate, "cell " + std::to_string(c) + " has zero area");
    m.areas_.push_back(a);
  }
  for (int v = 0; v < nv; ++v)
    if (use_count[v] == 0)
      throw MeshError(MeshError::Kind::Topology, "vertex " + std::to_string(v) + " belongs to no cell");

  // Edges are numbered in lexicographic (a, b) order so the numbering does not
  // depend on cell enumeration.
  struct HalfEdge {
    int a, b, cell, local;
  };
  std::vector<HalfEdge> half;
  half.reserve(3 * cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (int k = 0; k < 3; ++k) {
      int p = cells[c][k], q = cells[c][(k + 1) % 3];
      half.push_back({std::min(p, q), std::max(p, q), static_cast<int>(c), k});
    }
  std::sort(half.begin(), half.end(), [](const HalfEdge& l, const HalfEdge& r) {
    return std::tie(l.a, l.b, l.cell, l.local) < std::tie(r.a, r.b, r.cell, r.local);
  });

  m.cell_edges_.resize(cells.size());
  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i;
    while (j < half.size() && half[j].a == half[i].a && half[j].b == half[i].b) ++j;
    const int count = static_cast<int>(j - i);
    if (count > 2)
      throw MeshError(MeshError::Kind::Topology, "edge (" + std::to_string(half[i].a) + "," +
                                                     std::to_string(half[i].b) + ") shared by " +
                                                     std::to_string(count) + " cells");
    const int e = static_cast<int>(m.edges_.size());
    m.edges_.push_back({half[i].a, half[i].b});
    m.boundary_.push_back(count == 1);
    int signs = 0;
    for (std::size_t k = i; k < j; ++k) {
      const auto& he = half[k];
      int sign = cells[he.cell][he.local] == he.a ? 1 : -1;
      signs += sign;
      m.cell_edges_[he.cell][he.local] = {e, sign};
    }
    if (count == 2 && signs != 0)
      throw MeshError(MeshError::Kind::Topology, "inconsistent orientation across edge " + std::to_string(e));
    i = j;
  }

  m.vertices_ = std::move(vertices);
  m.cells_ = std::move(cells);
  for (int c = 0; c < m.num_cells(); ++c) m.h_ = std::max(m.h_, m.diameter(c));
  return m;
}

double Mesh::total_area() const {
  double s = 0.0;
  for (double a : areas_) s += a;
  return s;
}

double Mesh::diameter(int c) const {
  const auto& t = cells_[c];
  double d = 0.0;
  for (int k = 0; k < 3; ++k)
    d = std::max(d, std::sqrt(norm2(vertices_[t[(k + 1) % 3]] - vertices_[t[k]])));
  return d;
}

Vec2 Mesh::tangent(int e) const {
  Vec2 d = vertices_[edges_[e].b] - vertices_[edges_[e].a];
  return (1.0 / std::sqrt(norm2(d))) * d;
}

double Mesh::edge_length(int e) const {
  return std::sqrt(norm2(vertices_[edges_[e].b] - vertices_[edges_[e].a]));
}

}  // namespace tdgl
