#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "tdgl/types.hpp"

namespace tdgl {

// Undirected edge stored lower-index-first; its tangent points from a to b.
struct Edge {
  int a = 0;
  int b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Local edge k of a cell joins local vertices k and (k+1)%3. sign is +1 when
// the cell traverses the edge in its stored direction.
struct CellEdge {
  int edge = 0;
  int sign = 1;
};

using Cell = std::array<int, 3>;

/// Immutable 2D triangulation with edge topology.
///
/// Cells are stored counterclockwise. Every edge is shared by one (boundary)
/// or two (interior) cells; anything else is rejected at construction.
class Mesh {
 public:
  /// Builds the edge topology. Clockwise cells are flipped to counterclockwise;
  /// degenerate cells, dangling vertices and non-manifold edges throw MeshError.
  static Mesh from_cells(std::vector<Vec2> vertices, std::vector<Cell> cells);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::array<CellEdge, 3>>& cell_edges() const { return cell_edges_; }
  const std::vector<bool>& boundary_edge_flags() const { return boundary_; }

  Vec2 vertex(int i) const { return vertices_[i]; }
  const Cell& cell(int c) const { return cells_[c]; }
  double area(int c) const { return areas_[c]; }
  double total_area() const;
  // Longest side of cell c.
  double diameter(int c) const;
  double h() const { return h_; }
  Vec2 tangent(int e) const;
  double edge_length(int e) const;

 private:
  Mesh() = default;

  std::vector<Vec2> vertices_;
  std::vector<Cell> cells_;
  std::vector<Edge> edges_;
  std::vector<std::array<CellEdge, 3>> cell_edges_;
  std::vector<bool> boundary_;
  std::vector<double> areas_;
  double h_ = 0.0;
};

double signed_area(Vec2 p0, Vec2 p1, Vec2 p2);

// ---------------------------------------------------------------------------
// Structured generation

/// Axis-aligned box with an optional mask deciding which grid squares to keep
/// (the predicate receives the square's center).
struct StructuredDomain {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  std::function<bool(Vec2)> keep;

  static StructuredDomain unit_square();
  static StructuredDomain rectangle(double x0, double y0, double x1, double y1);
  // (-0.5,0.5)^2 minus [0,0.5]x[-0.5,0].
  static StructuredDomain lshape();
  // [0,10]^2 minus the four unit squares with x,y in [2,3] or [7,8].
  static StructuredDomain square_with_holes();
};

/// Right-triangle mesh with M subdivisions per unit length. Each grid square is
/// split along its lower-left to upper-right diagonal.
Mesh generate_uniform(const StructuredDomain& domain, int M);

// ---------------------------------------------------------------------------
// Ingestion

struct GmshReport {
  int nodes_read = 0;
  int triangles_read = 0;
  int lines_read = 0;
  // Line elements that do not coincide with a boundary edge of the rebuilt mesh.
  int lines_not_on_boundary = 0;
  int flipped_cells = 0;
};

/// Gmsh ASCII 2.2 reader. Only 2-node lines and 3-node triangles are used.
Mesh load_gmsh_ascii(std::string_view text, GmshReport* report = nullptr);

/// Native format: `tdgl-mesh 1`, vertex count, coordinates, cell count, triples.
Mesh load_native(std::string_view text);
std::string write_native(const Mesh& mesh);

/// Dispatches on content: native header or `$MeshFormat`.
Mesh load_mesh_file(const std::string& path);

// ---------------------------------------------------------------------------
// Quality

struct MeshAudit {
  double min_angle = 0.0;  // degrees
  double max_angle = 0.0;  // degrees
  bool strictly_acute = false;
  bool weakly_acute = false;
  double quasi_uniformity_ratio = 1.0;
  // Largest |sum of cell angles - 180| seen, in degrees.
  double angle_sum_defect = 0.0;
};

MeshAudit audit_mesh(const Mesh& mesh);

enum class AcutePolicy { AllowWeak, RequireStrict };

/// Throws MeshError for obtuse meshes (and for right angles under
/// RequireStrict). Returns true when a weak-acuteness warning applies.
bool enforce_acute_policy(const MeshAudit& audit, AcutePolicy policy);

}  // namespace tdgl
