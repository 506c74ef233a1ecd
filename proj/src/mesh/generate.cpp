#include <cmath>

#include "tdgl/errors.hpp"
#include "tdgl/mesh.hpp"

namespace tdgl {

StructuredDomain StructuredDomain::unit_square() { return rectangle(0.0, 0.0, 1.0, 1.0); }

StructuredDomain StructuredDomain::rectangle(double x0, double y0, double x1, double y1) {
  return {x0, y0, x1, y1, nullptr};
}

StructuredDomain StructuredDomain::lshape() {
  return {-0.5, -0.5, 0.5, 0.5, [](Vec2 c) { return !(c.x > 0.0 && c.y < 0.0); }};
}

StructuredDomain StructuredDomain::square_with_holes() {
  auto in_hole_band = [](double s) { return (s > 2.0 && s < 3.0) || (s > 7.0 && s < 8.0); };
  return {0.0, 0.0, 10.0, 10.0,
          [in_hole_band](Vec2 c) { return !(in_hole_band(c.x) && in_hole_band(c.y)); }};
}

namespace {

int subdivisions(double length, int M, const char* axis) {
  const double n = length * M;
  const long rounded = std::lround(n);
  if (rounded < 1 || std::abs(n - static_cast<double>(rounded)) > 1e-9 * std::max(1.0, n))
    throw MeshError(MeshError::Kind::Degenerate,
                    std::string("domain extent along ") + axis + " is not a positive multiple of 1/M");
  return static_cast<int>(rounded);
}

}  // namespace

Mesh generate_uniform(const StructuredDomain& domain, int M) {
  if (M < 1) throw MeshError(MeshError::Kind::Degenerate, "M must be >= 1");
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0))
    throw MeshError(MeshError::Kind::Degenerate, "domain has zero area");
  const int nx = subdivisions(domain.x1 - domain.x0, M, "x");
  const int ny = subdivisions(domain.y1 - domain.y0, M, "y");
  const double hx = (domain.x1 - domain.x0) / nx;
  const double hy = (domain.y1 - domain.y0) / ny;

  auto grid_id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<int> dense(static_cast<std::size_t>(nx + 1) * (ny + 1), -1);
  std::vector<Vec2> vertices;
  std::vector<Cell> cells;

  auto vertex = [&](int i, int j) {
    int& id = dense[grid_id(i, j)];
    if (id < 0) {
      id = static_cast<int>(vertices.size());
      vertices.push_back({domain.x0 + i * hx, domain.y0 + j * hy});
    }
    return id;
  };

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const Vec2 center{domain.x0 + (i + 0.5) * hx, domain.y0 + (j + 0.5) * hy};
      if (domain.keep && !domain.keep(center)) continue;
      const int v00 = vertex(i, j), v10 = vertex(i + 1, j);
      const int v11 = vertex(i + 1, j + 1), v01 = vertex(i, j + 1);
      cells.push_back({v00, v10, v11});
      cells.push_back({v00, v11, v01});
    }
  if (cells.empty()) throw MeshError(MeshError::Kind::Degenerate, "mask removes every cell");
  return Mesh::from_cells(std::move(vertices), std::move(cells));
}

}  // namespace tdgl
