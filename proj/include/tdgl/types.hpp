#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace tdgl {

using Complex = std::complex<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
// z-component of the 2D cross product.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }

// Complex gradient (d/dx, d/dy) of a complex scalar.
struct ComplexVec2 {
  Complex x;
  Complex y;
};

// Coefficients of psi_h in V_h: one complex value per mesh vertex.
using NodalField = std::vector<Complex>;
// Coefficients of A_h in Q_h: two tangential values per edge (see Discretization).
using EdgeField = std::vector<double>;

using ScalarFn = std::function<double(Vec2)>;
using ComplexFn = std::function<Complex(Vec2)>;
using VectorFn = std::function<Vec2(Vec2)>;

// Time-dependent variants, evaluated as f(x, t).
using ScalarFnT = std::function<double(Vec2, double)>;
using ComplexFnT = std::function<Complex(Vec2, double)>;
using VectorFnT = std::function<Vec2(Vec2, double)>;

}  // namespace tdgl
