#pragma once

#include <array>
#include <span>
#include <vector>

#include "tdgl/linalg.hpp"
#include "tdgl/mesh.hpp"
#include "tdgl/sparse.hpp"
#include "tdgl/types.hpp"

namespace tdgl {

// ---------------------------------------------------------------------------
// Quadrature on triangles, barycentric points with weights summing to 1.

struct QuadRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

const QuadRule& centroid_rule();   // degree 1
const QuadRule& midpoint_rule();   // degree 2, edge midpoints
const QuadRule& dunavant4_rule();  // degree 4, 6 points

// ---------------------------------------------------------------------------
// Discrete spaces

/// d_i = integral of the P1 hat function of vertex i.
struct LumpedMass {
  std::vector<double> d;
};

LumpedMass lumped_mass(const Mesh& mesh);

struct CellGeometry {
  std::array<Vec2, 3> p;
  std::array<Vec2, 3> grad;  // gradients of the barycentric coordinates
  double area = 0.0;
};

/// Lowest-order second-kind Nedelec basis on one cell.
///
/// Global dof 2e+k of edge e = (a, b) is the tangential component A.t_e at
/// endpoint a (k = 0) or b (k = 1), with t_e pointing from a to b. Local basis
/// function j is lambda_{vertex[j]} * w[j], where w[j] has unit tangential
/// component along its own edge and zero along the other cell edge through the
/// same vertex.
struct EdgeCell {
  std::array<int, 6> dof;
  std::array<int, 6> vertex;
  std::array<Vec2, 6> w;
};

/// Mesh plus everything the assemblers precompute for it. Immutable.
class Discretization {
 public:
  explicit Discretization(Mesh mesh);

  const Mesh& mesh() const { return mesh_; }
  int num_nodes() const { return mesh_.num_vertices(); }
  int num_edge_dofs() const { return 2 * mesh_.num_edges(); }
  int num_cells() const { return mesh_.num_cells(); }

  const CellGeometry& geometry(int c) const { return geometry_[c]; }
  const EdgeCell& edge_cell(int c) const { return edge_cells_[c]; }
  const LumpedMass& mass() const { return mass_; }
  const SparsityPattern& nodal_pattern() const { return nodal_pattern_; }
  const SparsityPattern& edge_pattern() const { return edge_pattern_; }

  Vec2 point(int c, const std::array<double, 3>& bary) const;
  Vec2 edge_value(std::span<const double> a, int c, const std::array<double, 3>& bary) const;
  double edge_curl(std::span<const double> a, int c) const;
  Complex nodal_value(std::span<const Complex> psi, int c, const std::array<double, 3>& bary) const;
  ComplexVec2 nodal_gradient(std::span<const Complex> psi, int c) const;

 private:
  Mesh mesh_;
  std::vector<CellGeometry> geometry_;
  std::vector<EdgeCell> edge_cells_;
  LumpedMass mass_;
  SparsityPattern nodal_pattern_;
  SparsityPattern edge_pattern_;
};

// ---------------------------------------------------------------------------
// Assembly

/// (Lhat)_ij = -B(A_h; phi_j, phi_i), assembled Hermitian by construction.
ComplexCsr assemble_Lhat(const Discretization& disc, std::span<const double> a, double kappa);

RealCsr assemble_edge_mass(const Discretization& disc);
RealCsr assemble_curl_curl(const Discretization& disc);
RealCsr assemble_weighted_edge_mass(const Discretization& disc, std::span<const Complex> psi);
RealCsr assemble_P1_stiffness(const Discretization& disc);

/// (sigma/tau) M_edge + K_curl + M_{|psi|^2}.
RealCsr assemble_A_system(const Discretization& disc, std::span<const Complex> psi_prev, double sigma, double tau);

/// Right-hand side of the backward-Euler A-step at time t_n.
/// `forcing` may be empty.
std::vector<double> assemble_A_rhs(const Discretization& disc, std::span<const Complex> psi_prev,
                                   std::span<const double> a_prev, const ScalarFnT& applied_field,
                                   const VectorFnT& forcing, double kappa, double sigma, double tau, double t_n);

/// g(psi) = (i/2kappa)(psi* grad psi - psi grad psi*) = -(1/kappa) Im(psi* grad psi).
Vec2 supercurrent(Complex psi, ComplexVec2 grad, double kappa);

// ---------------------------------------------------------------------------
// Projections and interpolation

struct CurlField {
  VectorFn value;
  ScalarFn curl;
};

/// Galerkin projection in the (curl, curl) + (., .) inner product.
EdgeField ritz_projection(const Discretization& disc, const CurlField& exact, const CgConfig& cg = {});

/// Tangential components at edge endpoints; exact for fields already in Q_h.
EdgeField interpolate_edge(const Discretization& disc, const VectorFn& field);

NodalField interpolate_nodal(const Mesh& mesh, const ComplexFn& psi);

/// Integral of |((i/kappa) grad + A_h) psi_h|^2.
double covariant_energy_seminorm(const Discretization& disc, std::span<const double> a,
                                 std::span<const Complex> psi, double kappa);

}  // namespace tdgl
