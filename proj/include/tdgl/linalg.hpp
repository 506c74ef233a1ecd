#pragma once

#include <span>
#include <vector>

#include "tdgl/sparse.hpp"

namespace tdgl {

// ---------------------------------------------------------------------------
// Conjugate gradients

struct CgConfig {
  double tol = 1e-12;  // relative residual
  int max_iter = 0;    // 0 means 10 * N
};

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned CG for SPD systems. `x0` is an optional initial
/// guess. Throws SolverError when the iteration cap is reached.
CgResult cg_solve(const RealCsr& m, std::span<const double> rhs, const CgConfig& cfg = {},
                  std::span<const double> x0 = {});

// ---------------------------------------------------------------------------
// phi-functions of L = D^{-1} Lhat - mu I

enum class PhiKind { Phi0, Phi1 };

/// phi0(a) = e^a, phi1(a) = (1 - e^a)/a with phi1(0) = -1.
double phi_scalar(PhiKind which, double a);

struct KrylovConfig {
  double tol = 1e-10;
  int max_dim = 100;
  bool full_reorthogonalization = true;
};

struct PhiResult {
  std::vector<Complex> values;
  int dimension = 0;         // Krylov subspace size used
  double error_estimate = 0.0;
};

/// Computes phi(tau L) v for L = D^{-1} Lhat - mu I, Lhat Hermitian negative
/// semidefinite, D = diag(mass) > 0. Works on the Hermitian similar matrix
/// S = D^{-1/2} Lhat D^{-1/2} - mu I with Lanczos, so that
/// phi(tau L) v = D^{-1/2} phi(tau S) D^{1/2} v.
PhiResult phi_apply(const ComplexCsr& lhat, std::span<const double> mass, double mu, double tau,
                    std::span<const Complex> v, PhiKind which, const KrylovConfig& cfg = {});

/// Dense row-major storage of L = D^{-1} Lhat - mu I, kept in factored form.
struct DenseHermitianSimilar {
  int n = 0;
  std::vector<Complex> lhat;  // n x n row-major
  std::vector<double> mass;
  double mu = 0.0;

  static DenseHermitianSimilar from_sparse(const ComplexCsr& lhat, std::span<const double> mass, double mu);
};

inline constexpr int kDenseOracleMaxDim = 500;

/// Reference phi(tau L) v through a full eigendecomposition of the symmetrized
/// operator. Limited to n <= kDenseOracleMaxDim.
std::vector<Complex> dense_phi_oracle(const DenseHermitianSimilar& op, double tau, std::span<const Complex> v,
                                      PhiKind which);

}  // namespace tdgl
