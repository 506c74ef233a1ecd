#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "tdgl/errors.hpp"
#include "tdgl/kernels.hpp"
#include "tdgl/linalg.hpp"

namespace tdgl {

namespace {

// y = phi(tau T) e1 for the symmetric tridiagonal T = tridiag(beta, alpha, beta),
// returned as scale * y. For phi0 the exponentials are shifted by the largest
// Ritz value so that y keeps its direction when exp(tau T) underflows; the
// relative residual estimate only depends on y up to scaling.
struct ScaledPhi {
  Eigen::VectorXd y;
  double scale = 1.0;
};

ScaledPhi tridiagonal_phi_e1(const std::vector<double>& alpha, const std::vector<double>& beta, int m, double tau,
                             PhiKind which) {
  Eigen::VectorXd diag(m), sub(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) diag[k] = alpha[k];
  for (int k = 0; k + 1 < m; ++k) sub[k] = beta[k + 1];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const Eigen::MatrixXd& q = eig.eigenvectors();
  const auto& theta = eig.eigenvalues();
  ScaledPhi out;
  const double shift = which == PhiKind::Phi0 ? theta[m - 1] : 0.0;
  if (which == PhiKind::Phi0) out.scale = std::exp(tau * shift);
  Eigen::VectorXd f(m);
  for (int k = 0; k < m; ++k) {
    const double g = which == PhiKind::Phi0 ? std::exp(tau * (theta[k] - shift)) : phi_scalar(which, tau * theta[k]);
    f[k] = g * q(0, k);
  }
  out.y = q * f;
  return out;
}

bool all_finite(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(), [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

PhiResult phi_apply(const ComplexCsr& lhat, std::span<const double> mass, double mu, double tau,
                    std::span<const Complex> v, PhiKind which, const KrylovConfig& cfg) {
  const int n = lhat.n;
  if (static_cast<int>(mass.size()) != n || static_cast<int>(v.size()) != n) throw Error("phi_apply: size mismatch");
  if (!(tau > 0.0) || !(mu >= 0.0) || !std::isfinite(tau) || !std::isfinite(mu))
    throw Error("phi_apply: tau must be positive and mu non-negative");
  if (!all_finite(v)) throw Error("phi_apply: non-finite input vector");
  if (!(cfg.tol > 0.0) || cfg.max_dim < 1) throw Error("phi_apply: invalid Krylov configuration");

  std::vector<double> sq(n), inv_sq(n);
  for (int i = 0; i < n; ++i) {
    sq[i] = std::sqrt(mass[i]);
    inv_sq[i] = 1.0 / sq[i];
  }

  PhiResult out;
  out.values.assign(n, Complex{});
  std::vector<Complex> w(n);
  for (int i = 0; i < n; ++i) w[i] = sq[i] * v[i];
  const double beta0 = kernels::norm(w);
  if (beta0 == 0.0) return out;

  const int max_dim = std::min(cfg.max_dim, n);
  std::vector<std::vector<Complex>> basis;
  basis.reserve(max_dim + 1);
  for (auto& z : w) z /= beta0;
  basis.push_back(std::move(w));

  std::vector<double> alpha, beta{0.0};
  std::vector<Complex> t(n), u(n);
  ScaledPhi y;
  int below_tol = 0;
  bool done = false;
  double scale = 0.0;

  for (int j = 0; j < max_dim && !done; ++j) {
    const auto& vj = basis[j];
    for (int i = 0; i < n; ++i) t[i] = inv_sq[i] * vj[i];
    kernels::spmv(lhat, t, u);
    for (int i = 0; i < n; ++i) u[i] = inv_sq[i] * u[i] - mu * vj[i];

    const double a = kernels::dotc(vj, u).real();
    alpha.push_back(a);
    kernels::axpy(Complex(-a), vj, u);
    if (j > 0) kernels::axpy(Complex(-beta[j]), basis[j - 1], u);
    if (cfg.full_reorthogonalization)
      for (int k = 0; k <= j; ++k) kernels::axpy(-kernels::dotc(basis[k], u), basis[k], u);
    const double b = kernels::norm(u);
    beta.push_back(b);
    scale = std::max({scale, std::abs(a), b});

    const int m = j + 1;
    y = tridiagonal_phi_e1(alpha, beta, m, tau, which);
    const double size = y.y.norm();
    out.error_estimate = size > 0.0 ? b * std::abs(y.y[m - 1]) / size : std::numeric_limits<double>::infinity();
    out.dimension = m;

    // Invariant subspace found: the projection is exact.
    if (b <= 1e-13 * scale || m == n) break;
    below_tol = out.error_estimate <= cfg.tol ? below_tol + 1 : 0;
    if (below_tol >= 2) break;
    if (m == max_dim)
      throw SolverError("phi_apply: Krylov subspace cap of " + std::to_string(max_dim) +
                            " reached without convergence (estimate " + std::to_string(out.error_estimate) + ")",
                        m, out.error_estimate);
    for (auto& z : u) z /= b;
    basis.push_back(u);
  }

  for (int k = 0; k < out.dimension; ++k) kernels::axpy(Complex(beta0 * y.scale * y.y[k]), basis[k], out.values);
  for (int i = 0; i < n; ++i) out.values[i] *= inv_sq[i];
  return out;
}

}  // namespace tdgl
