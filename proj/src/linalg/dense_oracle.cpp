#include <Eigen/Eigenvalues>
#include <cmath>

#include "tdgl/errors.hpp"
#include "tdgl/linalg.hpp"

namespace tdgl {

DenseHermitianSimilar DenseHermitianSimilar::from_sparse(const ComplexCsr& lhat, std::span<const double> mass,
                                                         double mu) {
  if (lhat.n > kDenseOracleMaxDim) throw Error("dense oracle: dimension cap exceeded");
  DenseHermitianSimilar op;
  op.n = lhat.n;
  op.lhat.assign(static_cast<std::size_t>(op.n) * op.n, Complex{});
  for (int i = 0; i < op.n; ++i)
    for (int k = lhat.row_ptr[i]; k < lhat.row_ptr[i + 1]; ++k) op.lhat[i * op.n + lhat.col[k]] = lhat.val[k];
  op.mass.assign(mass.begin(), mass.end());
  op.mu = mu;
  return op;
}

std::vector<Complex> dense_phi_oracle(const DenseHermitianSimilar& op, double tau, std::span<const Complex> v,
                                      PhiKind which) {
  const int n = op.n;
  if (n > kDenseOracleMaxDim) throw Error("dense oracle: dimension cap exceeded");
  if (static_cast<int>(v.size()) != n || static_cast<int>(op.mass.size()) != n)
    throw Error("dense oracle: size mismatch");

  Eigen::VectorXd sq(n);
  for (int i = 0; i < n; ++i) sq[i] = std::sqrt(op.mass[i]);
  Eigen::MatrixXcd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = op.lhat[i * n + j] / (sq[i] * sq[j]);
  s = 0.5 * (s + s.adjoint()).eval();
  s.diagonal().array() -= op.mu;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(s);
  const Eigen::MatrixXcd& q = eig.eigenvectors();
  Eigen::VectorXcd w(n);
  for (int i = 0; i < n; ++i) w[i] = sq[i] * v[i];
  Eigen::VectorXcd c = q.adjoint() * w;
  for (int k = 0; k < n; ++k) c[k] *= phi_scalar(which, tau * eig.eigenvalues()[k]);
  Eigen::VectorXcd r = q * c;

  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = r[i] / sq[i];
  return out;
}

}  // namespace tdgl
