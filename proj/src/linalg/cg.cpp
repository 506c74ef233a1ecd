#include <cmath>

#include "tdgl/errors.hpp"
#include "tdgl/kernels.hpp"
#include "tdgl/linalg.hpp"

namespace tdgl {

CgResult cg_solve(const RealCsr& m, std::span<const double> rhs, const CgConfig& cfg, std::span<const double> x0) {
  const int n = m.n;
  if (static_cast<int>(rhs.size()) != n || (!x0.empty() && static_cast<int>(x0.size()) != n))
    throw Error("cg_solve: size mismatch");
  const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 10 * n;

  CgResult out;
  out.x.assign(n, 0.0);
  const double rhs_norm = kernels::norm(rhs);
  if (rhs_norm == 0.0) return out;

  std::vector<double> inv_diag(n, 1.0);
  for (int i = 0; i < n; ++i) {
    const double d = m.at(i, i);
    if (!(d > 0.0)) throw SolverError("cg_solve: non-positive diagonal entry", 0, 1.0);
    inv_diag[i] = 1.0 / d;
  }

  std::vector<double> r(rhs.begin(), rhs.end()), z(n), p(n), q(n);
  if (!x0.empty()) {
    out.x.assign(x0.begin(), x0.end());
    kernels::spmv(m, out.x, q);
    kernels::axpy(-1.0, q, r);
  }
  double res = kernels::norm(r) / rhs_norm;
  if (res <= cfg.tol) {
    out.relative_residual = res;
    return out;
  }

  double rho = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rho_new = kernels::dot(r, z);
    if (it == 1) {
      p = z;
    } else {
      const double beta = rho_new / rho;
      for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    rho = rho_new;
    kernels::spmv(m, p, q);
    const double pq = kernels::dot(p, q);
    if (!(pq > 0.0)) throw SolverError("cg_solve: matrix is not positive definite", it, res);
    const double alpha = rho / pq;
    kernels::axpy(alpha, p, out.x);
    kernels::axpy(-alpha, q, r);
    res = kernels::norm(r) / rhs_norm;
    if (res <= cfg.tol) {
      out.iterations = it;
      out.relative_residual = res;
      return out;
    }
  }
  throw SolverError("cg_solve: no convergence within " + std::to_string(max_iter) +
                        " iterations (relative residual " + std::to_string(res) + ")",
                    max_iter, res);
}

}  // namespace tdgl
