#include <cmath>

#include "tdgl/linalg.hpp"

namespace tdgl {

double phi_scalar(PhiKind which, double a) {
  if (which == PhiKind::Phi0) return std::exp(a);
  // Taylor series of (1 - e^a)/a near the removable singularity.
  if (std::abs(a) < 1e-5) return -(1.0 + a / 2.0 + a * a / 6.0 + a * a * a / 24.0);
  return -std::expm1(a) / a;
}

}  // namespace tdgl
