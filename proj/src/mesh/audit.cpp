#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tdgl/errors.hpp"
#include "tdgl/mesh.hpp"

namespace tdgl {

namespace {
constexpr double kAngleTol = 1e-12;  // radians
}

MeshAudit audit_mesh(const Mesh& mesh) {
  MeshAudit out;
  double min_rad = std::numbers::pi, max_rad = 0.0;
  double hmin = std::numeric_limits<double>::infinity(), hmax = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& t = mesh.cell(c);
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Vec2 p = mesh.vertex(t[k]);
      const Vec2 u = mesh.vertex(t[(k + 1) % 3]) - p;
      const Vec2 v = mesh.vertex(t[(k + 2) % 3]) - p;
      const double angle = std::atan2(std::abs(cross(u, v)), dot(u, v));
      min_rad = std::min(min_rad, angle);
      max_rad = std::max(max_rad, angle);
      sum += angle;
    }
    out.angle_sum_defect = std::max(out.angle_sum_defect, std::abs(sum - std::numbers::pi) * 180.0 / std::numbers::pi);
    const double d = mesh.diameter(c);
    hmin = std::min(hmin, d);
    hmax = std::max(hmax, d);
  }
  out.min_angle = min_rad * 180.0 / std::numbers::pi;
  out.max_angle = max_rad * 180.0 / std::numbers::pi;
  out.strictly_acute = max_rad < 0.5 * std::numbers::pi - kAngleTol;
  out.weakly_acute = max_rad <= 0.5 * std::numbers::pi + kAngleTol;
  out.quasi_uniformity_ratio = hmax / hmin;
  return out;
}

bool enforce_acute_policy(const MeshAudit& audit, AcutePolicy policy) {
  if (!audit.weakly_acute)
    throw MeshError(MeshError::Kind::Obtuse,
                    "mesh has an obtuse interior angle (" + std::to_string(audit.max_angle) + " deg)");
  if (!audit.strictly_acute) {
    if (policy == AcutePolicy::RequireStrict)
      throw MeshError(MeshError::Kind::NotStrictlyAcute, "mesh contains right angles and strict acuteness was requested");
    return true;
  }
  return false;
}

}  // namespace tdgl
