#include "tdgl/fem.hpp"

namespace tdgl {

const QuadRule& centroid_rule() {
  static const QuadRule rule{1, {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}, {1.0}};
  return rule;
}

const QuadRule& midpoint_rule() {
  static const QuadRule rule{2, {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
  return rule;
}

// Dunavant (1985), degree 4.
const QuadRule& dunavant4_rule() {
  static const QuadRule rule = [] {
    constexpr double a = 0.445948490915964886318;
    constexpr double wa = 0.223381589678011465944;
    constexpr double b = 0.091576213509770743460;
    constexpr double wb = 0.109951743655321867389;
    QuadRule r;
    r.degree = 4;
    r.points = {{a, a, 1.0 - 2.0 * a}, {a, 1.0 - 2.0 * a, a}, {1.0 - 2.0 * a, a, a},
                {b, b, 1.0 - 2.0 * b}, {b, 1.0 - 2.0 * b, b}, {1.0 - 2.0 * b, b, b}};
    r.weights = {wa, wa, wa, wb, wb, wb};
    return r;
  }();
  return rule;
}

}  // namespace tdgl
