#include <cmath>
#include <numbers>

#include "tdgl/scenarios.hpp"

namespace tdgl::manufactured {

namespace {

constexpr double pi = std::numbers::pi;
constexpr Complex I{0.0, 1.0};

Complex psi(Vec2 p, double t) { return std::exp(-t) * (std::cos(2 * pi * p.x) + I * std::cos(pi * p.y)); }

ComplexVec2 grad_psi(Vec2 p, double t) {
  const double e = std::exp(-t);
  return {e * Complex(-2 * pi * std::sin(2 * pi * p.x), 0.0), e * Complex(0.0, -pi * std::sin(pi * p.y))};
}

Complex laplace_psi(Vec2 p, double t) {
  return std::exp(-t) * (-4 * pi * pi * std::cos(2 * pi * p.x) - I * pi * pi * std::cos(pi * p.y));
}

Vec2 a(Vec2 p, double t) {
  return {std::exp(t - p.y) * std::sin(pi * p.x), std::exp(t - p.x) * std::sin(2 * pi * p.y)};
}

double div_a(Vec2 p, double t) {
  return pi * std::exp(t - p.y) * std::cos(pi * p.x) + 2 * pi * std::exp(t - p.x) * std::cos(2 * pi * p.y);
}

double curl_a(Vec2 p, double t) {
  return -std::exp(t - p.x) * std::sin(2 * pi * p.y) + std::exp(t - p.y) * std::sin(pi * p.x);
}

}  // namespace

ExactSolution exact_solution() {
  ExactSolution e;
  e.a = a;
  e.curl_a = curl_a;
  e.psi = psi;
  e.grad_psi = grad_psi;
  return e;
}

double applied_field(Vec2 x, double t) { return curl_a(x, t); }

// H equals curl A everywhere, so curl curl A and curl H cancel and only the
// lower-order terms remain.
Vec2 forcing_a(Vec2 x, double t, double kappa, double sigma) {
  const Vec2 av = a(x, t);
  const double rho = std::norm(psi(x, t));
  const Vec2 g = supercurrent(psi(x, t), grad_psi(x, t), kappa);
  return {sigma * av.x + rho * av.x + g.x, sigma * av.y + rho * av.y + g.y};
}

Complex forcing_psi(Vec2 x, double t, double kappa) {
  const Complex u = psi(x, t);
  const ComplexVec2 du = grad_psi(x, t);
  const Vec2 av = a(x, t);
  const Complex covariant = -laplace_psi(x, t) / (kappa * kappa) + (I / kappa) * div_a(x, t) * u +
                            (2.0 * I / kappa) * (av.x * du.x + av.y * du.y) + norm2(av) * u;
  return -u + covariant + (std::norm(u) - 1.0) * u;
}

}  // namespace tdgl::manufactured
