#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tdgl/fem.hpp"

namespace tdgl {

/// Parts of the discrete Gibbs energy. The potential term is lumped.
struct EnergyBreakdown {
  double covariant = 0.0;  // 1/2 ||((i/kappa) grad + A_h) psi_h||^2
  double magnetic = 0.0;   // 1/2 ||curl A_h - H||^2
  double potential = 0.0;  // 1/4 sum_i d_i (|Psi_i|^2 - 1)^2
  double total = 0.0;
};

EnergyBreakdown discrete_energy(const Discretization& disc, std::span<const double> a, std::span<const Complex> psi,
                                const ScalarFnT& applied_field, double t, double kappa);

/// M_h = (curl A_h - H)/(4 pi), one value per cell taken at the centroid.
std::vector<double> magnetization(const Discretization& disc, std::span<const double> a,
                                  const ScalarFnT& applied_field, double t);

/// -4 pi (M_h^n, d_t H) over [t_prev, t_n], the bound on the energy change
/// when the applied field varies in time.
double field_work(const Discretization& disc, std::span<const double> a, const ScalarFnT& applied_field,
                  double t_prev, double t_n);

struct MbpStats {
  double max_modulus = 0.0;
  int index = -1;
};

/// Largest |Psi_i|; ties go to the lowest index.
MbpStats mbp_stats(std::span<const Complex> psi);

// ---------------------------------------------------------------------------
// Errors against analytic solutions

struct ExactSolution {
  VectorFnT a;
  ScalarFnT curl_a;
  ComplexFnT psi;
  std::function<ComplexVec2(Vec2, double)> grad_psi;
};

struct ErrorReport {
  double l2_a = 0.0;
  double l2_curl_a = 0.0;
  double l2_psi = 0.0;
  double l2_grad_psi = 0.0;
  // L2 norms of the exact fields, for relative errors.
  double norm_a = 0.0;
  double norm_curl_a = 0.0;
  double norm_psi = 0.0;
  double norm_grad_psi = 0.0;
  double h = 0.0;
  double tau = 0.0;

  ErrorReport relative() const;
};

ErrorReport error_norms(const Discretization& disc, std::span<const double> a, std::span<const Complex> psi,
                        const ExactSolution& exact, double t);

/// log2(e_k / e_{k+1}) for consecutive (h, e) pairs. Entries are empty when an
/// error is below 1e-12 or non-finite. Throws unless h strictly halves.
std::vector<std::optional<double>> convergence_rates(std::span<const std::pair<double, double>> h_and_error);

// ---------------------------------------------------------------------------
// Structural checks on L = D^{-1} Lhat - mu I

/// Re(conj(U_i) (L U)_i) at i = argmax |U_j| (lowest index on ties).
double contraction_value(const ComplexCsr& lhat, std::span<const double> mass, double mu, std::span<const Complex> u);

struct ContractionReport {
  int trials = 0;
  int violations = 0;      // value > 0
  int boundary_cases = 0;  // value == 0 within rounding
  double worst = -std::numeric_limits<double>::infinity();
};

/// Random complex trial vectors with normal components.
ContractionReport contraction_check(const ComplexCsr& lhat, std::span<const double> mass, double mu, int trials,
                                    std::uint64_t seed = 12345);
ContractionReport contraction_check(const ComplexCsr& lhat, std::span<const double> mass, double mu,
                                    std::span<const std::vector<Complex>> vectors);

struct DefinitenessReport {
  int trials = 0;
  int violations = 0;
  // Largest Re(W^H D L W) + mu W^H D W seen; must stay <= slack.
  double worst_margin = -std::numeric_limits<double>::infinity();
};

DefinitenessReport negative_definiteness_check(const ComplexCsr& lhat, std::span<const double> mass, double mu,
                                               int trials, std::uint64_t seed = 54321, double slack = 1e-10);

}  // namespace tdgl
