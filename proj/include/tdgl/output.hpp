#pragma once

#include <string>
#include <vector>

#include "tdgl/stepper.hpp"

namespace tdgl {

struct TimeSeriesRow {
  double t = 0.0;
  double tau = 0.0;
  double g_total = 0.0;
  double g_cov = 0.0;
  double g_mag = 0.0;
  double g_pot = 0.0;
  double max_psi = 0.0;
};

/// One row per accepted step (the initial level is skipped), keeping every
/// `every`-th step.
std::vector<TimeSeriesRow> timeseries_rows(const std::vector<EnergyRecord>& history, int every = 1);

std::string format_timeseries_csv(const std::vector<TimeSeriesRow>& rows);
void write_timeseries_csv(const std::string& path, const std::vector<TimeSeriesRow>& rows);

/// Legacy ASCII VTK unstructured grid: |psi|, Re psi, Im psi per point;
/// curl A_h, |A_h| at the centroid and the magnetization per cell.
std::string format_vtk_snapshot(const Discretization& disc, std::span<const double> a, std::span<const Complex> psi,
                                const ScalarFnT& applied_field, double t);
void write_vtk_snapshot(const std::string& path, const Discretization& disc, std::span<const double> a,
                        std::span<const Complex> psi, const ScalarFnT& applied_field, double t);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace tdgl
