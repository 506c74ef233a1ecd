#include "tdgl/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "tdgl/errors.hpp"

namespace tdgl {

namespace {

void append(std::string& out, const char* format, auto... args) {
  char buf[256];
  const int n = std::snprintf(buf, sizeof buf, format, args...);
  if (n < 0) throw Error("formatting failed");
  if (static_cast<std::size_t>(n) < sizeof buf) {
    out.append(buf, static_cast<std::size_t>(n));
    return;
  }
  std::string big(static_cast<std::size_t>(n) + 1, '\0');
  std::snprintf(big.data(), big.size(), format, args...);
  out.append(big.data(), static_cast<std::size_t>(n));
}

constexpr const char* kReal = "%.12e\n";

}  // namespace

std::vector<TimeSeriesRow> timeseries_rows(const std::vector<EnergyRecord>& history, int every) {
  std::vector<TimeSeriesRow> rows;
  if (every < 1) every = 1;
  for (std::size_t n = 1; n < history.size(); ++n) {
    if (n % static_cast<std::size_t>(every) != 0 && n + 1 != history.size()) continue;
    const EnergyRecord& r = history[n];
    rows.push_back({r.t, r.tau, r.energy.total, r.energy.covariant, r.energy.magnetic, r.energy.potential, r.max_psi});
  }
  return rows;
}

std::string format_timeseries_csv(const std::vector<TimeSeriesRow>& rows) {
  std::string out = "t,tau,G_total,G_cov,G_mag,G_pot,max_psi\n";
  for (const auto& r : rows)
    append(out, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.tau, r.g_total, r.g_cov, r.g_mag, r.g_pot,
           r.max_psi);
  return out;
}

void write_timeseries_csv(const std::string& path, const std::vector<TimeSeriesRow>& rows) {
  if (rows.empty()) throw Error(path + ": no time series rows to write");
  write_text_file(path, format_timeseries_csv(rows));
}

std::string format_vtk_snapshot(const Discretization& disc, std::span<const double> a, std::span<const Complex> psi,
                                const ScalarFnT& applied_field, double t) {
  const Mesh& mesh = disc.mesh();
  const int nv = mesh.num_vertices(), nc = mesh.num_cells();
  std::string out = "# vtk DataFile Version 3.0\n";
  append(out, "tdgl snapshot t=%.12e\n", t);
  out += "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  append(out, "POINTS %d double\n", nv);
  for (int i = 0; i < nv; ++i) append(out, "%.12e %.12e 0\n", mesh.vertex(i).x, mesh.vertex(i).y);
  append(out, "CELLS %d %d\n", nc, 4 * nc);
  for (int c = 0; c < nc; ++c) {
    const auto& v = mesh.cell(c);
    append(out, "3 %d %d %d\n", v[0], v[1], v[2]);
  }
  append(out, "CELL_TYPES %d\n", nc);
  for (int c = 0; c < nc; ++c) out += "5\n";

  append(out, "POINT_DATA %d\n", nv);
  out += "SCALARS psi_abs double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < nv; ++i) append(out, kReal, std::abs(psi[i]));
  out += "SCALARS psi_re double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < nv; ++i) append(out, kReal, psi[i].real());
  out += "SCALARS psi_im double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < nv; ++i) append(out, kReal, psi[i].imag());

  static constexpr std::array<double, 3> centroid{1.0 / 3, 1.0 / 3, 1.0 / 3};
  append(out, "CELL_DATA %d\n", nc);
  out += "SCALARS curl_A double 1\nLOOKUP_TABLE default\n";
  for (int c = 0; c < nc; ++c) append(out, kReal, disc.edge_curl(a, c));
  out += "SCALARS A_abs double 1\nLOOKUP_TABLE default\n";
  for (int c = 0; c < nc; ++c) append(out, kReal, std::sqrt(norm2(disc.edge_value(a, c, centroid))));
  out += "SCALARS magnetization double 1\nLOOKUP_TABLE default\n";
  for (double m : magnetization(disc, a, applied_field, t)) append(out, kReal, m);
  return out;
}

void write_vtk_snapshot(const std::string& path, const Discretization& disc, std::span<const double> a,
                        std::span<const Complex> psi, const ScalarFnT& applied_field, double t) {
  write_text_file(path, format_vtk_snapshot(disc, a, psi, applied_field, t));
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(path + ": cannot open for writing");
  f << text;
  f.close();
  if (!f) throw Error(path + ": write failed");
}

}  // namespace tdgl
