#include "mmsense/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "json.hpp"

namespace mmsense::io {

namespace {

using nlohmann::json;

json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return round_to_output_precision(value);
}

json json_series(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(json_number(v));
  return out;
}

json arm_json(const ArmLoss& arm) {
  return json{{"loss", json_number(arm.reflectance())},
              {"transmittance", json_number(arm.transmittance)},
              {"transmission_phase", json_number(arm.transmission_phase)},
              {"reflection_phase", json_number(arm.reflection_phase)}};
}

json config_json(const LossyInterferometer& config) {
  return json{{"m", config.m},
              {"mprime", config.mprime},
              {"arm_a", arm_json(config.arm_a)},
              {"arm_b", arm_json(config.arm_b)},
              {"phase", json_number(config.phase)}};
}

}  // namespace

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

double round_to_output_precision(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_number(value).c_str(), nullptr);
}

void write_table_csv(std::ostream& out, const sweep::TableResult& table) {
  out << "m,mprime,visibility,delta_phi_min,hl,snl\n";
  for (const sweep::TableRecord& record : table.records) {
    if (!record.ok()) continue;
    out << record.m << ',' << record.mprime << ',' << format_number(record.visibility) << ','
        << format_number(record.delta_phi_min) << ',' << format_number(record.heisenberg) << ','
        << format_number(record.shot_noise) << '\n';
  }
}

void write_sensitivity_csv(std::ostream& out, const sweep::SensitivityCurve& curve) {
  out << "phi,delta_phi_mm,delta_phi_noon,hl_mm,snl_mm,snl_noon,lossless_limit\n";
  for (std::size_t i = 0; i < curve.phi.size(); ++i) {
    out << format_number(curve.phi[i]) << ',' << format_number(curve.delta_phi_mm[i]) << ','
        << format_number(curve.delta_phi_noon[i]) << ',' << format_number(curve.heisenberg_mm)
        << ',' << format_number(curve.shot_noise_mm) << ',' << format_number(curve.shot_noise_noon)
        << ',' << format_number(curve.lossless_limit) << '\n';
  }
}

void write_resolution_csv(std::ostream& out, const sweep::ResolutionCurve& curve) {
  out << "phi,expectation_mm,expectation_noon\n";
  for (std::size_t i = 0; i < curve.phi.size(); ++i) {
    out << format_number(curve.phi[i]) << ',' << format_number(curve.expectation_mm[i]) << ','
        << format_number(curve.expectation_noon[i]) << '\n';
  }
}

void write_grid_csv(std::ostream& out, const sweep::VisibilityGrid& grid) {
  out << "loss_a\\loss_b";
  for (double lb : grid.loss_b) out << ',' << format_number(lb);
  out << '\n';
  for (std::size_t i = 0; i < grid.loss_a.size(); ++i) {
    out << format_number(grid.loss_a[i]);
    for (double v : grid.visibility[i]) out << ',' << format_number(v);
    out << '\n';
  }
}

void write_density_matrix_csv(std::ostream& out, const DensityMatrix& rho) {
  out << "row_n_a,row_n_b,col_n_a,col_n_b,real,imag\n";
  const TwoModeBasis& basis = rho.basis();
  for (int i = 0; i < basis.dim(); ++i) {
    for (int j = 0; j < basis.dim(); ++j) {
      const Complex value = rho.matrix()(i, j);
      if (value == Complex{0.0, 0.0}) continue;
      const BasisState row = basis.state(i);
      const BasisState col = basis.state(j);
      out << row.n_a << ',' << row.n_b << ',' << col.n_a << ',' << col.n_b << ','
          << format_number(value.real()) << ',' << format_number(value.imag()) << '\n';
    }
  }
}

std::string table_json(const sweep::TableResult& table) {
  json rows = json::array();
  json errors = json::array();
  for (const sweep::TableRecord& record : table.records) {
    if (record.ok()) {
      rows.push_back({{"m", record.m},
                      {"mprime", record.mprime},
                      {"visibility", json_number(record.visibility)},
                      {"delta_phi_min", json_number(record.delta_phi_min)},
                      {"hl", json_number(record.heisenberg)},
                      {"snl", json_number(record.shot_noise)}});
    } else {
      errors.push_back({{"m", record.m}, {"mprime", record.mprime}, {"error", record.error}});
    }
  }
  const json doc{{"config",
                  {{"long_arm_loss", json_number(table.long_arm_loss)},
                   {"delay_arm_loss", json_number(table.delay_arm_loss)}}},
                 {"data", {{"records", rows}, {"errors", errors}}}};
  return doc.dump(2);
}

std::string sensitivity_json(const sweep::SensitivityCurve& curve) {
  const json doc{
      {"config",
       {{"mm", config_json(curve.config_mm)}, {"noon", config_json(curve.config_noon)}}},
      {"data",
       {{"phi", json_series(curve.phi)},
        {"delta_phi_mm", json_series(curve.delta_phi_mm)},
        {"delta_phi_noon", json_series(curve.delta_phi_noon)},
        {"hl_mm", json_number(curve.heisenberg_mm)},
        {"snl_mm", json_number(curve.shot_noise_mm)},
        {"snl_noon", json_number(curve.shot_noise_noon)},
        {"lossless_limit", json_number(curve.lossless_limit)}}}};
  return doc.dump(2);
}

std::string resolution_json(const sweep::ResolutionCurve& curve) {
  const json doc{
      {"config",
       {{"mm", config_json(curve.config_mm)}, {"noon", config_json(curve.config_noon)}}},
      {"data",
       {{"phi", json_series(curve.phi)},
        {"expectation_mm", json_series(curve.expectation_mm)},
        {"expectation_noon", json_series(curve.expectation_noon)}}}};
  return doc.dump(2);
}

std::string grid_json(const sweep::VisibilityGrid& grid) {
  json matrix = json::array();
  for (const std::vector<double>& row : grid.visibility) matrix.push_back(json_series(row));
  const json doc{{"config", {{"m", grid.m}, {"mprime", grid.mprime}}},
                 {"data",
                  {{"loss_a", json_series(grid.loss_a)},
                   {"loss_b", json_series(grid.loss_b)},
                   {"visibility", matrix}}}};
  return doc.dump(2);
}

std::string density_matrix_json(const LossyInterferometer& config, const DensityMatrix& rho) {
  const TwoModeBasis& basis = rho.basis();
  json entries = json::array();
  for (int i = 0; i < basis.dim(); ++i) {
    for (int j = 0; j < basis.dim(); ++j) {
      const Complex value = rho.matrix()(i, j);
      if (value == Complex{0.0, 0.0}) continue;
      const BasisState row = basis.state(i);
      const BasisState col = basis.state(j);
      entries.push_back({{"row", {row.n_a, row.n_b}},
                         {"col", {col.n_a, col.n_b}},
                         {"real", json_number(value.real())},
                         {"imag", json_number(value.imag())}});
    }
  }
  json cfg = config_json(config);
  cfg["n_max"] = basis.n_max();
  cfg["dim"] = basis.dim();
  const json doc{{"config", cfg},
                 {"data",
                  {{"entries", entries},
                   {"trace_error", json_number(rho.trace_error())},
                   {"min_eigenvalue", json_number(rho.min_eigenvalue())}}}};
  return doc.dump(2);
}

std::string verify_json(const sweep::VerifyReport& report) {
  json cases = json::array();
  for (const sweep::VerifyCase& c : report.cases) {
    cases.push_back(
        {{"m", c.m}, {"mprime", c.mprime}, {"max_abs_diff", json_number(c.max_abs_diff)}});
  }
  const json doc{{"config",
                  {{"max_m", report.max_m},
                   {"samples", report.samples},
                   {"seed", report.seed},
                   {"tolerance", json_number(report.tolerance)}}},
                 {"data",
                  {{"cases", cases},
                   {"max_abs_diff", json_number(report.max_abs_diff)},
                   {"pass", report.pass}}}};
  return doc.dump(2);
}

void print_table(std::ostream& out, const sweep::TableResult& table) {
  char line[160];
  std::snprintf(line, sizeof(line), "Long-arm loss %.4g, delay-arm loss %.4g\n",
                table.long_arm_loss, table.delay_arm_loss);
  out << line;
  out << "state        visibility   delta_phi_min   HL      SNL\n";
  for (const sweep::TableRecord& record : table.records) {
    if (record.ok()) {
      std::snprintf(line, sizeof(line), "|%d::%d>%*s  %8.2f%%   %11.3f   %.3f   %.3f\n",
                    record.m, record.mprime,
                    int(9 - std::to_string(record.m).size() - std::to_string(record.mprime).size()),
                    "", 100.0 * record.visibility, record.delta_phi_min, record.heisenberg,
                    record.shot_noise);
      out << line;
    } else {
      out << "|" << record.m << "::" << record.mprime << ">  error: " << record.error << '\n';
    }
  }
}

}  // namespace mmsense::io
