#pragma once

#include <iosfwd>
#include <string>

#include "mmsense/fock.hpp"
#include "mmsense/loss_channel.hpp"
#include "mmsense/sweep.hpp"

namespace mmsense::io {

// 12-significant-digit decimal rendering shared by CSV and JSON; non-finite
// values come out as "inf" / "-inf" / "nan" (strtod-compatible).
std::string format_number(double value);
// The double that format_number's output parses back to.
double round_to_output_precision(double value);

// CSV emitters: header row, comma separators, LF endings.
void write_table_csv(std::ostream& out, const sweep::TableResult& table);
void write_sensitivity_csv(std::ostream& out, const sweep::SensitivityCurve& curve);
void write_resolution_csv(std::ostream& out, const sweep::ResolutionCurve& curve);
void write_grid_csv(std::ostream& out, const sweep::VisibilityGrid& grid);
void write_density_matrix_csv(std::ostream& out, const DensityMatrix& rho);

// JSON emitters: one top-level object with "config" and "data" keys. Numbers
// are rounded to the shared 12-digit precision; non-finite values are null.
std::string table_json(const sweep::TableResult& table);
std::string sensitivity_json(const sweep::SensitivityCurve& curve);
std::string resolution_json(const sweep::ResolutionCurve& curve);
std::string grid_json(const sweep::VisibilityGrid& grid);
std::string density_matrix_json(const LossyInterferometer& config, const DensityMatrix& rho);
std::string verify_json(const sweep::VerifyReport& report);

// Aligned human-readable table (visibility as a percentage); failed rows show
// their error text.
void print_table(std::ostream& out, const sweep::TableResult& table);

}  // namespace mmsense::io
