// Copyright 2026 The ringcav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ringcav/hilbert.hpp"
#include "ringcav/observables.hpp"
#include "ringcav/quantum_dynamics.hpp"
#include "ringcav/sweep.hpp"

namespace ringcav {

/// Shortest decimal string that round-trips to the same double; "nan",
/// "inf" and "-inf" for non-finite values.
std::string format_double(double v);

/// Numeric table with a header row. All exported files are of this shape,
/// comma separated with '.' decimals.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Throws std::out_of_range when the column is missing.
  std::size_t column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;
  std::string str() const;
};

/// Throws std::runtime_error on ragged rows or unparsable numbers.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);
/// Throws std::runtime_error listing the columns absent from the table.
void require_columns(const CsvTable& t, const std::vector<std::string>& names);

/// Write via a temporary file in the same directory and rename it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// time followed by the trajectory's columns in recording order.
CsvTable trajectory_table(const Trajectory& traj);
/// Columns shared by quantum and mean-field trajectory files.
const std::vector<std::string>& trajectory_columns();

/// One row per point: eta, alpha_plus_q, alpha_minus_q, theta_plus_gs,
/// theta_minus_gs, residual, boundary_atom, boundary_plus, boundary_minus, then
/// further diagnostics (see sweep_columns()).
CsvTable sweep_table(const SweepResult& sweep);
const std::vector<std::string>& sweep_columns();

/// First row: "re\im" then the imaginary axis; each further row: a real-axis
/// value then W along the imaginary axis.
std::string wigner_csv(const WignerGrid& w);
WignerGrid parse_wigner_csv(std::string_view text);

/// radius, w
CsvTable radial_table(const FieldExtraction& fe);
/// n, p_plus, p_minus (shorter distributions padded with 0)
CsvTable photon_table(const std::vector<double>& p_plus, const std::vector<double>& p_minus);
/// label, momentum, population
CsvTable momentum_table(const MomentumStats& m);

/// First line "dims,d1,d2,...", then one line per row of rho holding
/// re,im pairs for every column.
std::string density_text(const DensityState& rho);
DensityState parse_density_text(std::string_view text);

}  // namespace ringcav
