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

#include "ringcav/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace ringcav {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw std::runtime_error("csv: cannot parse number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto l : split(text, '\n')) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

void append_row(std::string& s, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ',';
    s += format_double(row[i]);
  }
  s += '\n';
}

}  // namespace

std::size_t CsvTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range("csv: no column " + std::string(name));
}

std::vector<double> CsvTable::column(std::string_view name) const {
  const std::size_t c = column_index(name);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r[c]);
  return v;
}

std::string CsvTable::str() const {
  std::string s;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) s += ',';
    s += header[i];
  }
  s += '\n';
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw std::logic_error("csv: row width differs from header");
    append_row(s, r);
  }
  return s;
}

CsvTable parse_csv(std::string_view text) {
  const auto ls = lines(text);
  if (ls.empty()) throw std::runtime_error("csv: empty input");
  CsvTable t;
  for (auto h : split(ls[0])) t.header.emplace_back(h);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto cells = split(ls[i]);
    if (cells.size() != t.header.size())
      throw std::runtime_error("csv: row " + std::to_string(i) + " has " +
                               std::to_string(cells.size()) + " fields, header has " +
                               std::to_string(t.header.size()));
    std::vector<double> row;
    for (auto c : cells) row.push_back(parse_double(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("csv: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

void require_columns(const CsvTable& t, const std::vector<std::string>& names) {
  std::string missing;
  for (const auto& n : names) {
    bool found = false;
    for (const auto& h : t.header) found = found || h == n;
    if (!found) missing += (missing.empty() ? "" : ", ") + n;
  }
  if (!missing.empty()) throw std::runtime_error("csv: missing columns: " + missing);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols = {
      "time",           "p_mean",          "n_plus",         "n_minus",
      "theta_plus_abs", "theta_minus_abs", "bunching_abs",   "log_negativity",
      "field_plus_abs", "field_minus_abs", "boundary_atom",  "boundary_plus",
      "boundary_minus", "trace_error",     "min_eigenvalue"};
  return cols;
}

CsvTable trajectory_table(const Trajectory& traj) {
  CsvTable t;
  t.header.push_back("time");
  for (const auto& [name, v] : traj.series) {
    if (v.size() != traj.times.size())
      throw std::logic_error("trajectory_table: column " + name + " has the wrong length");
    t.header.push_back(name);
  }
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<double> row{traj.times[i]};
    for (const auto& s : traj.series) row.push_back(s.second[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "eta",            "alpha_plus_q",   "alpha_minus_q",  "theta_plus_gs",
      "theta_minus_gs", "residual",       "boundary_atom",  "boundary_plus",
      "boundary_minus", "truncation_ok",  "degenerate",     "contrast_plus",
      "contrast_minus", "coherence_plus", "coherence_minus", "field_plus_expect",
      "field_minus_expect", "theta_plus_expect", "theta_minus_expect", "n_plus",
      "n_minus",        "p_mean",         "gs_energy",      "n_max",
      "cutoff_plus",    "cutoff_minus",   "converge_time",  "cross_check_distance"};
  return cols;
}

CsvTable sweep_table(const SweepResult& sweep) {
  CsvTable t;
  t.header = sweep_columns();
  for (const auto& p : sweep.points) {
    t.rows.push_back({p.eta,
                      p.alpha_plus,
                      p.alpha_minus,
                      p.theta_plus_gs,
                      p.theta_minus_gs,
                      p.residual,
                      p.truncation.atom_boundary,
                      p.truncation.plus_top,
                      p.truncation.minus_top,
                      p.truncation_ok ? 1.0 : 0.0,
                      p.degenerate ? 1.0 : 0.0,
                      p.contrast_plus,
                      p.contrast_minus,
                      p.coherence_plus,
                      p.coherence_minus,
                      p.symmetry.field_plus,
                      p.symmetry.field_minus,
                      p.symmetry.theta_plus,
                      p.symmetry.theta_minus,
                      p.n_plus,
                      p.n_minus,
                      p.p_mean,
                      p.gs_energy,
                      static_cast<double>(p.n_max),
                      static_cast<double>(p.cutoff_plus),
                      static_cast<double>(p.cutoff_minus),
                      p.time,
                      p.cross_check_distance.value_or(std::nan(""))});
  }
  return t;
}

std::string wigner_csv(const WignerGrid& w) {
  std::string s = "re\\im";
  for (double y : w.im_axis) s += "," + format_double(y);
  s += '\n';
  for (std::size_t i = 0; i < w.re_axis.size(); ++i) {
    s += format_double(w.re_axis[i]);
    for (std::size_t j = 0; j < w.im_axis.size(); ++j)
      s += "," + format_double(w.values(static_cast<Index>(i), static_cast<Index>(j)));
    s += '\n';
  }
  return s;
}

WignerGrid parse_wigner_csv(std::string_view text) {
  const auto ls = lines(text);
  if (ls.empty()) throw std::runtime_error("wigner csv: empty input");
  const auto head = split(ls[0]);
  if (head.size() < 2 || head[0] != "re\\im") throw std::runtime_error("wigner csv: bad header");
  WignerGrid w;
  for (std::size_t j = 1; j < head.size(); ++j) w.im_axis.push_back(parse_double(head[j]));
  w.values.resize(static_cast<Index>(ls.size() - 1), static_cast<Index>(w.im_axis.size()));
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto cells = split(ls[i]);
    if (cells.size() != head.size()) throw std::runtime_error("wigner csv: ragged row");
    w.re_axis.push_back(parse_double(cells[0]));
    for (std::size_t j = 1; j < cells.size(); ++j)
      w.values(static_cast<Index>(i - 1), static_cast<Index>(j - 1)) = parse_double(cells[j]);
  }
  return w;
}

CsvTable radial_table(const FieldExtraction& fe) {
  CsvTable t;
  t.header = {"radius", "w"};
  for (std::size_t i = 0; i < fe.radii.size(); ++i) t.rows.push_back({fe.radii[i], fe.radial_profile[i]});
  return t;
}

CsvTable photon_table(const std::vector<double>& p_plus, const std::vector<double>& p_minus) {
  CsvTable t;
  t.header = {"n", "p_plus", "p_minus"};
  const std::size_t n = std::max(p_plus.size(), p_minus.size());
  for (std::size_t i = 0; i < n; ++i)
    t.rows.push_back({static_cast<double>(i), i < p_plus.size() ? p_plus[i] : 0.0,
                      i < p_minus.size() ? p_minus[i] : 0.0});
  return t;
}

CsvTable momentum_table(const MomentumStats& m) {
  CsvTable t;
  t.header = {"label", "momentum", "population"};
  for (std::size_t i = 0; i < m.labels.size(); ++i)
    t.rows.push_back({static_cast<double>(m.labels[i]), m.momenta[i], m.distribution[i]});
  return t;
}

std::string density_text(const DensityState& rho) {
  std::string s = "dims";
  for (int d : rho.dims) s += "," + std::to_string(d);
  s += '\n';
  for (Index r = 0; r < rho.dimension(); ++r) {
    for (Index c = 0; c < rho.dimension(); ++c) {
      if (c) s += ',';
      s += format_double(rho.data(r, c).real());
      s += ',';
      s += format_double(rho.data(r, c).imag());
    }
    s += '\n';
  }
  return s;
}

DensityState parse_density_text(std::string_view text) {
  const auto ls = lines(text);
  if (ls.empty()) throw std::runtime_error("density text: empty input");
  const auto head = split(ls[0]);
  if (head.size() < 2 || head[0] != "dims") throw std::runtime_error("density text: bad header");
  DensityState rho;
  for (std::size_t i = 1; i < head.size(); ++i)
    rho.dims.push_back(static_cast<int>(parse_double(head[i])));
  const Index n = total_dimension(rho.dims);
  if (static_cast<Index>(ls.size()) != n + 1)
    throw std::runtime_error("density text: expected " + std::to_string(n) + " rows");
  rho.data.resize(n, n);
  for (Index r = 0; r < n; ++r) {
    const auto cells = split(ls[static_cast<std::size_t>(r + 1)]);
    if (static_cast<Index>(cells.size()) != 2 * n) throw std::runtime_error("density text: ragged row");
    for (Index c = 0; c < n; ++c)
      rho.data(r, c) = cplx(parse_double(cells[static_cast<std::size_t>(2 * c)]),
                            parse_double(cells[static_cast<std::size_t>(2 * c + 1)]));
  }
  return rho;
}

}  // namespace ringcav
