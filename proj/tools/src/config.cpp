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

#include "ringcav/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace ringcav::cli {

using nlohmann::ordered_json;

std::string to_string(Mode m) {
  switch (m) {
    case Mode::dynamics: return "dynamics";
    case Mode::meanfield: return "meanfield";
    case Mode::sweep: return "sweep";
    case Mode::wigner: return "wigner";
    case Mode::compare: return "compare";
  }
  return "unknown";
}

Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::dynamics, Mode::meanfield, Mode::sweep, Mode::wigner, Mode::compare})
    if (to_string(m) == s) return m;
  throw ConfigError("unknown mode '" + s + "'");
}

RationalAngle parse_angle(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto slash = s.find('/');
    const int num = std::stoi(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) throw ConfigError("");
    int den = 1;
    if (slash != std::string::npos) {
      const std::string d = s.substr(slash + 1);
      den = std::stoi(d, &used);
      if (used != d.size()) throw ConfigError("");
    }
    return RationalAngle(num, den);
  } catch (const std::exception&) {
    throw ConfigError("sin_phi must be a fraction a/b with |a| <= b, got '" + s + "'");
  }
}

std::string angle_string(const RationalAngle& a) {
  if (a.denominator() == 1) return std::to_string(a.numerator());
  return std::to_string(a.numerator()) + "/" + std::to_string(a.denominator());
}

namespace {

/// Reads keys of one JSON object and remembers which were consumed.
class Section {
 public:
  Section(const ordered_json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  bool has(const std::string& k) const { return j_.contains(k); }

  double number(const std::string& k, std::optional<double> fallback = std::nullopt) {
    const ordered_json* v = get(k, fallback.has_value());
    if (!v) return *fallback;
    if (!v->is_number()) throw ConfigError(where(k) + " must be a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ConfigError(where(k) + " must be finite");
    return d;
  }

  long integer(const std::string& k, std::optional<long> fallback = std::nullopt) {
    const ordered_json* v = get(k, fallback.has_value());
    if (!v) return *fallback;
    if (!v->is_number_integer()) throw ConfigError(where(k) + " must be an integer");
    return v->get<long>();
  }

  bool boolean(const std::string& k, bool fallback) {
    const ordered_json* v = get(k, true);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(where(k) + " must be true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& k, std::optional<std::string> fallback = std::nullopt) {
    const ordered_json* v = get(k, fallback.has_value());
    if (!v) return *fallback;
    if (!v->is_string()) throw ConfigError(where(k) + " must be a string");
    return v->get<std::string>();
  }

  const ordered_json* raw(const std::string& k) { return get(k, true); }

  Section child(const std::string& k) {
    const ordered_json* v = get(k, false);
    return Section(*v, where(k));
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) throw ConfigError("unknown key " + where(k));
  }

  std::string where(const std::string& k = "") const {
    if (k.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? k : path_ + "." + k;
  }

 private:
  const ordered_json* get(const std::string& k, bool optional) {
    used_.insert(k);
    if (!j_.contains(k) || j_.at(k).is_null()) {
      if (optional) return nullptr;
      throw ConfigError("missing required key " + where(k));
    }
    return &j_.at(k);
  }

  const ordered_json& j_;
  std::string path_;
  std::set<std::string> used_;
};

int checked_int(long v, const std::string& what, long lo) {
  if (v < lo || v > 1'000'000'000L) throw ConfigError(what + " out of range");
  return static_cast<int>(v);
}

template <class F>
void wrap(F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

RunConfig parse_config(const ordered_json& doc) {
  RunConfig cfg;
  Section root(doc, "");
  cfg.mode = parse_mode(root.string("mode"));

  {
    Section p = root.child("physical");
    cfg.physical.eta = p.number("eta");
    cfg.physical.u0 = p.number("u0");
    cfg.physical.delta_c = p.number("delta_c");
    cfg.physical.kappa = p.number("kappa");
    cfg.physical.angle = parse_angle(p.string("sin_phi"));
    p.finish();
    wrap([&] { cfg.physical.validate(); });
  }

  if (root.has("lattice")) {
    Section l = root.child("lattice");
    LatticeConfig lc;
    lc.n_max = checked_int(l.integer("n_max"), "lattice.n_max", 1);
    lc.cutoff_plus = checked_int(l.integer("cutoff_plus"), "lattice.cutoff_plus", 0);
    lc.cutoff_minus = checked_int(l.integer("cutoff_minus"), "lattice.cutoff_minus", 0);
    l.finish();
    wrap([&] { make_lattice(cfg.physical.angle, lc.n_max, lc.cutoff_plus, lc.cutoff_minus); });
    cfg.lattice = lc;
  } else {
    root.raw("lattice");
  }
  if (cfg.mode != Mode::meanfield && !cfg.lattice)
    throw ConfigError("mode " + to_string(cfg.mode) + " needs a lattice section");

  if (root.has("integrator")) {
    Section s = root.child("integrator");
    IntegratorConfig& ic = cfg.integrator;
    ic.dt = s.number("dt", ic.dt);
    ic.t_final = s.number("t_final", ic.t_final);
    ic.rel_tol = s.number("rel_tol", ic.rel_tol);
    ic.abs_tol = s.number("abs_tol", ic.abs_tol);
    ic.record_interval = s.number("record_interval", ic.record_interval);
    ic.snapshot_interval = s.number("snapshot_interval", ic.snapshot_interval);
    ic.max_trace_drift = s.number("max_trace_drift", ic.max_trace_drift);
    s.finish();
  } else {
    root.raw("integrator");
  }
  wrap([&] { cfg.integrator.validate(); });

  if (root.has("meanfield")) {
    Section s = root.child("meanfield");
    MeanFieldConfig& mc = cfg.meanfield;
    mc.n_grid = checked_int(s.integer("n_grid", mc.n_grid), "meanfield.n_grid", 4);
    mc.seed = s.number("seed", mc.seed);
    mc.dt = s.number("dt", mc.dt);
    mc.max_norm_drift = s.number("max_norm_drift", mc.max_norm_drift);
    if (const ordered_json* seeds = s.raw("seed_sensitivity")) {
      if (!seeds->is_array()) throw ConfigError("meanfield.seed_sensitivity must be an array");
      cfg.seed_sensitivity.clear();
      for (const auto& v : *seeds) {
        if (!v.is_number()) throw ConfigError("meanfield.seed_sensitivity entries must be numbers");
        cfg.seed_sensitivity.push_back(v.get<double>());
      }
    }
    s.finish();
  } else {
    root.raw("meanfield");
  }
  cfg.meanfield.t_final = cfg.integrator.t_final;
  cfg.meanfield.record_interval = cfg.integrator.record_interval;
  if (cfg.mode == Mode::meanfield || cfg.mode == Mode::compare || cfg.mode == Mode::wigner)
    wrap([&] { cfg.meanfield.validate(); });

  if (root.has("steady")) {
    Section s = root.child("steady");
    SteadyStateOptions& so = cfg.steady;
    so.residual_tolerance = s.number("residual_tolerance", so.residual_tolerance);
    so.change_tolerance = s.number("change_tolerance", so.change_tolerance);
    so.t_max = s.number("t_max", so.t_max);
    so.rel_tol = s.number("rel_tol", so.rel_tol);
    so.abs_tol = s.number("abs_tol", so.abs_tol);
    so.max_trace_drift = s.number("max_trace_drift", so.max_trace_drift);
    so.cross_check_max_dim = s.integer("cross_check_max_dim", so.cross_check_max_dim);
    so.agreement_tolerance = s.number("agreement_tolerance", so.agreement_tolerance);
    s.finish();
  } else {
    root.raw("steady");
  }
  wrap([&] { cfg.steady.validate(); });

  if (root.has("sweep")) {
    Section s = root.child("sweep");
    SweepConfig& sc = cfg.sweep;
    sc.eta_min = s.number("eta_min", sc.eta_min);
    sc.eta_max = s.number("eta_max", sc.eta_max);
    sc.points = checked_int(s.integer("points", sc.points), "sweep.points", 1);
    if (const ordered_json* a = s.raw("angles")) {
      if (!a->is_array() || a->empty()) throw ConfigError("sweep.angles must be a non-empty array");
      sc.angles.clear();
      for (const auto& v : *a) {
        if (!v.is_string()) throw ConfigError("sweep.angles entries must be strings like \"1/2\"");
        sc.angles.push_back(parse_angle(v.get<std::string>()));
      }
    }
    sc.grow_cutoffs = s.boolean("grow_cutoffs", sc.grow_cutoffs);
    sc.max_dimension = s.integer("max_dimension", sc.max_dimension);
    sc.ground_state_grid =
        checked_int(s.integer("ground_state_grid", sc.ground_state_grid), "sweep.ground_state_grid", 4);
    s.finish();
    if (!(sc.eta_max >= sc.eta_min)) throw ConfigError("sweep.eta_max must be >= sweep.eta_min");
    if (sc.max_dimension < 1) throw ConfigError("sweep.max_dimension must be positive");
    if (!is_power_of_two(sc.ground_state_grid))
      throw ConfigError("sweep.ground_state_grid must be a power of two");
  } else {
    root.raw("sweep");
  }

  if (root.has("wigner")) {
    Section s = root.child("wigner");
    cfg.wigner_points = checked_int(s.integer("points", cfg.wigner_points), "wigner.points", 3);
    s.finish();
    if (cfg.wigner_points % 2 == 0) throw ConfigError("wigner.points must be odd");
  } else {
    root.raw("wigner");
  }

  cfg.truncation_limit = root.number("truncation_limit", cfg.truncation_limit);
  if (!(cfg.truncation_limit > 0.0)) throw ConfigError("truncation_limit must be positive");
  cfg.output_dir = root.string("output_dir", "");
  cfg.threads = checked_int(root.integer("threads", 1), "threads", 1);
  root.finish();
  return cfg;
}

void apply_override(ordered_json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  ordered_json parsed = ordered_json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;
  ordered_json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty()) throw ConfigError("override key '" + key + "' has an empty component");
    if (!node->is_object()) throw ConfigError("override key '" + key + "' descends into a non-object");
    if (dot == std::string::npos) {
      // A string-valued key stays a string, so "sin_phi=0" keeps its type.
      const auto it = node->find(part);
      (*node)[part] = (it != node->end() && it->is_string()) ? ordered_json(value) : parsed;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = ordered_json::object();
    start = dot + 1;
  }
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  ordered_json doc = ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config " + path.string() + " is not valid JSON");
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc);
}

ordered_json to_json(const RunConfig& cfg) {
  ordered_json j;
  j["mode"] = to_string(cfg.mode);
  j["physical"] = {{"eta", cfg.physical.eta},
                   {"u0", cfg.physical.u0},
                   {"delta_c", cfg.physical.delta_c},
                   {"kappa", cfg.physical.kappa},
                   {"sin_phi", angle_string(cfg.physical.angle)}};
  if (cfg.lattice)
    j["lattice"] = {{"n_max", cfg.lattice->n_max},
                    {"cutoff_plus", cfg.lattice->cutoff_plus},
                    {"cutoff_minus", cfg.lattice->cutoff_minus}};
  const IntegratorConfig& ic = cfg.integrator;
  j["integrator"] = {{"dt", ic.dt},
                     {"t_final", ic.t_final},
                     {"rel_tol", ic.rel_tol},
                     {"abs_tol", ic.abs_tol},
                     {"record_interval", ic.record_interval},
                     {"snapshot_interval", ic.snapshot_interval},
                     {"max_trace_drift", ic.max_trace_drift}};
  j["meanfield"] = {{"n_grid", cfg.meanfield.n_grid},
                    {"seed", cfg.meanfield.seed},
                    {"dt", cfg.meanfield.dt},
                    {"max_norm_drift", cfg.meanfield.max_norm_drift},
                    {"seed_sensitivity", cfg.seed_sensitivity}};
  const SteadyStateOptions& so = cfg.steady;
  j["steady"] = {{"residual_tolerance", so.residual_tolerance},
                 {"change_tolerance", so.change_tolerance},
                 {"t_max", so.t_max},
                 {"rel_tol", so.rel_tol},
                 {"abs_tol", so.abs_tol},
                 {"max_trace_drift", so.max_trace_drift},
                 {"cross_check_max_dim", so.cross_check_max_dim},
                 {"agreement_tolerance", so.agreement_tolerance}};
  ordered_json angles = ordered_json::array();
  for (const auto& a : cfg.sweep.angles) angles.push_back(angle_string(a));
  j["sweep"] = {{"eta_min", cfg.sweep.eta_min},
                {"eta_max", cfg.sweep.eta_max},
                {"points", cfg.sweep.points},
                {"angles", angles},
                {"grow_cutoffs", cfg.sweep.grow_cutoffs},
                {"max_dimension", cfg.sweep.max_dimension},
                {"ground_state_grid", cfg.sweep.ground_state_grid}};
  j["wigner"] = {{"points", cfg.wigner_points}};
  j["truncation_limit"] = cfg.truncation_limit;
  return j;
}

}  // namespace ringcav::cli
