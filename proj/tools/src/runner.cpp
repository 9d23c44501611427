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

#include "ringcav/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <iostream>

#include <CLI11.hpp>

#include "ringcav/csv.hpp"
#include "ringcav/dopri5.hpp"
#include "ringcav/effective_potential.hpp"
#include "ringcav/sweep.hpp"
#include "ringcav/version.hpp"

namespace ringcav::cli {

using nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

std::string angle_tag(const RationalAngle& a) {
  std::string s = angle_string(a);
  for (char& c : s) {
    if (c == '/') c = '_';
    if (c == '-') c = 'm';
  }
  return s;
}

LatticeSpec lattice_for(const RunConfig& cfg, const RationalAngle& angle) {
  return make_lattice(angle, cfg.lattice->n_max, cfg.lattice->cutoff_plus,
                      cfg.lattice->cutoff_minus);
}

ordered_json truncation_json(const TruncationDiagnostics& t) {
  return {{"boundary_atom", t.atom_boundary},
          {"boundary_plus", t.plus_top},
          {"boundary_minus", t.minus_top}};
}

struct QuantumRun {
  EvolutionResult result;
  LatticeSpec spec;
};

QuantumRun run_quantum(const RunConfig& cfg, RunOutcome& out, ordered_json& diag) {
  const LatticeSpec spec = lattice_for(cfg, cfg.physical.angle);
  const Operator h = build_hamiltonian(spec, cfg.physical);
  EvolutionResult r = evolve(initial_state(spec), h, spec, cfg.physical.kappa, cfg.integrator);
  out.files.push_back({"quantum_trajectory.csv", trajectory_table(r.trajectory).str()});
  const auto pp = photon_distribution(r.final_state, Subsystem::plus);
  const auto pm = photon_distribution(r.final_state, Subsystem::minus);
  out.files.push_back({"quantum_photons.csv", photon_table(pp, pm).str()});
  out.files.push_back({"quantum_momentum.csv", momentum_table(momentum_stats(r.final_state, spec)).str()});
  for (const auto& [t, rho] : r.trajectory.snapshots)
    out.files.push_back({"snapshot_t" + format_double(t) + ".txt", density_text(rho)});

  const Trajectory& tr = r.trajectory;
  diag["quantum"] = {{"dimension", spec.dimension()},
                     {"blocks", r.blocks},
                     {"accepted_steps", r.accepted_steps},
                     {"rejected_steps", r.rejected_steps},
                     {"max_trace_drift", r.max_trace_drift},
                     {"min_eigenvalue", r.min_eigenvalue},
                     {"worst_truncation", truncation_json(r.worst_truncation)},
                     {"final_p_mean", tr.column("p_mean").back()},
                     {"final_log_negativity", tr.column("log_negativity").back()},
                     {"plus_passive", is_passive(pp)},
                     {"minus_passive", is_passive(pm)}};
  if (r.worst_truncation.worst() >= cfg.truncation_limit) out.exit_code = kTruncationError;
  return {std::move(r), spec};
}

MeanFieldResult run_meanfield(const RunConfig& cfg, RunOutcome& out, ordered_json& diag) {
  MeanFieldResult r = mf_evolve(seeded_state(cfg.physical.angle, cfg.meanfield), cfg.physical,
                                cfg.meanfield);
  out.files.push_back({"meanfield_trajectory.csv", trajectory_table(r.trajectory).str()});
  out.files.push_back({"meanfield_momentum.csv", momentum_table(mf_momentum_stats(r.final_state)).str()});

  // Final-slope dependence on the symmetry-breaking seed.
  const double t1 = cfg.integrator.t_final;
  const double t0 = std::max(0.0, t1 - 1.0);
  CsvTable seeds;
  seeds.header = {"seed", "final_p_mean", "final_slope"};
  std::vector<double> all{cfg.meanfield.seed};
  all.insert(all.end(), cfg.seed_sensitivity.begin(), cfg.seed_sensitivity.end());
  for (double s : all) {
    MeanFieldConfig c = cfg.meanfield;
    c.seed = s;
    const MeanFieldResult& rs =
        (s == cfg.meanfield.seed) ? r : mf_evolve(seeded_state(cfg.physical.angle, c), cfg.physical, c);
    seeds.rows.push_back({s, rs.trajectory.column("p_mean").back(),
                          fit_slope(rs.trajectory, "p_mean", t0, t1)});
  }
  out.files.push_back({"meanfield_seed_sensitivity.csv", seeds.str()});
  diag["meanfield"] = {{"n_grid", cfg.meanfield.n_grid},
                       {"max_norm_drift", r.max_norm_drift},
                       {"max_boundary", r.max_boundary},
                       {"final_p_mean", r.trajectory.column("p_mean").back()},
                       {"final_alpha_plus_abs", std::abs(r.final_state.alpha_plus)},
                       {"final_alpha_minus_abs", std::abs(r.final_state.alpha_minus)}};
  if (r.max_boundary >= cfg.truncation_limit) out.exit_code = kTruncationError;
  return r;
}

void add_field_files(RunOutcome& out, const FieldAnalysis& fa) {
  out.files.push_back({"wigner_plus.csv", wigner_csv(fa.wigner_plus)});
  out.files.push_back({"wigner_minus.csv", wigner_csv(fa.wigner_minus)});
  out.files.push_back({"radial_plus.csv", radial_table(fa.plus).str()});
  out.files.push_back({"radial_minus.csv", radial_table(fa.minus).str()});
  CsvTable cut;
  cut.header = {"re", "w_plus", "w_minus"};
  for (std::size_t i = 0; i < fa.plus.cut.size(); ++i)
    cut.rows.push_back({fa.wigner_plus.re_axis[i], fa.plus.cut[i], fa.minus.cut[i]});
  out.files.push_back({"wigner_cut.csv", cut.str()});
}

ordered_json field_json(const FieldExtraction& fe, const WignerGrid& w, double coherence) {
  return {{"annulus", fe.is_annulus},
          {"magnitude", fe.magnitude},
          {"contrast", fe.contrast},
          {"max_coherence", coherence},
          {"tail_population", w.tail_population},
          {"tail_flag", w.tail_flag}};
}

void run_wigner(const RunConfig& cfg, RunOutcome& out, ordered_json& diag) {
  const LatticeSpec spec = lattice_for(cfg, cfg.physical.angle);
  const Operator h = build_hamiltonian(spec, cfg.physical);
  const SteadyStateResult ss = steady_state(h, spec, cfg.physical.kappa, cfg.steady);
  const FieldAnalysis fa = analyze_fields(ss.rho, kAnnulusThreshold, cfg.wigner_points);
  add_field_files(out, fa);
  out.files.push_back({"steady_photons.csv",
                       photon_table(photon_distribution(ss.rho, Subsystem::plus),
                                    photon_distribution(ss.rho, Subsystem::minus))
                           .str()});
  out.files.push_back({"steady_momentum.csv", momentum_table(momentum_stats(ss.rho, spec)).str()});
  const SymmetryProbes sym = symmetry_probes(ss.rho, spec);
  diag["steady_state"] = {{"dimension", spec.dimension()},
                          {"blocks", ss.blocks},
                          {"method", ss.method},
                          {"residual", ss.residual},
                          {"converge_time", ss.time},
                          {"degenerate", ss.degenerate},
                          {"truncation", truncation_json(ss.truncation)},
                          {"symmetry_probe_max", sym.max()}};
  if (ss.cross_check_distance) diag["steady_state"]["cross_check_distance"] = *ss.cross_check_distance;
  diag["field_plus"] = field_json(fa.plus, fa.wigner_plus, fa.coherence_plus);
  diag["field_minus"] = field_json(fa.minus, fa.wigner_minus, fa.coherence_minus);

  // Reference cuts: coherent states at the mean-field amplitudes reached at
  // t_final, W(r) = (2/pi) exp(-2 (r - |alpha|)^2) along the real axis.
  const MeanFieldResult mf =
      mf_evolve(seeded_state(cfg.physical.angle, cfg.meanfield), cfg.physical, cfg.meanfield);
  const double mp = std::abs(mf.final_state.alpha_plus);
  const double mm = std::abs(mf.final_state.alpha_minus);
  CsvTable ref;
  ref.header = {"radius", "w_plus", "w_minus"};
  for (double r : fa.plus.radii)
    ref.rows.push_back({r, 2.0 / std::numbers::pi * std::exp(-2.0 * (r - mp) * (r - mp)),
                        2.0 / std::numbers::pi * std::exp(-2.0 * (r - mm) * (r - mm))});
  out.files.push_back({"meanfield_radial.csv", ref.str()});
  diag["meanfield_reference"] = {{"t_final", cfg.meanfield.t_final},
                                 {"alpha_plus_abs", mp},
                                 {"alpha_minus_abs", mm}};
  if (ss.truncation.worst() >= cfg.truncation_limit) out.exit_code = kTruncationError;
}

void run_sweep_mode(const RunConfig& cfg, RunOutcome& out, ordered_json& diag) {
  std::vector<SweepOptions> chains;
  for (const auto& angle : cfg.sweep.angles) {
    SweepOptions o;
    o.base = cfg.physical;
    o.base.angle = angle;
    o.etas = linear_grid(cfg.sweep.eta_min, cfg.sweep.eta_max, cfg.sweep.points);
    o.n_max = cfg.lattice->n_max;
    o.cutoff_plus = cfg.lattice->cutoff_plus;
    o.cutoff_minus = cfg.lattice->cutoff_minus;
    o.steady = cfg.steady;
    o.truncation_limit = cfg.truncation_limit;
    o.grow_cutoffs = cfg.sweep.grow_cutoffs;
    o.max_dimension = cfg.sweep.max_dimension;
    o.ground_state_grid = cfg.sweep.ground_state_grid;
    chains.push_back(std::move(o));
  }
  const auto results = run_sweeps(chains, cfg.threads);
  ordered_json per = ordered_json::array();
  for (const auto& r : results) {
    out.files.push_back({"sweep_sin" + angle_tag(r.angle) + ".csv", sweep_table(r).str()});
    bool trunc_ok = true;
    for (const auto& p : r.points) trunc_ok = trunc_ok && p.truncation_ok;
    per.push_back({{"sin_phi", angle_string(r.angle)},
                   {"points", r.points.size()},
                   {"truncation_ok", trunc_ok},
                   {"final_lattice",
                    {r.last_lattice.n_max(), r.last_lattice.cutoff_plus(), r.last_lattice.cutoff_minus()}}});
    if (!trunc_ok) out.exit_code = kTruncationError;
  }
  diag["sweeps"] = per;
}

}  // namespace

RunOutcome execute(const RunConfig& cfg) {
  RunOutcome out;
  ordered_json diag = ordered_json::object();
  switch (cfg.mode) {
    case Mode::dynamics:
      run_quantum(cfg, out, diag);
      break;
    case Mode::meanfield:
      run_meanfield(cfg, out, diag);
      break;
    case Mode::compare: {
      const QuantumRun q = run_quantum(cfg, out, diag);
      const int q_code = out.exit_code;
      const MeanFieldResult mf = run_meanfield(cfg, out, diag);
      out.exit_code = std::max(q_code, out.exit_code);
      const double t1 = cfg.integrator.t_final;
      const double mid = 0.5 * t1;
      diag["compare"] = {
          {"quantum_peak_slope", peak_slope(q.result.trajectory, "p_mean")},
          {"quantum_late_slope", fit_slope(q.result.trajectory, "p_mean", mid, t1)},
          {"meanfield_early_slope", fit_slope(mf.trajectory, "p_mean", 0.0, mid)},
          {"meanfield_late_slope", fit_slope(mf.trajectory, "p_mean", mid, t1)}};
      break;
    }
    case Mode::sweep:
      run_sweep_mode(cfg, out, diag);
      break;
    case Mode::wigner:
      run_wigner(cfg, out, diag);
      break;
  }
  std::vector<std::string> names;
  for (const auto& f : out.files) names.push_back(f.name);
  std::sort(names.begin(), names.end());
  const ordered_json files = names;
  out.manifest = {{"schema_version", kSchemaVersion},
                  {"code", {{"name", "ringcav"}, {"version", kVersion}}},
                  {"mode", to_string(cfg.mode)},
                  {"status", out.exit_code == kOk ? "ok" : "truncation_limit_exceeded"},
                  {"config", to_json(cfg)},
                  {"diagnostics", diag},
                  {"files", files}};
  return out;
}

void commit(const RunOutcome& outcome, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : outcome.files) write_file_atomic(dir / f.name, f.content);
  write_file_atomic(dir / "manifest.json", outcome.manifest.dump(2) + "\n");
}

int run_main(int argc, char** argv) {
  CLI::App app{"Ring-cavity self-ordering: quantum master equation versus mean field"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::string config_path;
  std::string output;
  int threads = 0;
  std::vector<std::string> overrides;
  app.add_option("--output", output, "Output directory (overrides RINGCAV_OUTPUT_DIR and output_dir)");
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--override", overrides, "Config override key=value (dotted keys), repeatable");
  const char* descriptions[][2] = {
      {"dynamics", "Quantum master-equation dynamics from |p=0>|0,0>"},
      {"meanfield", "Mean-field split-step dynamics with a seeded field"},
      {"sweep", "Steady-state pump sweep with field extraction"},
      {"wigner", "Steady-state Wigner functions of both modes"},
      {"compare", "Quantum and mean-field dynamics on a common time grid"}};
  for (const auto& d : descriptions) {
    CLI::App* sub = app.add_subcommand(d[0], d[1]);
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->fallthrough();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    auto ov = overrides;
    cfg = load_config(config_path, ov);
    if (to_string(cfg.mode) != sub)
      throw ConfigError("config is for mode '" + to_string(cfg.mode) + "' but subcommand is '" + sub + "'");
    if (threads > 0) cfg.threads = threads;
  } catch (const ConfigError& e) {
    std::cerr << "ringcav: config error: " << e.what() << "\n";
    return kConfigError;
  }

  std::filesystem::path dir = "ringcav-out";
  if (!output.empty()) {
    dir = output;
  } else if (const char* env = std::getenv("RINGCAV_OUTPUT_DIR"); env && *env) {
    dir = env;
  } else if (!cfg.output_dir.empty()) {
    dir = cfg.output_dir;
  }

  try {
    const RunOutcome outcome = execute(cfg);
    commit(outcome, dir);
    if (outcome.exit_code == kTruncationError)
      std::cerr << "ringcav: truncation diagnostics exceed " << cfg.truncation_limit
                << "; enlarge the lattice\n";
    return outcome.exit_code;
  } catch (const SteadyStateError& e) {
    std::cerr << "ringcav: steady state not reached: " << e.what() << "\n";
    return kConvergenceError;
  } catch (const EvolutionError& e) {
    std::cerr << "ringcav: integration failed: " << e.what() << "\n";
    return kConvergenceError;
  } catch (const StepSizeUnderflow& e) {
    std::cerr << "ringcav: integration failed: " << e.what() << "\n";
    return kConvergenceError;
  } catch (const GroundStateError& e) {
    std::cerr << "ringcav: ground state failed: " << e.what() << "\n";
    return kConvergenceError;
  } catch (const ConfigError& e) {
    std::cerr << "ringcav: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ringcav: invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "ringcav: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace ringcav::cli
