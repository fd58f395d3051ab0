// Copyright 2026 The coorbit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coorbit/cv_tomo.hpp"
#include "coorbit/discrete_ps.hpp"
#include "coorbit/frame.hpp"
#include "coorbit/serialize.hpp"
#include "coorbit/spin_moyal.hpp"
#include "coorbit/su11.hpp"
#include "coorbit/symplectic.hpp"

namespace coorbit::cli {

namespace {

using json = nlohmann::ordered_json;

// Frame bounds need the d^2 x d^2 frame superoperator; beyond this the
// report leaves them out rather than fall back to sampled estimates.
constexpr Index kFrameDimLimit = 16;
constexpr double kProbeDelta = 4.0;
constexpr double kThermalProbe = 0.5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot write " + *path);
  file << text;
  if (!file) throw ConfigError("write failed: " + *path);
}

spin::SpinParams spin_params(const RunConfig& cfg) {
  return {static_cast<int>(cfg.get_int("two_s"))};
}

spin::SphereGrid spin_grid(const RunConfig& cfg) {
  return spin::sphere_grid(spin_params(cfg), static_cast<int>(cfg.get_int("n_theta")),
                           static_cast<int>(cfg.get_int("n_phi")));
}

cv::FockSpace fock(const RunConfig& cfg) { return {static_cast<int>(cfg.get_int("d"))}; }

cv::PolarGrid homodyne_grid(const RunConfig& cfg) {
  return cv::polar_grid(cfg.get_real("R"), static_cast<int>(cfg.get_int("n_r")),
                        static_cast<int>(cfg.get_int("n_phi")));
}

su11::DiscreteSeriesRep su11_rep(const RunConfig& cfg) {
  return {cfg.get_real("k"), static_cast<int>(cfg.get_int("cutoff"))};
}

su11::SuGrid su11_grid(const RunConfig& cfg, double theta_max) {
  return su11::su_grid(theta_max, static_cast<int>(cfg.get_int("n_theta")),
                       static_cast<int>(cfg.get_int("n_phi")));
}

symplectic::KernelConvention kernel(const RunConfig& cfg) {
  return cfg.get_choice("kernel") == "as_printed" ? symplectic::KernelConvention::as_printed
                                                  : symplectic::KernelConvention::symmetric;
}

symplectic::MarginalGrid marginal_grid(const RunConfig& cfg, double delta) {
  return symplectic::marginal_grid(fock(cfg), delta, static_cast<int>(cfg.get_int("n_x")),
                                   static_cast<int>(cfg.get_int("n_mn")));
}

/// Systems with a finite index grid; symplectic tomography has none.
std::optional<TomographicSystem> grid_system(const RunConfig& cfg) {
  switch (cfg.system) {
    case SystemKind::spin: return spin::moyal_system(spin_params(cfg), spin_grid(cfg), true);
    case SystemKind::dps: return dps::heisenberg_system(static_cast<int>(cfg.get_int("N")));
    case SystemKind::homodyne: return cv::homodyne_system(fock(cfg), homodyne_grid(cfg));
    case SystemKind::su11:
      return su11::su11_system(su11_rep(cfg), su11_grid(cfg, cfg.get_list("theta_max").back()));
    case SystemKind::symplectic: return std::nullopt;
  }
  return std::nullopt;
}

void add_frame(Report& r, const TomographicSystem& sys) {
  if (sys.dim() > kFrameDimLimit) return;
  const FrameReport f = frame_bounds(sys, 2.0);
  r.frame_A = f.A;
  r.frame_B = f.B;
  r.frame_certified = f.certified;
}

void run_exact(Report& r, const TomographicSystem& sys, const DensityMatrix& rho) {
  const RoundTrip rt = roundtrip(sys, rho.op());
  r.hs_error = rt.hs_error;
  r.fidelity = fidelity(rho, rt.reconstructed);
  add_frame(r, sys);
  r.admissibility = admissibility_constant(sys, sys.vacuum(), sys.test_functional()).constant;
}

void take_last(Report& r) {
  r.hs_error = r.ladder.back().hs_error;
  r.fidelity = r.ladder.back().fidelity;
}

std::string csv_row(std::initializer_list<double> values) {
  std::string line;
  bool first = true;
  for (double v : values) {
    if (!first) line += ',';
    line += format_double(v);
    first = false;
  }
  line += '\n';
  return line;
}

std::string alpha_grid_csv(const IndexGrid& grid, const std::function<cplx(cplx)>& value) {
  std::string text = "re_alpha,im_alpha,value_re,value_im\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto c = grid.coords(i);
    const cplx alpha = std::polar(c[0], c[1]);
    const cplx v = value(alpha);
    text += csv_row({alpha.real(), alpha.imag(), v.real(), v.imag()});
  }
  return text;
}

[[noreturn]] void unsupported(const RunConfig& cfg, const std::string& kind) {
  throw ConfigError("emit " + kind + " is not available for system " + to_string(cfg.system));
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

RunConfig load_config(const Overrides& ov) {
  RunConfig cfg;
  if (ov.config_path) {
    cfg = parse_config(read_file(*ov.config_path));
    if (ov.system && system_from_string(*ov.system) != cfg.system) {
      cfg.system = system_from_string(*ov.system);
    }
  } else if (ov.system) {
    cfg = default_config(system_from_string(*ov.system));
  } else {
    throw ConfigError("either --config or --system is required");
  }
  if (ov.seed) {
    if (!ov.config_path) {
      cfg.state = StateSpec{"random", {}};
    } else if (cfg.state.kind != "random") {
      throw ConfigError("--seed applies only to random states");
    }
    if (*ov.seed > 9007199254740992ULL) throw ConfigError("--seed must be at most 2^53");
    cfg.state.fields["seed"] = static_cast<std::int64_t>(*ov.seed);
  }
  if (ov.tolerance) {
    if (!std::isfinite(*ov.tolerance) || *ov.tolerance < 0.0) {
      throw ConfigError("--tolerance must be finite and non-negative");
    }
    cfg.tolerances.hs_error = *ov.tolerance;
  }
  validate(cfg);
  return cfg;
}

Report run_tomography(const RunConfig& cfg) {
  validate(cfg);
  const DensityMatrix rho = make_state(cfg);
  Report r;
  r.system = to_string(cfg.system);
  r.dim = rho.dim();

  switch (cfg.system) {
    case SystemKind::spin:
    case SystemKind::dps:
      run_exact(r, *grid_system(cfg), rho);
      break;
    case SystemKind::homodyne: {
      const TomographicSystem sys = *grid_system(cfg);
      const RoundTrip rt = roundtrip(sys, rho.op());
      r.hs_error = rt.hs_error;
      r.fidelity = fidelity(rho, rt.reconstructed);
      add_frame(r, sys);
      r.admissibility = cv::admissibility(fock(cfg), kProbeDelta, homodyne_grid(cfg)).generic;
      if (cfg.has("ladder")) {
        r.ladder_parameter = "R";
        for (const cv::LadderPoint& p :
             cv::homodyne_ladder(rho, cfg.get_list("ladder"), static_cast<int>(cfg.get_int("n_r")),
                                 static_cast<int>(cfg.get_int("n_phi")))) {
          r.ladder.push_back({p.R, p.hs_error, p.fidelity});
        }
      }
      break;
    }
    case SystemKind::symplectic: {
      r.ladder_parameter = "delta";
      for (double delta : cfg.get_list("deltas")) {
        const Operator rec = symplectic::reconstruct(rho, marginal_grid(cfg, delta), kernel(cfg));
        r.ladder.push_back({delta, (rec - rho.op()).hs_norm(), fidelity(rho, rec)});
      }
      take_last(r);
      break;
    }
    case SystemKind::su11: {
      const su11::DiscreteSeriesRep rep = su11_rep(cfg);
      r.ladder_parameter = "theta_max";
      su11::SuGrid grid;
      for (double theta_max : cfg.get_list("theta_max")) {
        grid = su11_grid(cfg, theta_max);
        const su11::Su11Reconstruction rec = su11::reconstruct(rho, rep, grid);
        r.ladder.push_back({theta_max, rec.interior_residual, rec.interior_fidelity});
      }
      take_last(r);
      r.admissibility = su11::thermal_admissibility(rep, kThermalProbe, grid);
      break;
    }
  }

  std::ostringstream hint;
  if (cfg.tolerances.hs_error && !(r.hs_error <= *cfg.tolerances.hs_error)) {
    r.passed = false;
    hint << "hs_error " << format_double(r.hs_error) << " exceeds tolerance "
         << format_double(*cfg.tolerances.hs_error) << ". ";
  }
  if (cfg.tolerances.fidelity && !(r.fidelity >= *cfg.tolerances.fidelity)) {
    r.passed = false;
    hint << "fidelity " << format_double(r.fidelity) << " is below tolerance "
         << format_double(*cfg.tolerances.fidelity) << ". ";
  }
  if (!r.passed) {
    switch (cfg.system) {
      case SystemKind::homodyne: hint << "Increase R (cutoff radius) or n_r, n_phi."; break;
      case SystemKind::symplectic: hint << "Increase the largest delta in the ladder."; break;
      case SystemKind::su11: hint << "Extend theta_max or raise the cutoff."; break;
      case SystemKind::spin: hint << "Use the exact grid (n_theta = n_phi = 0)."; break;
      case SystemKind::dps: hint << "Reconstruction should be exact; check the state."; break;
    }
    r.hint = hint.str();
  }
  return r;
}

std::string report_to_json(const Report& r) {
  json doc;
  doc["system"] = r.system;
  doc["dim"] = r.dim;
  doc["hs_error"] = r.hs_error;
  doc["fidelity"] = r.fidelity;
  doc["frame_A"] = optional_number(r.frame_A);
  doc["frame_B"] = optional_number(r.frame_B);
  doc["frame_certified"] = r.frame_certified ? json(*r.frame_certified) : json(nullptr);
  doc["admissibility"] =
      r.admissibility ? json::array({r.admissibility->real(), r.admissibility->imag()}) : json(nullptr);
  if (!r.ladder.empty()) {
    json ladder = json::array();
    for (const LadderEntry& e : r.ladder) {
      json row;
      row[r.ladder_parameter] = e.parameter;
      row["hs_error"] = e.hs_error;
      row["fidelity"] = e.fidelity;
      ladder.push_back(row);
    }
    doc["ladder"] = ladder;
  }
  doc["passed"] = r.passed;
  if (!r.hint.empty()) doc["hint"] = r.hint;
  return doc.dump(2) + "\n";
}

std::string state_to_json(const DensityMatrix& rho) { return operator_to_json(rho.op()) + "\n"; }

std::string emit(const RunConfig& cfg, const std::string& kind) {
  validate(cfg);
  if (kind == "samples") {
    const std::optional<TomographicSystem> sys = grid_system(cfg);
    if (!sys) unsupported(cfg, kind);
    return samples_to_json(analyze(*sys, make_state(cfg).op())) + "\n";
  }
  if (kind == "wigner") {
    if (cfg.system == SystemKind::dps) {
      const dps::WignerGrid w = dps::wigner(make_state(cfg));
      std::string text = "q,p,W\n";
      for (Index q = 0; q < w.values.rows(); ++q) {
        for (Index p = 0; p < w.values.cols(); ++p) {
          text += std::to_string(q) + "," + std::to_string(p) + "," + format_double(w.values(q, p)) + "\n";
        }
      }
      return text;
    }
    if (cfg.system == SystemKind::homodyne) {
      const DensityMatrix rho = make_state(cfg);
      return alpha_grid_csv(homodyne_grid(cfg).grid,
                            [&](cplx a) { return cplx(cv::wigner_function(rho, a)); });
    }
    unsupported(cfg, kind);
  }
  if (kind == "qfunc") {
    if (cfg.system != SystemKind::homodyne) unsupported(cfg, kind);
    const DensityMatrix rho = make_state(cfg);
    return alpha_grid_csv(homodyne_grid(cfg).grid, [&](cplx a) { return cplx(cv::qfunction(rho, a)); });
  }
  if (kind == "marginal") {
    if (cfg.system != SystemKind::symplectic) unsupported(cfg, kind);
    const symplectic::MarginalGrid grid = marginal_grid(cfg, cfg.get_list("deltas").back());
    const symplectic::MarginalTable w = symplectic::sample_marginals(make_state(cfg), grid);
    std::string text = "X,mu,nu,w\n";
    for (std::size_t a = 0; a < grid.mu.size(); ++a) {
      const double lambda = std::hypot(grid.mu[a], grid.nu[a]);
      for (std::size_t j = 0; j < grid.x_nodes.size(); ++j) {
        text += csv_row({lambda * grid.x_nodes[j], grid.mu[a], grid.nu[a],
                         w(static_cast<Index>(a), static_cast<Index>(j))});
      }
    }
    return text;
  }
  if (kind == "symbols") {
    if (cfg.system != SystemKind::spin) unsupported(cfg, kind);
    const spin::SphereGrid grid = spin_grid(cfg);
    const SampleVector s = spin::symbols(spin_params(cfg), make_state(cfg), grid);
    std::string text = "theta,phi,weight,symbol_re,symbol_im\n";
    for (std::size_t i = 0; i < grid.grid.size(); ++i) {
      const auto c = grid.grid.coords(i);
      text += csv_row({c[0], c[1], grid.grid.weight(i), s.values[i].real(), s.values[i].imag()});
    }
    return text;
  }
  throw ConfigError("unknown emit kind '" + kind + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"coorbit: operator tomography on homogeneous spaces", "coorbit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path, system;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  auto* o_config = app.add_option("--config", config_path, "JSON run configuration");
  auto* o_out = app.add_option("--out", out_path, "output file (default: stdout)");
  auto* o_system = app.add_option("--system", system, "spin | dps | homodyne | symplectic | su11");
  auto* o_seed = app.add_option("--seed", seed, "seed for random states");
  auto* o_tol = app.add_option("--tolerance", tolerance, "hs_error tolerance (overrides config)");

  auto* state = app.add_subcommand("state", "density-matrix utilities");
  state->require_subcommand(1);
  auto* state_make = state->add_subcommand("make", "write the configured state as JSON");
  auto* tomo = app.add_subcommand("tomo", "tomographic round trips");
  tomo->require_subcommand(1);
  auto* tomo_run = tomo->add_subcommand("run", "analyze, synthesize and report");
  auto* emit_cmd = app.add_subcommand("emit", "write phase-space data");
  std::string kind;
  emit_cmd->add_option("kind", kind, "wigner | qfunc | marginal | symbols | samples")
      ->required()
      ->check(CLI::IsMember({"wigner", "qfunc", "marginal", "symbols", "samples"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  Overrides ov;
  if (o_config->count() > 0) ov.config_path = config_path;
  if (o_out->count() > 0) ov.out = out_path;
  if (o_system->count() > 0) ov.system = system;
  if (o_seed->count() > 0) ov.seed = seed;
  if (o_tol->count() > 0) ov.tolerance = tolerance;

  try {
    const RunConfig cfg = load_config(ov);
    if (state_make->parsed()) {
      write_output(ov.out ? ov.out : cfg.outputs.state, state_to_json(make_state(cfg)), out);
      return kOk;
    }
    if (tomo_run->parsed()) {
      const Report report = run_tomography(cfg);
      write_output(ov.out ? ov.out : cfg.outputs.report, report_to_json(report), out);
      if (!report.passed) {
        err << "coorbit: tolerance not met. " << report.hint << "\n";
        return kToleranceFailure;
      }
      return kOk;
    }
    write_output(ov.out ? ov.out : cfg.outputs.csv, emit(cfg, kind), out);
    return kOk;
  } catch (const ConfigError& e) {
    err << "coorbit: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    // Library-side validation failures (invalid grids, non-admissible
    // systems) trace back to the configuration.
    err << "coorbit: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace coorbit::cli
