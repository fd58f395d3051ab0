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

// Acceptance harness. One PASS/FAIL line per criterion; `--criterion N`
// runs a single one. Each line carries the measured quantities and the
// wall time against the budget.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coorbit/cv_tomo.hpp"
#include "coorbit/discrete_ps.hpp"
#include "coorbit/frame.hpp"
#include "coorbit/spin_moyal.hpp"
#include "coorbit/su11.hpp"
#include "coorbit/symplectic.hpp"

namespace {

using namespace coorbit;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Verdict&)> body;
};

DensityMatrix random_state(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix z(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) z(i, j) = cplx(g(rng), g(rng));
  Matrix rho = z * z.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(Operator(rho));
}

// ---------------------------------------------------------------- AC1, AC2

void discrete_exactness(Verdict& v) {
  double worst_disp = 0.0, worst_point = 0.0;
  for (int N = 2; N <= 8; ++N) {
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix rho = random_state(N, 1000 * N + k);
      worst_disp = std::max(worst_disp, (dps::reconstruct_displacement(rho.op()) - rho.op()).hs_norm());
      worst_point = std::max(worst_point, (dps::reconstruct_point(rho.op()) - rho.op()).hs_norm());
    }
  }
  v.detail << "max HS error: displacement route " << worst_disp << ", point route " << worst_point;
  v.require(worst_disp <= 1e-12, "displacement route <= 1e-12");
  v.require(worst_point <= 1e-12, "point route <= 1e-12");
}

void parseval_bounds(Verdict& v) {
  for (int N = 2; N <= 4; ++N) {
    const FrameReport r = frame_bounds(dps::heisenberg_system(N), 2.0);
    v.detail << "N=" << N << " A-1=" << r.A - 1.0 << " B-1=" << r.B - 1.0 << "; ";
    v.require(std::abs(r.A - 1.0) <= 1e-12 && std::abs(r.B - 1.0) <= 1e-12,
              "A = B = 1 at N=" + std::to_string(N));
    v.require(r.certified, "spectral certificate at N=" + std::to_string(N));
  }
}

// ---------------------------------------------------------------- AC3, AC4

void spin_reconstruction(Verdict& v) {
  for (int two_s = 1; two_s <= 4; ++two_s) {
    const spin::SpinParams p{two_s};
    const TomographicSystem sys = spin::moyal_system(p, spin::sphere_grid(p));
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      worst = std::max(worst, roundtrip(sys, random_state(p.dim(), 77 * two_s + k).op()).hs_error);
    }
    const Admissibility a = admissibility_constant(sys, sys.vacuum(), sys.test_functional());
    const double c_err = std::abs(a.constant - cplx(two_s + 1.0));
    const double p_err = a.normalization ? std::abs(*a.normalization - cplx(1.0)) : INFINITY;
    v.detail << "2s=" << two_s << " err=" << worst << " |C-(2s+1)|=" << c_err << " |P-1|=" << p_err
             << "; ";
    const std::string tag = " at 2s=" + std::to_string(two_s);
    v.require(worst <= 1e-10, "round trip" + tag);
    v.require(c_err <= 1e-10, "C = 2s+1" + tag);
    v.require(p_err <= 1e-10, "P = 1" + tag);
  }
}

// Dual coefficients from the duality requirement itself: c solves
// sum_i w_i Tr(X R_i diag(c) R_i^dagger) |up_i><up_i| = X for all basis X.
std::vector<double> dual_by_linear_system(spin::SpinParams p) {
  const spin::SphereGrid grid = spin::sphere_grid(p);
  const Index d = p.dim();
  Matrix system = Matrix::Zero(d * d * d * d, d);
  Vector target(d * d * d * d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      Matrix x = Matrix::Zero(d, d);
      x(a, b) = 1.0;
      const Index row0 = (a * d + b) * d * d;
      target.segment(row0, d * d) = Eigen::Map<const Vector>(x.data(), d * d);
      for (std::size_t i = 0; i < grid.grid.size(); ++i) {
        const Matrix u =
            spin::rotation_operator(p, grid.grid.coords(i)[0], grid.grid.coords(i)[1]).matrix();
        const Matrix proj = u.col(0) * u.col(0).adjoint();
        for (Index m = 0; m < d; ++m) {
          const cplx pairing = (x * u.col(m) * u.col(m).adjoint()).trace();
          const Matrix term = grid.grid.weight(i) * pairing * proj;
          system.block(row0, m, d * d, 1) += Eigen::Map<const Vector>(term.data(), d * d);
        }
      }
    }
  }
  const Vector c = system.colPivHouseholderQr().solve(target);
  std::vector<double> out;
  for (Index m = 0; m < d; ++m) out.push_back(c(m).real());
  return out;
}

void tracial_identity(Verdict& v) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> spin_pick(1, 4);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const spin::SpinParams p{spin_pick(rng)};
    const double theta = angle(rng);
    const double direct =
        (spin::kernel_direct(p, theta, 0.0).matrix() * spin::kernel_dual(p, 0.0, 0.0).matrix())
            .trace()
            .real();
    worst = std::max(worst, std::abs(direct - spin::tracial_overlap(p, theta)));
  }
  const std::vector<double> oracle = dual_by_linear_system({1});
  const std::vector<double> dual = spin::dual_coefficients({1});
  const double dual_err = std::max({std::abs(oracle[0] - 2.0), std::abs(oracle[1] + 1.0),
                                    std::abs(dual[0] - oracle[0]), std::abs(dual[1] - oracle[1])});
  v.detail << "max |trace - Legendre| over 50 pairs " << worst << "; s=1/2 duals (" << dual[0] << ", "
           << dual[1] << "), oracle (" << oracle[0] << ", " << oracle[1] << ")";
  v.require(worst <= 1e-10, "tracial identity <= 1e-10");
  v.require(dual_err <= 1e-10, "s=1/2 duals = (2, -1)");
}

// ---------------------------------------------------------------- AC5 - AC7

bool nonincreasing(const std::vector<double>& xs, double slack = 0.0) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[i - 1] + slack) return false;
  return true;
}

void homodyne_round_trip(Verdict& v) {
  const cv::FockSpace f{32};
  const TomographicSystem sys = cv::homodyne_system(f, cv::polar_grid(6.0, 48, 64));
  double worst = 1.0;
  for (cplx beta : {cplx(0.0), cplx(0.5), cplx(1.0), cplx(0.0, 0.7), cplx(-0.6, 0.6),
                    std::polar(1.0, 2.0)}) {
    const DensityMatrix rho = DensityMatrix::pure(cv::coherent_state(f, beta));
    worst = std::min(worst, fidelity(rho, roundtrip(sys, rho.op()).reconstructed));
  }
  const DensityMatrix one = DensityMatrix::pure(cv::fock_state(f, 1));
  const double f_one = fidelity(one, roundtrip(sys, one.op()).reconstructed);
  v.detail << "min coherent fidelity " << worst << ", |1> fidelity " << f_one << "; R-ladder hs:";
  v.require(worst >= 0.999, "coherent fidelity >= 0.999");
  v.require(f_one >= 0.995, "|1> fidelity >= 0.995");

  for (const DensityMatrix& rho : {DensityMatrix::pure(cv::coherent_state(f, 1.0)), one}) {
    std::vector<double> errs;
    for (const cv::LadderPoint& pt : cv::homodyne_ladder(rho, {3.0, 4.0, 5.0, 6.0}, 48, 64)) {
      errs.push_back(pt.hs_error);
      v.detail << " " << pt.hs_error;
    }
    v.detail << ";";
    v.require(nonincreasing(errs), "R-ladder monotone");
  }
}

void probe_admissibility(Verdict& v) {
  const cv::CvAdmissibility a = cv::admissibility({64}, 4.0);
  const double rel = std::abs(a.generic.real() - a.analytic) / a.analytic;
  v.detail << "d=64 Delta=4: C=" << a.generic.real() << " analytic=" << a.analytic << " rel=" << rel;
  v.require(rel <= 1e-4 && std::abs(a.generic.imag()) <= 1e-4 * a.analytic, "single-mode relative 1e-4");

  // Two modes at a probe width where the truncation factor is negligible, so
  // the product constant sits in the Delta^2 regime.
  const double delta = 0.5;
  const cv::FockSpace mode{8};
  const std::vector<cv::FockSpace> modes{mode, mode};
  const cv::PolarGrid g = cv::admissibility_grid(mode, delta);
  const TomographicSystem two = cv::multimode_system(modes, {g, g});
  const cplx c2 =
      singular_admissibility(two, Operator::identity(two.dim()), cv::multimode_probe(modes, delta));
  const double single = cv::admissibility(mode, delta).analytic;
  const double rel_product = std::abs(c2 - cplx(single * single)) / (single * single);
  const double rel_square = std::abs(c2 - cplx(delta * delta)) / (delta * delta);
  v.detail << "; two-mode d=8 Delta=0.5: C=" << c2.real() << " product-of-analytic rel=" << rel_product
           << " vs Delta^2 rel=" << rel_square;
  v.require(rel_product <= 1e-4, "two-mode product relative 1e-4");
  v.require(rel_square <= 1e-3, "two-mode Delta^2 regime within 1e-3");
}

void q_function(Verdict& v) {
  const cv::FockSpace f{32};
  const DensityMatrix vac = DensityMatrix::pure(cv::fock_state(f, 0));
  double worst = 0.0;
  for (double r = 0.0; r <= 2.0 + 1e-12; r += 0.25) {
    for (double phi = 0.0; phi < 2.0 * std::numbers::pi; phi += 0.7) {
      worst = std::max(worst, std::abs(cv::qfunction(vac, std::polar(r, phi)) - std::exp(-r * r)));
    }
  }
  const cv::PolarGrid disc = cv::polar_grid(6.0, 64, 32);
  double total = 0.0;
  for (std::size_t i = 0; i < disc.grid.size(); ++i) {
    const auto x = disc.grid.coords(i);
    total += disc.grid.weight(i) * cv::qfunction(vac, cplx(x[0], x[1]));
  }
  v.detail << "max |Q - e^{-|a|^2}| on |a|<=2: " << worst << "; (1/pi) int Q over R=6 disc: " << total;
  v.require(worst <= 1e-8, "Q matches e^{-|a|^2} within 1e-8");
  v.require(std::abs(total - 1.0) <= 1e-3, "disc normalization within 1e-3");
}

// ---------------------------------------------------------------- AC8

void symplectic_marginals(Verdict& v) {
  const cv::FockSpace f{24};
  const DensityMatrix vac = DensityMatrix::pure(cv::fock_state(f, 0));
  std::vector<double> xs;
  for (int i = -80; i <= 80; ++i) xs.push_back(i / 20.0);
  double sup = 0.0;
  for (auto [mu, nu] : std::vector<std::pair<double, double>>{{1, 0}, {0, 1}, {0.6, 0.8}, {1.5, -0.5},
                                                              {0.3, 2.0}}) {
    const double var = (mu * mu + nu * nu) / 2.0;
    const std::vector<double> w = symplectic::marginal(vac, mu, nu, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double gauss = std::exp(-xs[i] * xs[i] / (2 * var)) / std::sqrt(2 * std::numbers::pi * var);
      sup = std::max(sup, std::abs(w[i] - gauss));
    }
  }
  double consistency = 0.0;
  for (const DensityMatrix& rho :
       {vac, DensityMatrix::pure(cv::coherent_state(f, cplx(0.5, -0.3))), random_state(6, 8)}) {
    for (auto [mu, nu] : std::vector<std::pair<double, double>>{{1, 0}, {0.6, 0.8}}) {
      consistency =
          std::max(consistency, symplectic::marginal_wigner_consistency(rho, mu, nu).residual);
    }
  }
  v.detail << "vacuum sup error " << sup << "; consistency residual " << consistency;
  v.require(sup <= 1e-4, "vacuum marginal sup <= 1e-4");
  v.require(consistency <= 1e-3, "marginal-Wigner consistency <= 1e-3");

  const cv::FockSpace small{16};
  const DensityMatrix vac16 = DensityMatrix::pure(cv::fock_state(small, 0));
  const std::vector<double> deltas{1.0, 2.0, 4.0, 8.0};
  std::vector<double> fids;
  v.detail << "; symmetric delta ladder fidelity:";
  for (const auto& pt : symplectic::delta_ladder(vac16, deltas)) {
    fids.push_back(pt.fidelity);
    v.detail << " " << pt.fidelity;
  }
  v.detail << "; as_printed:";
  for (const auto& pt :
       symplectic::delta_ladder(vac16, deltas, symplectic::KernelConvention::as_printed)) {
    v.detail << " " << pt.fidelity;
  }
  std::vector<double> neg(fids.size());
  std::transform(fids.begin(), fids.end(), neg.begin(), [](double x) { return -x; });
  v.require(nonincreasing(neg), "fidelity monotone in delta");
  v.require(fids.back() >= 0.98, "fidelity >= 0.98 on the ladder");
}

// ---------------------------------------------------------------- AC9

void su11_trend(Verdict& v) {
  const su11::DiscreteSeriesRep rep{1.0, 10};
  const auto ladder = su11::biorthogonality_ladder(rep, {2.0, 4.0, 6.0});
  std::vector<double> gaps;
  v.detail << "diag (0,0,0,0) over theta_max 2/4/6:";
  for (const auto& pt : ladder) {
    gaps.push_back(std::abs(pt.diag_value - cplx(1.0)));
    v.detail << " " << pt.diag_value.real() << (pt.diag_value.imag() < 0 ? "" : "+")
             << pt.diag_value.imag() << "i";
  }
  v.detail << "; off-diagonal max " << ladder.back().offdiag_max;
  v.require(nonincreasing(gaps), "diagonal approaches 1 monotonically");
  v.require(gaps.back() <= 0.05, "final diagonal gap <= 0.05");
  v.require(ladder.back().offdiag_max <= 0.05, "off-diagonal <= 0.05");

  const cplx c = su11::thermal_admissibility({1.0, 32}, 0.5, su11::su_grid(6.0));
  const double rel = std::abs(c - cplx(2.0)) / 2.0;
  v.detail << "; thermal C(b=0.5, cutoff 32) = " << c.real() << (c.imag() < 0 ? "" : "+") << c.imag()
           << "i, target 2, rel " << rel;
  v.require(rel <= 0.05, "thermal admissibility within 5% of 1/(1-b)");
}

// ---------------------------------------------------------------- AC10

namespace fs = std::filesystem;

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void cli_contract(Verdict& v) {
  const fs::path dir = fs::temp_directory_path() / "coorbit-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string exe = COORBIT_CLI_PATH;
  const auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
  const std::string quiet = " >/dev/null 2>&1";

  std::ofstream(dir / "spin.json") << R"({"system":"spin","params":{"two_s":3},
    "state":{"kind":"random","seed":42,"rank":2}})";
  std::ofstream(dir / "dps.json") << R"({"system":"dps","params":{"N":4}})";
  std::ofstream(dir / "tiny.json") << R"({"system":"homodyne","params":{"d":8,"R":1.0},
    "state":{"kind":"coherent","re":0.5},"tolerances":{"hs_error":1e-3}})";

  struct Pair {
    std::string args;
    std::string a, b;
  };
  const std::vector<Pair> runs{
      {"state make --system dps --seed 42 --out", "s1.json", "s2.json"},
      {"tomo run --config " + q(dir / "spin.json") + " --out", "r1.json", "r2.json"},
      {"emit wigner --config " + q(dir / "dps.json") + " --out", "w1.csv", "w2.csv"},
      {"emit symbols --config " + q(dir / "spin.json") + " --out", "y1.csv", "y2.csv"},
  };
  int identical = 0;
  for (const Pair& r : runs) {
    const int c1 = shell(exe + " " + r.args + " " + q(dir / r.a) + quiet);
    const int c2 = shell(exe + " " + r.args + " " + q(dir / r.b) + quiet);
    const std::string x = slurp(dir / r.a), y = slurp(dir / r.b);
    const bool same = c1 == 0 && c2 == 0 && !x.empty() && x == y;
    identical += same;
    v.require(same, "byte-identical: " + r.args);
  }
  const int tiny = shell(exe + " tomo run --config " + q(dir / "tiny.json") + quiet);
  const int strict = shell(exe + " tomo run --system dps --tolerance 0" + quiet);
  const int bad = shell(exe + " tomo run --system qutrit" + quiet);
  v.detail << identical << "/" << runs.size() << " output pairs identical; exit codes: tiny R " << tiny
           << ", zero tolerance " << strict << ", bad system " << bad;
  v.require(tiny == 2, "tiny-R homodyne exits 2");
  v.require(strict == 2, "zero tolerance exits 2");
  v.require(bad == 1, "config error exits 1");
  fs::remove_all(dir);
}

const std::vector<Criterion> kCriteria{
    {1, "discrete phase-space exactness", 5, discrete_exactness},
    {2, "Parseval frame bounds", 2, parseval_bounds},
    {3, "spin Moyal exact reconstruction", 5, spin_reconstruction},
    {4, "tracial Legendre identity", 2, tracial_identity},
    {5, "homodyne truncated round trip", 60, homodyne_round_trip},
    {6, "probe-vector admissibility", 10, probe_admissibility},
    {7, "Q-function", 5, q_function},
    {8, "symplectic marginals", 120, symplectic_marginals},
    {9, "SU(1,1) biorthogonality trend", 60, su11_trend},
    {10, "CLI determinism and exit codes", 5, cli_contract},
};

bool run_one(const Criterion& c) {
  Verdict v;
  v.detail.precision(3);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(secs <= c.budget_s, "runtime budget");
  std::printf("AC%-2d %s  %s: %s (%.2f s / %.0f s)\n", c.id, v.pass ? "PASS" : "FAIL", c.name,
              v.detail.str().c_str(), secs, c.budget_s);
  std::fflush(stdout);
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coorbit acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool ok = true;
  for (const Criterion& c : kCriteria) {
    if (only == 0 || only == c.id) ok = run_one(c) && ok;
  }
  return ok ? 0 : 1;
}
