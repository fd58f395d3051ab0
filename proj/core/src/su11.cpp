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

#include "coorbit/su11.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "coorbit/parallel.hpp"
#include "coorbit/quadrature.hpp"

namespace coorbit::su11 {

namespace {

void require_rep(DiscreteSeriesRep rep) {
  if (!(rep.k > 0.0)) throw DomainError("su11: Bargmann index k must be positive");
  if (rep.cutoff < 2) throw DomainError("su11: cutoff must be at least 2");
}

struct Raw {
  Matrix kp, km, kz;
};

Raw raw_generators(double k, int n) {
  Raw g{Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (int r = 0; r < n; ++r) {
    g.kz(r, r) = r + k;
    if (r + 1 < n) g.kp(r + 1, r) = std::sqrt((r + 1.0) * (r + 2.0 * k));
  }
  g.km = g.kp.adjoint();
  return g;
}

Matrix crop(const Matrix& m, int n) { return m.topLeftCorner(n, n); }

Matrix padded_rotation(const Raw& g, double theta, double phi) {
  const cplx e = std::polar(1.0, phi);
  return matrix_exp(Matrix(cplx(0.0, -0.5 * theta) * (std::conj(e) * g.kp + e * g.km)));
}

}  // namespace

Generators generators(DiscreteSeriesRep rep) {
  require_rep(rep);
  const Raw g = raw_generators(rep.k, rep.cutoff);
  Generators out{Operator(g.kp), Operator(g.km), Operator(g.kz)};
  const Matrix c = g.kz * g.kz - 0.5 * (g.kp * g.km + g.km * g.kp);
  const int inner = rep.cutoff - 1;
  double mean = 0.0;
  for (int r = 0; r < inner; ++r) mean += c(r, r).real();
  mean /= inner;
  double spread = 0.0;
  for (int r = 0; r < inner; ++r) spread = std::max(spread, std::abs(c(r, r).real() - mean));
  out.casimir = mean;
  out.casimir_spread = spread;
  out.casimir_expected = rep.k * (rep.k - 1.0);
  out.casimir_alternative = rep.k * (rep.k + 1.0);
  return out;
}

Operator analysis_B(DiscreteSeriesRep rep, double theta, double phi, BraceBinding binding) {
  require_rep(rep);
  const int pad = rep.cutoff + kPadding;
  const Raw g = raw_generators(rep.k, pad);
  const cplx e = std::polar(1.0, phi);
  const Matrix boost = matrix_exp(Matrix(theta * (std::conj(e) * g.km - e * g.kp)));
  Vector sign(pad);
  for (int r = 0; r < pad; ++r) sign(r) = std::polar(1.0, std::numbers::pi * (r + rep.k));
  Matrix b;
  if (binding == BraceBinding::as_printed) {
    const Matrix x = sign.asDiagonal() * boost;
    b = x * g.kz + g.kz * x;
  } else {
    b = sign.asDiagonal() * (boost * g.kz + g.kz * boost);
  }
  return Operator(crop(b, rep.cutoff));
}

Operator rotation(DiscreteSeriesRep rep, double theta, double phi) {
  require_rep(rep);
  const Raw g = raw_generators(rep.k, rep.cutoff + kPadding);
  return Operator(crop(padded_rotation(g, theta, phi), rep.cutoff));
}

Operator synthesis_pi(DiscreteSeriesRep rep, double theta, double phi) {
  require_rep(rep);
  const Raw g = raw_generators(rep.k, rep.cutoff + kPadding);
  const Matrix u = padded_rotation(g, theta, phi);
  return Operator(crop(u.adjoint() * g.kz * u, rep.cutoff));
}

SuGrid su_grid(double theta_max, int n_theta, int n_phi) {
  if (!(theta_max > 0.0) || n_theta < 1 || n_phi < 1) {
    throw DomainError("su_grid: need theta_max > 0 and positive node counts");
  }
  const QuadratureRule gl = gauss_legendre(n_theta, 0.0, theta_max);
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  for (int a = 0; a < n_theta; ++a) {
    for (int b = 0; b < n_phi; ++b) {
      nodes.push_back({gl.nodes[a], dphi * b});
      weights.push_back(gl.weights[a] * std::tanh(gl.nodes[a]) * dphi / std::numbers::pi);
    }
  }
  std::ostringstream id;
  id << "su11/theta_max=" << theta_max << "/" << n_theta << "x" << n_phi;
  return {theta_max, n_theta, n_phi, IndexGrid(id.str(), std::move(nodes), std::move(weights))};
}

namespace {

// Per-node <i|B|j> and <i|pi|j> for the requested low levels.
struct NodeBlocks {
  std::vector<Matrix> b, p;
};

NodeBlocks node_blocks(DiscreteSeriesRep rep, const IndexGrid& g, int levels, BraceBinding binding) {
  NodeBlocks out{std::vector<Matrix>(g.size()), std::vector<Matrix>(g.size())};
  parallel_for(g.size(), [&](std::size_t i) {
    out.b[i] = crop(analysis_B(rep, g.coords(i)[0], g.coords(i)[1], binding).matrix(), levels);
    out.p[i] = crop(synthesis_pi(rep, g.coords(i)[0], g.coords(i)[1]).matrix(), levels);
  });
  return out;
}

cplx contract(const NodeBlocks& blocks, const IndexGrid& g, int m, int n, int k, int l) {
  CompensatedScalar acc;
  for (std::size_t i = 0; i < g.size(); ++i) {
    acc.add(g.weight(i) * std::conj(blocks.b[i](n, m)) * blocks.p[i](l, k));
  }
  return acc.result();
}

}  // namespace

Biorthogonality biorthogonality_check(DiscreteSeriesRep rep, const SuGrid& grid, int m, int n,
                                      int k, int l, BraceBinding binding) {
  require_rep(rep);
  for (int idx : {m, n, k, l}) {
    if (idx < 0 || idx >= rep.cutoff) throw DomainError("biorthogonality_check: index out of range");
  }
  const int levels = std::max({m, n, k, l}) + 1;
  const NodeBlocks blocks = node_blocks(rep, grid.grid, levels, binding);
  const int edge = rep.cutoff - 2;
  return {contract(blocks, grid.grid, m, n, k, l),
          m >= edge || n >= edge || k >= edge || l >= edge};
}

std::vector<BiorthogonalityLadderPoint> biorthogonality_ladder(
    DiscreteSeriesRep rep, const std::vector<double>& theta_max, int n_theta, int n_phi,
    BraceBinding binding) {
  require_rep(rep);
  std::vector<BiorthogonalityLadderPoint> out;
  for (double tm : theta_max) {
    const SuGrid grid = su_grid(tm, n_theta, n_phi);
    const NodeBlocks blocks = node_blocks(rep, grid.grid, 2, binding);
    BiorthogonalityLadderPoint pt{tm, contract(blocks, grid.grid, 0, 0, 0, 0), 0.0};
    for (int code = 0; code < 16; ++code) {
      const int m = code & 1, n = (code >> 1) & 1, k = (code >> 2) & 1, l = (code >> 3) & 1;
      if (m == k && n == l) continue;
      pt.offdiag_max = std::max(pt.offdiag_max, std::abs(contract(blocks, grid.grid, m, n, k, l)));
    }
    out.push_back(pt);
  }
  return out;
}

TomographicSystem su11_system(DiscreteSeriesRep rep, const SuGrid& grid) {
  require_rep(rep);
  const IndexGrid& g = grid.grid;
  auto analysis = std::make_shared<CachedFamily>(g.size(), [&](std::size_t i) {
    return analysis_B(rep, g.coords(i)[0], g.coords(i)[1]).adjoint();
  });
  auto synthesis = std::make_shared<CachedFamily>(g.size(), [&](std::size_t i) {
    return synthesis_pi(rep, g.coords(i)[0], g.coords(i)[1]);
  });
  TomographicSystem::Parts parts;
  parts.name = "su11";
  parts.grid = g;
  parts.analysis = std::move(analysis);
  parts.synthesis = std::move(synthesis);
  parts.act = [rep](std::span<const double> x, const Operator& o) {
    const Operator u = rotation(rep, x[0], x[1]);
    return u.adjoint() * o * u;
  };
  parts.action_kind = ActionKind::adjoint;
  parts.vacuum = generators(rep).kz;
  parts.test_functional = Operator::identity(rep.cutoff);
  parts.normalization = 1.0;
  return TomographicSystem(std::move(parts));
}

Su11Reconstruction reconstruct(const DensityMatrix& rho, DiscreteSeriesRep rep, const SuGrid& grid) {
  if (rho.dim() != rep.cutoff) throw DimensionError("su11::reconstruct: dimension mismatch");
  const TomographicSystem sys = su11_system(rep, grid);
  RoundTrip rt = roundtrip(sys, rho.op());
  const int inner = rep.cutoff - 2;
  const Matrix rec = crop(rt.reconstructed.matrix(), inner);
  const Matrix ref = crop(rho.matrix(), inner);
  Su11Reconstruction out{std::move(rt.reconstructed), (rec - ref).norm(), 0.0};
  const double tr = ref.trace().real();
  if (tr > 0.0) {
    out.interior_fidelity = fidelity(DensityMatrix(Operator(Matrix(ref / tr))), Operator(rec));
  }
  return out;
}

Operator thermal_probe(DiscreteSeriesRep rep, double b) {
  require_rep(rep);
  if (!(b > 0.0 && b < 1.0)) throw DomainError("thermal_probe: b must lie in (0, 1)");
  Matrix m = Matrix::Zero(rep.cutoff, rep.cutoff);
  double w = 1.0;
  for (int r = 0; r < rep.cutoff; ++r, w *= b) m(r, r) = w;
  return Operator(std::move(m));
}

DensityMatrix thermal_state(DiscreteSeriesRep rep, double nbar) {
  if (!(nbar > 0.0)) throw DomainError("thermal_state: nbar must be positive");
  const Operator p = thermal_probe(rep, nbar / (1.0 + nbar));
  return DensityMatrix(p * cplx(1.0 / p.trace().real()));
}

cplx thermal_admissibility(DiscreteSeriesRep rep, double b, const SuGrid& grid) {
  const TomographicSystem sys = su11_system(rep, grid);
  return singular_admissibility(sys, sys.vacuum(), thermal_probe(rep, b));
}

}  // namespace coorbit::su11
