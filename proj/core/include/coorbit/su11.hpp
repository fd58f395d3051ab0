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

#ifndef COORBIT_SU11_HPP
#define COORBIT_SU11_HPP

#include <vector>

#include "coorbit/frame.hpp"
#include "coorbit/opalg.hpp"

namespace coorbit::su11 {

/// Discrete series at Bargmann index k, truncated to levels r = 0 .. cutoff-1.
struct DiscreteSeriesRep {
  double k = 1.0;
  int cutoff = 8;
};

/// Levels added before exponentiating; results are cropped back to the cutoff.
inline constexpr int kPadding = 8;

struct Generators {
  Operator kplus, kminus, kz;
  /// Mean diagonal of Kz^2 - (K+K- + K-K+)/2 over all levels but the top one.
  double casimir = 0.0;
  /// Largest deviation of that diagonal from its mean (same block).
  double casimir_spread = 0.0;
  /// k(k - 1), the value for this realization, and k(k + 1) for comparison.
  double casimir_expected = 0.0;
  double casimir_alternative = 0.0;
};

/// Kz|r> = (r + k)|r>, K+|r> = sqrt((r + 1)(r + 2k))|r + 1>, K- = K+^dagger.
Generators generators(DiscreteSeriesRep rep);

enum class BraceBinding {
  /// {(-1)^Kz exp(theta(e^{-i phi} K- - e^{i phi} K+)), Kz}_+
  as_printed,
  /// (-1)^Kz {exp(theta(e^{-i phi} K- - e^{i phi} K+)), Kz}_+
  parity_outside,
};

/// Analysis operator B(theta, phi), (-1)^Kz = exp(i pi Kz).
Operator analysis_B(DiscreteSeriesRep rep, double theta, double phi,
                    BraceBinding binding = BraceBinding::as_printed);

/// u = exp(-i (theta/2) (e^{-i phi} K+ + e^{i phi} K-)).
Operator rotation(DiscreteSeriesRep rep, double theta, double phi);

/// pi(theta, phi) = u^dagger Kz u.
Operator synthesis_pi(DiscreteSeriesRep rep, double theta, double phi);

/// Gauss-Legendre theta on [0, theta_max] weighted by tanh(theta), uniform
/// phi, overall factor 1/pi. Node coordinates are (theta, phi).
struct SuGrid {
  double theta_max = 0.0;
  int n_theta = 0;
  int n_phi = 0;
  IndexGrid grid;
};

SuGrid su_grid(double theta_max, int n_theta = 64, int n_phi = 32);

struct Biorthogonality {
  cplx value;
  /// Set when an index lies within two levels of the cutoff.
  bool boundary = false;
};

/// int dmu <m|B^dagger|n> <l|pi|k>.
Biorthogonality biorthogonality_check(DiscreteSeriesRep rep, const SuGrid& grid, int m, int n,
                                      int k, int l,
                                      BraceBinding binding = BraceBinding::as_printed);

struct BiorthogonalityLadderPoint {
  double theta_max;
  cplx diag_value;     // (0, 0, 0, 0)
  double offdiag_max;  // max |value| over the off-diagonal index set
};

/// Off-diagonal set: all (m, n, k, l) in {0, 1}^4 with (m, n) != (k, l).
std::vector<BiorthogonalityLadderPoint> biorthogonality_ladder(
    DiscreteSeriesRep rep, const std::vector<double>& theta_max, int n_theta = 64, int n_phi = 32,
    BraceBinding binding = BraceBinding::as_printed);

/// Analysis y = B^dagger (so that samples are Tr(rho B)), synthesis pi,
/// vacuum Kz with T(x) O = u^dagger O u, l0 = trace, P = 1.
TomographicSystem su11_system(DiscreteSeriesRep rep, const SuGrid& grid);

struct Su11Reconstruction {
  Operator reconstructed;
  /// Interior block: levels below cutoff - 2.
  double interior_residual = 0.0;
  double interior_fidelity = 0.0;
};

Su11Reconstruction reconstruct(const DensityMatrix& rho, DiscreteSeriesRep rep, const SuGrid& grid);

/// p0 = sum_r b^r |r><r|, 0 < b < 1.
Operator thermal_probe(DiscreteSeriesRep rep, double b);

/// Thermal state with mean occupation nbar, b = nbar / (1 + nbar), normalized on the cutoff.
DensityMatrix thermal_state(DiscreteSeriesRep rep, double nbar);

/// singular_admissibility(su11_system, Kz, thermal_probe); compare with 1/(1-b).
cplx thermal_admissibility(DiscreteSeriesRep rep, double b, const SuGrid& grid);

}  // namespace coorbit::su11

#endif  // COORBIT_SU11_HPP
