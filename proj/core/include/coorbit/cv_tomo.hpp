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

#ifndef COORBIT_CV_TOMO_HPP
#define COORBIT_CV_TOMO_HPP

#include <vector>

#include "coorbit/frame.hpp"
#include "coorbit/opalg.hpp"

namespace coorbit::cv {

/// Fock levels 0 .. d-1 with a|n> = sqrt(n)|n-1>.
struct FockSpace {
  int d = 2;
};

/// Extra levels used when a truncated product or exponential would otherwise
/// see the cutoff.
inline constexpr int kPadding = 16;

Operator annihilation(FockSpace f);
Operator number(FockSpace f);
/// Parity (-1)^{a^dagger a}.
Operator parity(FockSpace f);

/// Truncation of D(alpha) = exp(alpha a^dagger - conj(alpha) a): associated
/// Laguerre closed form for |alpha| > 0.5, padded exponential below that.
Operator displacement(FockSpace f, cplx alpha);

/// exp(alpha a^dagger - conj(alpha) a) at dimension d + kPadding, cropped to d.
Operator displacement_padded_exp(FockSpace f, cplx alpha);

/// ||D^dagger D - I||_HS for the truncated displacement.
double displacement_leak(FockSpace f, cplx alpha);

enum class OrderingKind { weyl, normal, antinormal, husimi, standard, antistandard };

struct Ordering {
  OrderingKind kind = OrderingKind::weyl;
  double mu = 1.1276259652063807;   // cosh(0.5)
  double nu = 0.52109530549374738;  // sinh(0.5)
};

/// Ordered displacement U(alpha), with xi = sqrt(2) Im(alpha), eta = -sqrt(2) Re(alpha):
///   weyl         D(alpha)
///   normal       exp(alpha a^dagger) exp(-conj(alpha) a)
///   antinormal   exp(-conj(alpha) a) exp(alpha a^dagger)
///   husimi       exp(-conj(alpha) b) exp(alpha b^dagger), b = mu a + nu a^dagger
///   standard     exp(i xi q) exp(i eta p)
///   antistandard exp(i eta p) exp(i xi q)
/// Evaluated through the closed-form rescaling of a single displacement.
Operator ordered_displacement(FockSpace f, cplx alpha, const Ordering& ordering);

/// Same operator assembled literally as a product of the two exponentials at
/// padded dimension, then cropped.
Operator ordered_displacement_product(FockSpace f, cplx alpha, const Ordering& ordering);

/// Tr(rho U(alpha)^dagger).
cplx char_function(const DensityMatrix& rho, cplx alpha, const Ordering& ordering = {});

/// X_phi = (a^dagger e^{i phi} + a e^{-i phi}) / 2.
Operator quadrature_operator(FockSpace f, double phi);

/// Gauss-Legendre radius on [0, R] times uniform angle. Node coordinates are
/// (Re alpha, Im alpha), weights r dr dphi / pi, so the total weight is R^2.
struct PolarGrid {
  double R = 0.0;
  int n_r = 0;
  int n_phi = 0;
  IndexGrid grid;
};

enum class PolarForm {
  alpha,      // alpha = r e^{i phi}, r in [0, R]
  quadrature  // alpha = (i/2) k e^{i phi}, k in [0, 2R], weight |k|/4 dk dphi / pi
};

PolarGrid polar_grid(double R, int n_r, int n_phi, PolarForm form = PolarForm::alpha);

/// Analysis = synthesis = D(alpha) on the grid, b0 = I, l0 = trace, left
/// action, P = 1.
TomographicSystem homodyne_system(FockSpace f, const PolarGrid& grid);

Vector fock_state(FockSpace f, int n);
/// Truncated coherent state, renormalized.
Vector coherent_state(FockSpace f, cplx beta);
/// Truncated thermal state with mean occupation nbar, renormalized.
DensityMatrix thermal_state(FockSpace f, double nbar);

/// p0 = int |alpha><alpha| e^{-|alpha|^2/Delta} d^2alpha/pi, diagonal with
/// entries (Delta/(Delta+1))^{n+1}.
Operator probe_vector(FockSpace f, double delta);

struct CvAdmissibility {
  cplx generic;     // singular_admissibility on the homodyne system
  double direct;    // radial quadrature of Tr(p0 D^dagger) Tr(D)
  double analytic;  // Delta (1 - (Delta/(Delta+1))^d)
};

/// Default grid for the probe integral: radially symmetric integrand, so many
/// radial and few angular nodes.
PolarGrid admissibility_grid(FockSpace f, double delta);

CvAdmissibility admissibility(FockSpace f, double delta, const PolarGrid& grid);
CvAdmissibility admissibility(FockSpace f, double delta);

struct DisplacedParity {
  Operator value;     // quadrature of int d^2xi/pi D(xi) e^{alpha conj(xi) - conj(alpha) xi}
  cplx fitted_scale;  // c minimizing ||value - c D(2 alpha) Pi||
  double residual;    // ||value - c D(2 alpha) Pi|| / ||value||
  double parity_leak; // ||(value - Pi' value Pi') / 2|| / ||value||, Pi' = D(alpha) Pi D(alpha)^dagger
};

/// Quadrature over xi with |xi| <= xi_cutoff at padded dimension.
DisplacedParity displaced_parity(FockSpace f, cplx alpha, double xi_cutoff = 6.0, int n_r = 96,
                                 int n_phi = 96);

/// 2 D(2 alpha) Pi, built at padded dimension.
Operator displaced_parity_closed(FockSpace f, cplx alpha);

/// W(alpha) = Tr(rho 2 D(2 alpha) Pi), normalized so that int W d^2alpha/pi = 1.
double wigner_function(const DensityMatrix& rho, cplx alpha);

/// sum_i w_i W(alpha_i) 2 D(2 alpha_i) Pi over the grid.
Operator wigner_expansion(const DensityMatrix& rho, const PolarGrid& grid);

/// <alpha|rho|alpha> with the renormalized truncated coherent state.
double qfunction(const DensityMatrix& rho, cplx alpha);

/// Tensor-product homodyne system on the product grid (at most two modes).
/// Node coordinates concatenate the per-mode (Re, Im) pairs.
TomographicSystem multimode_system(const std::vector<FockSpace>& modes,
                                   const std::vector<PolarGrid>& grids);

/// p0 (x) p0 (x) ...
Operator multimode_probe(const std::vector<FockSpace>& modes, double delta);

struct LadderPoint {
  double R;
  double hs_error;
  double fidelity;
};

/// Round trip of rho over polar grids of increasing radius.
std::vector<LadderPoint> homodyne_ladder(const DensityMatrix& rho, const std::vector<double>& radii,
                                         int n_r, int n_phi);

}  // namespace coorbit::cv

#endif  // COORBIT_CV_TOMO_HPP
