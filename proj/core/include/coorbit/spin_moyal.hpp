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

#ifndef COORBIT_SPIN_MOYAL_HPP
#define COORBIT_SPIN_MOYAL_HPP

#include <vector>

#include "coorbit/frame.hpp"
#include "coorbit/opalg.hpp"

namespace coorbit::spin {

/// Spin s = two_s / 2 in the basis m = s, s-1, ..., -s.
struct SpinParams {
  int two_s = 1;

  double s() const { return 0.5 * two_s; }
  Index dim() const { return two_s + 1; }
};

/// Wigner 3j symbol via the Racah sum. Arguments must be integers or half
/// integers; returns 0 when a selection rule fails.
double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3);

Operator jz(SpinParams p);
Operator jplus(SpinParams p);
Operator jx(SpinParams p);
Operator jy(SpinParams p);

/// U_n = exp(-i theta (-sin(phi) Jx + cos(phi) Jy)), mapping |s, n_z> to
/// |s, n> up to a phase. At theta = pi the rotation axis is y.
Operator rotation_operator(SpinParams p, double theta, double phi);

/// Spin coherent state U_n |s, s>.
Vector coherent_state(SpinParams p, double theta, double phi);

/// Delta_n = |s, n><s, n|.
Operator kernel_direct(SpinParams p, double theta, double phi);

/// Eigenvalues of the dual kernel in the rotated |m, n> basis, m = s, ..., -s:
///   sum_l (2l+1)/(2s+1) (-1)^(s-m) (s l s; m 0 -m) / (s l s; s 0 -s).
std::vector<double> dual_coefficients(SpinParams p);

/// Delta^n = U_n diag(dual_coefficients) U_n^dagger.
Operator kernel_dual(SpinParams p, double theta, double phi);

/// sum_{l <= 2s} (2l+1)/(2s+1) P_l(cos theta) = Tr(Delta_{n_z} Delta^n).
double tracial_overlap(SpinParams p, double theta);

/// Gauss-Legendre nodes in cos(theta) times uniform phi, weights scaled by
/// (2s+1)/(4 pi). Node coordinates are (theta, phi), theta-major.
struct SphereGrid {
  int n_theta = 0;
  int n_phi = 0;
  IndexGrid grid;
};

/// Defaults to (2s+1) x (4s+2) nodes.
SphereGrid sphere_grid(SpinParams p, int n_theta = 0, int n_phi = 0);

/// True when the product rule integrates degree-4s band-limited functions
/// exactly: n_theta >= 2s+1 and n_phi >= 4s+1.
bool is_exact(SpinParams p, const SphereGrid& grid);

/// Analysis Delta^n, synthesis Delta_n, b0 = |s, n_z><s, n_z|, L0 = Delta^{n_z},
/// adjoint action of U_n, P = 1. Throws DomainError for under-resolved grids
/// unless allow_underresolved.
TomographicSystem moyal_system(SpinParams p, const SphereGrid& grid,
                               bool allow_underresolved = false);

/// Samples Tr(rho Delta^n) over the grid.
SampleVector symbols(SpinParams p, const DensityMatrix& rho, const SphereGrid& grid);

}  // namespace coorbit::spin

#endif  // COORBIT_SPIN_MOYAL_HPP
