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

#ifndef COORBIT_SYMPLECTIC_HPP
#define COORBIT_SYMPLECTIC_HPP

#include <vector>

#include <Eigen/Dense>

#include "coorbit/cv_tomo.hpp"
#include "coorbit/opalg.hpp"

namespace coorbit::symplectic {

using cv::FockSpace;

// Convention: q = (a + a^dagger)/sqrt(2), p = (a - a^dagger)/(i sqrt(2)), [q, p] = i.

Operator position(FockSpace f);
Operator momentum(FockSpace f);

/// Hermite functions psi_0 .. psi_{n-1} at x.
std::vector<double> hermite_functions(int n, double x);

enum class MarginalMethod {
  /// Exact density of mu q + nu p from Hermite functions of the rotated quadrature.
  hermite,
  /// Spectrum of the truncated mu q + nu p smoothed by a Gaussian kernel of
  /// width half the mean eigenvalue gap.
  spectral_kde,
};

/// w(X, mu, nu) = Tr(rho delta(X - mu q - nu p)) at the given X values.
std::vector<double> marginal(const DensityMatrix& rho, double mu, double nu,
                             const std::vector<double>& x_nodes,
                             MarginalMethod method = MarginalMethod::hermite);

enum class KernelConvention {
  /// (1/2pi) e^{iX} e^{i mu nu} e^{-i nu p} e^{-i mu q}
  as_printed,
  /// (1/2pi) e^{iX} e^{-i(mu q + nu p)}; differs from as_printed by e^{-3 i mu nu / 2}
  symmetric,
};

/// The kernel assembled literally from matrix exponentials at padded dimension.
Operator kernel_K(FockSpace f, double X, double mu, double nu,
                  KernelConvention convention = KernelConvention::as_printed);

/// Same kernel through the closed form e^{-i(mu q + nu p)} = D((nu - i mu)/sqrt(2)).
Operator kernel_K_closed(FockSpace f, double X, double mu, double nu,
                         KernelConvention convention = KernelConvention::as_printed);

/// Triple quadrature grid. X = lambda x with lambda = sqrt(mu^2 + nu^2), so
/// the x nodes are shared by every direction. (mu, nu) is a Gauss-Legendre
/// product on [-L, L]^2 and each node carries the Gaussian regularizer
/// exp(-(mu^2 + nu^2) / (2 delta^2)).
struct MarginalGrid {
  double delta = 1.0;
  std::vector<double> x_nodes, x_weights;
  std::vector<double> mu, nu, mn_weights;  // flattened (mu, nu) product
};

/// Default cutoffs follow the truncation d: x in +-(sqrt(2d+1) + 5), L from
/// the decay of the characteristic function and the regularizer.
MarginalGrid marginal_grid(FockSpace f, double delta, int n_x = 200, int n_mn = 64);

/// Marginal samples, one row per (mu, nu) node, one column per x node.
using MarginalTable = Eigen::MatrixXd;

MarginalTable sample_marginals(const DensityMatrix& rho, const MarginalGrid& grid);

/// sum over (X, mu, nu) nodes of weight * R_delta * w * K.
Operator reconstruct_from_marginals(const MarginalTable& w, const MarginalGrid& grid, FockSpace f,
                                    KernelConvention convention = KernelConvention::symmetric);

Operator reconstruct(const DensityMatrix& rho, const MarginalGrid& grid,
                     KernelConvention convention = KernelConvention::symmetric);

struct LadderPoint {
  double delta;
  double hs_error;
  double fidelity;
};

std::vector<LadderPoint> delta_ladder(const DensityMatrix& rho, const std::vector<double>& deltas,
                                      KernelConvention convention = KernelConvention::symmetric);

struct Consistency {
  double residual;  // max |w_radon - w_marginal| over the X nodes
  std::vector<double> x_nodes;
  std::vector<double> from_wigner;
  std::vector<double> from_marginal;
};

/// Projects the Wigner function (sampled on a Cartesian grid) onto the
/// (mu, nu) direction through its Fourier slice, inverts the 1D transform and
/// compares with marginal() on |X| <= x_max.
Consistency marginal_wigner_consistency(const DensityMatrix& rho, double mu, double nu,
                                        double x_max = 4.0);

}  // namespace coorbit::symplectic

#endif  // COORBIT_SYMPLECTIC_HPP
