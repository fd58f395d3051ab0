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

#include "coorbit/symplectic.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "coorbit/quadrature.hpp"
#include "test_support.hpp"

namespace coorbit::symplectic {
namespace {

using coorbit::testing::random_state;

double gaussian(double x, double mean, double var) {
  return std::exp(-0.5 * (x - mean) * (x - mean) / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

DensityMatrix vacuum(int d) { return DensityMatrix::pure(cv::fock_state({d}, 0)); }

TEST(Quadratures, CanonicalCommutatorInTheInterior) {
  const FockSpace f{12};
  const Matrix q = position(f).matrix(), p = momentum(f).matrix();
  const Matrix c = q * p - p * q;
  EXPECT_LT((c - cplx(0.0, 1.0) * Matrix::Identity(12, 12)).topLeftCorner(11, 11).norm(), 1e-13);
}

TEST(HermiteFunctions, GroundStateAndOrthonormality) {
  EXPECT_NEAR(hermite_functions(1, 0.7)[0],
              std::pow(std::numbers::pi, -0.25) * std::exp(-0.245), 1e-15);
  EXPECT_TRUE(hermite_functions(0, 1.0).empty());
  const QuadratureRule gl = gauss_legendre(200, -14.0, 14.0);
  const int n = 12;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
    const auto psi = hermite_functions(n, gl.nodes[k]);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) gram(a, b) += gl.weights[k] * psi[a] * psi[b];
    }
  }
  EXPECT_LT((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Marginal, VacuumIsCentredGaussian) {
  const DensityMatrix rho = vacuum(16);
  const std::vector<double> xs = {-4.0, -2.5, -1.0, 0.0, 0.3, 1.7, 4.0};
  for (auto [mu, nu] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {0.6, -1.3}, {2.0, 0.5}}) {
    const auto w = marginal(rho, mu, nu, xs);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      EXPECT_NEAR(w[j], gaussian(xs[j], 0.0, 0.5 * (mu * mu + nu * nu)), 1e-14);
    }
  }
}

TEST(Marginal, CoherentStateIsShiftedGaussian) {
  const cplx beta(0.6, -0.4);
  const DensityMatrix rho = DensityMatrix::pure(cv::coherent_state({40}, beta));
  const double mu = 0.8, nu = 1.1;
  const double mean = std::numbers::sqrt2 * (mu * beta.real() + nu * beta.imag());
  const std::vector<double> xs = {-2.0, -0.5, 0.0, 0.4, 1.5, 3.0};
  const auto w = marginal(rho, mu, nu, xs);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    EXPECT_NEAR(w[j], gaussian(xs[j], mean, 0.5 * (mu * mu + nu * nu)), 1e-12);
  }
}

TEST(Marginal, FockOneMatchesFirstHermiteFunction) {
  const DensityMatrix rho = DensityMatrix::pure(cv::fock_state({8}, 1));
  for (double x : {-1.5, 0.0, 0.8}) {
    const double psi1 = std::numbers::sqrt2 * x * std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    // Fock states are rotation invariant, so every unit direction agrees.
    EXPECT_NEAR(marginal(rho, 1.0, 0.0, {x})[0], psi1 * psi1, 1e-14);
    EXPECT_NEAR(marginal(rho, 0.6, 0.8, {x})[0], psi1 * psi1, 1e-14);
  }
}

TEST(Marginal, NormalizedForRandomStates) {
  const DensityMatrix rho = random_state(10, 9);
  const QuadratureRule gl = gauss_legendre(160, -12.0, 12.0);
  const auto w = marginal(rho, 0.7, -0.4, gl.nodes);
  double total = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) total += gl.weights[j] * w[j];
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Marginal, SpectralKdeIsACoarseApproximation) {
  const DensityMatrix rho = vacuum(32);
  const std::vector<double> xs = {-2.0, -1.0, 0.0, 1.0, 2.0};
  const auto w = marginal(rho, 1.0, 0.0, xs, MarginalMethod::spectral_kde);
  for (std::size_t j = 0; j < xs.size(); ++j) EXPECT_NEAR(w[j], gaussian(xs[j], 0.0, 0.5), 5e-2);
}

TEST(Marginal, RejectsZeroDirection) {
  EXPECT_THROW(marginal(vacuum(4), 0.0, 0.0, {0.0}), DomainError);
}

TEST(Kernel, ClosedFormMatchesExponentials) {
  const FockSpace f{8};
  for (auto conv : {KernelConvention::as_printed, KernelConvention::symmetric}) {
    for (auto [mu, nu] : {std::pair{0.3, -0.2}, {0.9, 0.4}, {-0.5, 1.1}}) {
      const Operator lit = kernel_K(f, 0.37, mu, nu, conv);
      const Operator closed = kernel_K_closed(f, 0.37, mu, nu, conv);
      EXPECT_LT((lit - closed).hs_norm(), 1e-8) << mu << " " << nu;
    }
  }
}

TEST(MarginalGrid, ValidatesParameters) {
  EXPECT_THROW(marginal_grid({4}, 0.0), DomainError);
  EXPECT_THROW(marginal_grid({4}, 1.0, 100, 63), DomainError);
  const MarginalGrid g = marginal_grid({4}, 2.0, 50, 16);
  EXPECT_EQ(g.x_nodes.size(), 50u);
  EXPECT_EQ(g.mu.size(), g.mn_weights.size());
}

TEST(Consistency, MarginalAgreesWithRadonTransformOfWigner) {
  for (const DensityMatrix& rho :
       {vacuum(12), DensityMatrix::pure(cv::coherent_state({12}, 0.5)), DensityMatrix::maximally_mixed(6)}) {
    EXPECT_LT(marginal_wigner_consistency(rho, 0.8, 0.6).residual, 1e-10);
  }
}

TEST(Reconstruction, VacuumFidelityFollowsRegularizerWidth) {
  // Gaussian damping of the vacuum characteristic function yields a thermal
  // state with fidelity delta^2 / (1 + delta^2).
  const auto ladder = delta_ladder(vacuum(12), {1.0, 2.0, 4.0});
  for (const LadderPoint& p : ladder) {
    EXPECT_NEAR(p.fidelity, p.delta * p.delta / (1.0 + p.delta * p.delta), 1e-3) << p.delta;
  }
  EXPECT_LT(ladder[0].fidelity, ladder[1].fidelity);
  EXPECT_LT(ladder[1].fidelity, ladder[2].fidelity);
}

TEST(Reconstruction, LiteralKernelConventionSaturates) {
  const auto symmetric = delta_ladder(vacuum(12), {4.0}, KernelConvention::symmetric);
  const auto literal = delta_ladder(vacuum(12), {4.0}, KernelConvention::as_printed);
  EXPECT_LT(literal[0].fidelity, 0.6);
  EXPECT_GT(symmetric[0].fidelity, 0.94);
}

}  // namespace
}  // namespace coorbit::symplectic
