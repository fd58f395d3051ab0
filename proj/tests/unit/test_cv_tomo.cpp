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

#include "coorbit/cv_tomo.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace coorbit::cv {
namespace {

using coorbit::testing::random_state;

// exp(alpha a^dagger - conj(alpha) a) on a padded space, cropped to d.
Matrix padded_oracle(int d, cplx alpha, int padding) {
  const Matrix a = annihilation({d + padding}).matrix();
  const Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return matrix_exp(gen).topLeftCorner(d, d);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Ladder, AnnihilationAndNumber) {
  const FockSpace f{6};
  const Matrix a = annihilation(f).matrix();
  for (int n = 1; n < 6; ++n) EXPECT_DOUBLE_EQ(a(n - 1, n).real(), std::sqrt(double(n)));
  const Matrix comm = a * a.adjoint() - a.adjoint() * a;
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(comm(n, n).real(), 1.0, 1e-15);
  EXPECT_NEAR(comm(5, 5).real(), -5.0, 1e-14);  // truncation edge
  EXPECT_LT((number(f).matrix() - a.adjoint() * a).norm(), 1e-14);
  EXPECT_THROW(annihilation({0}), DomainError);
}

TEST(Displacement, MatchesPaddedExponential) {
  for (cplx alpha : {cplx(0.3, -0.2), cplx(1.2, 0.5), cplx(-0.7, 1.1)}) {
    EXPECT_LT(max_abs(displacement({8}, alpha).matrix() - padded_oracle(8, alpha, 48)), 1e-12)
        << alpha;
    EXPECT_LT(max_abs(displacement({8}, alpha).matrix() - displacement_padded_exp({8}, alpha).matrix()),
              1e-8)
        << alpha;
  }
  const cplx alpha(0.8, -0.6);
  EXPECT_LT(max_abs(displacement({32}, alpha).matrix() - padded_oracle(32, alpha, 48)), 1e-10);
}

TEST(Displacement, ActsOnVacuumAsCoherentAmplitudes) {
  const cplx alpha(0.6, 0.9);
  const Vector col = displacement({30}, alpha).matrix().col(0);
  double fact = 1.0;
  for (int n = 0; n < 30; ++n) {
    if (n > 0) fact *= n;
    const cplx expected = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) / std::sqrt(fact);
    EXPECT_NEAR(std::abs(col(n) - expected), 0.0, 1e-13) << n;
  }
}

TEST(Displacement, CompositionLawInTheInterior) {
  const cplx a(0.4, 0.3), b(-0.2, 0.5);
  const FockSpace f{48};
  const Matrix lhs = (displacement(f, a) * displacement(f, b)).matrix();
  const cplx phase = std::exp(0.5 * (a * std::conj(b) - std::conj(a) * b));
  const Matrix rhs = phase * displacement(f, a + b).matrix();
  EXPECT_LT(max_abs((lhs - rhs).topLeftCorner(12, 12)), 1e-12);
}

TEST(Displacement, LeakVanishesOnlyAtTheOrigin) {
  EXPECT_EQ(displacement_leak({16}, 0.0), 0.0);
  EXPECT_GT(displacement_leak({16}, 0.5), 0.0);
  EXPECT_GT(displacement_leak({16}, 1.0), displacement_leak({16}, 0.5));
}

TEST(Orderings, ClosedFormsMatchLiteralProducts) {
  const FockSpace f{8};
  const cplx alpha(0.3, 0.4);
  for (OrderingKind kind : {OrderingKind::weyl, OrderingKind::normal, OrderingKind::antinormal,
                            OrderingKind::husimi, OrderingKind::standard,
                            OrderingKind::antistandard}) {
    const Ordering o{kind};
    EXPECT_LT((ordered_displacement(f, alpha, o) - ordered_displacement_product(f, alpha, o)).hs_norm(),
              1e-9)
        << static_cast<int>(kind);
  }
}

TEST(Orderings, VacuumCharacteristicFunctions) {
  const DensityMatrix vac = DensityMatrix::pure(fock_state({24}, 0));
  const cplx alpha(0.7, -0.4);
  const double x = std::norm(alpha);
  EXPECT_NEAR(std::abs(char_function(vac, alpha, {OrderingKind::weyl}) - std::exp(-0.5 * x)), 0, 1e-13);
  EXPECT_NEAR(std::abs(char_function(vac, alpha, {OrderingKind::normal}) - 1.0), 0, 1e-13);
  EXPECT_NEAR(std::abs(char_function(vac, alpha, {OrderingKind::antinormal}) - std::exp(-x)), 0, 1e-13);
}

TEST(Orderings, HusimiRequiresUnitHyperbola) {
  Ordering bad{OrderingKind::husimi, 1.0, 0.5};
  EXPECT_THROW(ordered_displacement({4}, 0.1, bad), DomainError);
}

TEST(States, CoherentThermalFock) {
  const FockSpace f{40};
  const Vector c = coherent_state(f, cplx(1.0, 0.0));
  double fact = 1.0;
  for (int n = 0; n < 10; ++n) {
    if (n > 0) fact *= n;
    EXPECT_NEAR(std::norm(c(n)), std::exp(-1.0) / fact, 1e-14);
  }
  const DensityMatrix th = thermal_state(f, 0.5);
  EXPECT_NEAR((th.matrix() * number(f).matrix()).trace().real(), 0.5, 1e-10);
  EXPECT_THROW(fock_state({4}, 4), DomainError);
  EXPECT_THROW(probe_vector({4}, 0.0), DomainError);
}

TEST(PhaseSpace, WignerOfVacuumCoherentAndFockOne) {
  const FockSpace f{32};
  const DensityMatrix vac = DensityMatrix::pure(fock_state(f, 0));
  const DensityMatrix one = DensityMatrix::pure(fock_state(f, 1));
  const cplx beta(0.5, -0.3);
  const DensityMatrix coh = DensityMatrix::pure(coherent_state(f, beta));
  for (cplx alpha : {cplx(0.0), cplx(0.3, 0.2), cplx(-0.8, 0.5)}) {
    const double x = std::norm(alpha);
    EXPECT_NEAR(wigner_function(vac, alpha), 2.0 * std::exp(-2.0 * x), 1e-12);
    EXPECT_NEAR(wigner_function(one, alpha), -2.0 * (1.0 - 4.0 * x) * std::exp(-2.0 * x), 1e-12);
    EXPECT_NEAR(wigner_function(coh, alpha), 2.0 * std::exp(-2.0 * std::norm(alpha - beta)), 1e-12);
  }
}

TEST(PhaseSpace, QFunctionOfVacuum) {
  const DensityMatrix vac = DensityMatrix::pure(fock_state({32}, 0));
  for (double r : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const cplx alpha = std::polar(r, 0.7);
    EXPECT_NEAR(qfunction(vac, alpha), std::exp(-r * r), 1e-12);
  }
}

TEST(PolarGrid, TotalWeightIsRSquared) {
  const PolarGrid g = polar_grid(3.0, 24, 16);
  EXPECT_NEAR(g.grid.total_weight(), 9.0, 1e-12);
  EXPECT_EQ(g.grid.size(), 24u * 16u);
  EXPECT_THROW(polar_grid(0.0, 4, 4), DomainError);
  EXPECT_THROW(polar_grid(1.0, 0, 4), DomainError);
}

TEST(Homodyne, AlphaAndQuadratureFormsReconstructAlike) {
  const FockSpace f{6};
  const DensityMatrix rho = random_state(6, 3);
  const auto a = roundtrip(homodyne_system(f, polar_grid(5.0, 32, 32, PolarForm::alpha)), rho.op());
  const auto k = roundtrip(homodyne_system(f, polar_grid(5.0, 32, 32, PolarForm::quadrature)), rho.op());
  EXPECT_LT((a.reconstructed - k.reconstructed).hs_norm(), 1e-12);
}

TEST(Homodyne, TruncatedRoundTripConverges) {
  const DensityMatrix rho = DensityMatrix::pure(coherent_state({16}, cplx(0.5, 0.3)));
  const auto ladder = homodyne_ladder(rho, {2.0, 3.0, 4.0, 5.0}, 40, 48);
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    EXPECT_LT(ladder[i].hs_error, ladder[i - 1].hs_error);
  }
  EXPECT_GT(ladder.back().fidelity, 0.9999);
  EXPECT_THROW(homodyne_system({1}, polar_grid(1.0, 2, 2)), DomainError);
}

TEST(Admissibility, ProbeRoutesMatchClosedForm) {
  const FockSpace f{8};
  const CvAdmissibility a = admissibility(f, 2.0);
  EXPECT_NEAR(a.analytic, 2.0 * (1.0 - std::pow(2.0 / 3.0, 8)), 1e-15);
  EXPECT_NEAR(a.generic.real() / a.analytic, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(a.generic.imag()), 0.0, 1e-12);
  EXPECT_NEAR(a.direct / a.analytic, 1.0, 1e-12);
}

TEST(DisplacedParity, ClosedFormIsTwiceConjugatedParity) {
  const FockSpace big{48};
  const cplx alpha(0.4, -0.3);
  const Matrix conj =
      2.0 * (displacement(big, alpha) * parity(big) * displacement(big, alpha).adjoint()).matrix();
  const Matrix closed = displaced_parity_closed(big, alpha).matrix();
  EXPECT_LT(max_abs((closed - conj).topLeftCorner(12, 12)), 1e-10);
}

TEST(DisplacedParity, QuadratureAtOriginIsTwiceParity) {
  const DisplacedParity dp = displaced_parity({12}, 0.0, 12.0, 96, 96);
  EXPECT_NEAR(dp.fitted_scale.real(), 2.0, 1e-6);
  EXPECT_LT(dp.residual, 1e-6);
  EXPECT_LT(dp.parity_leak, 1e-12);
}

TEST(PhaseSpace, WignerExpansionRecoversVacuum) {
  const DensityMatrix vac = DensityMatrix::pure(fock_state({12}, 0));
  const Operator rec = wigner_expansion(vac, polar_grid(3.0, 32, 32));
  EXPECT_NEAR(fidelity(vac, rec), 1.0, 1e-8);
}

TEST(Multimode, ProductSamplesFactorize) {
  const std::vector<FockSpace> modes{{3}, {2}};
  const std::vector<PolarGrid> grids{polar_grid(2.0, 4, 4), polar_grid(1.5, 3, 4)};
  const TomographicSystem sys = multimode_system(modes, grids);
  EXPECT_EQ(sys.dim(), 6);
  const DensityMatrix r1 = random_state(3, 1), r2 = random_state(2, 2);
  const SampleVector joint = analyze(sys, tensor(r1.op(), r2.op()));
  const SampleVector s1 = analyze(homodyne_system(modes[0], grids[0]), r1.op());
  const SampleVector s2 = analyze(homodyne_system(modes[1], grids[1]), r2.op());
  for (std::size_t i = 0; i < s1.values.size(); ++i) {
    for (std::size_t j = 0; j < s2.values.size(); ++j) {
      EXPECT_NEAR(std::abs(joint.values[i * s2.values.size() + j] - s1.values[i] * s2.values[j]), 0.0,
                  1e-14);
    }
  }
  EXPECT_LT((multimode_probe(modes, 1.0) - tensor(probe_vector({3}, 1.0), probe_vector({2}, 1.0))).hs_norm(),
            1e-15);
  EXPECT_THROW(multimode_system({{2}, {2}, {2}}, {grids[0], grids[0], grids[0]}), DomainError);
  EXPECT_THROW(multimode_system(modes, {grids[0]}), DimensionError);
}

}  // namespace
}  // namespace coorbit::cv
