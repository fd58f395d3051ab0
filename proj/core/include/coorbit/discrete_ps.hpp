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

#ifndef COORBIT_DISCRETE_PS_HPP
#define COORBIT_DISCRETE_PS_HPP

#include <Eigen/Dense>

#include "coorbit/frame.hpp"
#include "coorbit/opalg.hpp"

namespace coorbit::dps {

/// exp(2 pi i k / n) with k reduced mod n before the angle is formed.
cplx root_of_unity(long long k, long long n);

/// Q^m |n> = |n + m mod N>.
Operator shift_q(int N, long long m);

/// V^m |n> = exp(2 pi i m n / N) |n>.
Operator shift_v(int N, long long m);

/// R |n> = |-n mod N>.
Operator parity(int N);

/// U(q, p) = Q^q V^p exp(i pi p q / N).
Operator displacement(int N, long long q, long long p);

enum class PointRoute { fourier, parity };

/// Phase-point operator A(q, p) on the 2N x 2N lattice, 0 <= q, p < 2N.
///   fourier: (2N)^-2 sum_{m,k < 2N} U(m, k) exp(-2 pi i (k q - m p) / 2N)
///   parity:  (2N)^-1 Q^q R V^-p exp(i pi p q / N)
Operator point_operator(int N, int q, int p, PointRoute route = PointRoute::parity);

struct WignerGrid {
  Eigen::MatrixXd values;  // values(q, p), 2N x 2N
  double max_imag = 0.0;
  double lattice_sum = 0.0;
};

WignerGrid wigner(const DensityMatrix& rho);

/// (1/N) sum_{G_N} Tr(rho U^dagger) U
Operator reconstruct_displacement(const Operator& rho);
/// 4N sum_{G_N} Tr(rho A) A
Operator reconstruct_point(const Operator& rho);

/// G_N = {(q, p) : 0 <= q, p < N}, weights 1/N, analysis U(q, p), synthesis
/// U(q, p) b0 with b0 = I, l0 = trace, P = 1.
TomographicSystem heisenberg_system(int N);

}  // namespace coorbit::dps

#endif  // COORBIT_DISCRETE_PS_HPP
