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

#ifndef COORBIT_QUADRATURE_HPP
#define COORBIT_QUADRATURE_HPP

#include <vector>

namespace coorbit {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree
/// 2n - 1. Nodes ascending.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// n equispaced nodes k * 2pi / n on [0, 2pi) with weights 2pi / n; exact for
/// trigonometric polynomials of degree < n.
QuadratureRule uniform_circle(int n);

/// Legendre polynomial P_l(x) by upward recurrence.
double legendre_p(int l, double x);

/// All P_0..P_lmax at x.
std::vector<double> legendre_table(int lmax, double x);

}  // namespace coorbit

#endif  // COORBIT_QUADRATURE_HPP
