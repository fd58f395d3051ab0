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

#include "coorbit/spin_moyal.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "coorbit/quadrature.hpp"

namespace coorbit::spin {

namespace {

int doubled(double j, const char* what) {
  const double t = 2.0 * j;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-12) {
    throw DomainError(std::string("wigner_3j: ") + what + " must be an integer or half integer");
  }
  return static_cast<int>(r);
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

void require_spin(SpinParams p) {
  if (p.two_s < 0) throw DomainError("spin: two_s must be nonnegative");
}

}  // namespace

double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3) {
  const int a = doubled(j1, "j1"), b = doubled(j2, "j2"), c = doubled(j3, "j3");
  const int x = doubled(m1, "m1"), y = doubled(m2, "m2"), z = doubled(m3, "m3");
  if (a < 0 || b < 0 || c < 0) throw DomainError("wigner_3j: j must be nonnegative");
  if (std::abs(x) > a || std::abs(y) > b || std::abs(z) > c) {
    throw DomainError("wigner_3j: |m| must not exceed j");
  }
  if ((a + x) % 2 || (b + y) % 2 || (c + z) % 2) {
    throw DomainError("wigner_3j: j and m must differ by an integer");
  }
  if (x + y + z != 0) return 0.0;
  if (c > a + b || c < std::abs(a - b) || (a + b + c) % 2) return 0.0;

  // Everything below in units of 1 (doubled values halved exactly).
  const int J1 = a, J2 = b, J3 = c;
  const int t1 = (J1 + J2 - J3) / 2, t2 = (J1 - J2 + J3) / 2, t3 = (-J1 + J2 + J3) / 2;
  const int total = (J1 + J2 + J3) / 2;
  const double log_delta =
      log_factorial(t1) + log_factorial(t2) + log_factorial(t3) - log_factorial(total + 1);
  const int p1 = (J1 + x) / 2, p2 = (J1 - x) / 2, p3 = (J2 + y) / 2, p4 = (J2 - y) / 2;
  const int p5 = (J3 + z) / 2, p6 = (J3 - z) / 2;
  const double log_pref = 0.5 * (log_delta + log_factorial(p1) + log_factorial(p2) +
                                 log_factorial(p3) + log_factorial(p4) + log_factorial(p5) +
                                 log_factorial(p6));

  // k ranges over values keeping all six factorial arguments nonnegative.
  const int u1 = (J3 - J2 + x) / 2;   // j3 - j2 + m1
  const int u2 = (J3 - J1 - y) / 2;   // j3 - j1 - m2
  const int kmin = std::max({0, -u1, -u2});
  const int kmax = std::min({t1, p2, p3});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double lg = log_factorial(k) + log_factorial(t1 - k) + log_factorial(p2 - k) +
                      log_factorial(p3 - k) + log_factorial(u1 + k) + log_factorial(u2 + k);
    sum += (k % 2 ? -1.0 : 1.0) * std::exp(log_pref - lg);
  }
  const int phase = (J1 - J2 - z) / 2;  // j1 - j2 - m3
  return (phase % 2 ? -1.0 : 1.0) * sum;
}

Operator jz(SpinParams p) {
  require_spin(p);
  Matrix m = Matrix::Zero(p.dim(), p.dim());
  for (Index i = 0; i < p.dim(); ++i) m(i, i) = p.s() - static_cast<double>(i);
  return Operator(std::move(m));
}

Operator jplus(SpinParams p) {
  require_spin(p);
  const double s = p.s();
  Matrix out = Matrix::Zero(p.dim(), p.dim());
  // J+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>; index i holds m = s - i.
  for (Index i = 1; i < p.dim(); ++i) {
    const double m = s - static_cast<double>(i);
    out(i - 1, i) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  return Operator(std::move(out));
}

Operator jx(SpinParams p) {
  const Matrix jp = jplus(p).matrix();
  return Operator(0.5 * (jp + jp.adjoint()));
}

Operator jy(SpinParams p) {
  const Matrix jp = jplus(p).matrix();
  return Operator(cplx(0.0, -0.5) * (jp - jp.adjoint()));
}

Operator rotation_operator(SpinParams p, double theta, double phi) {
  require_spin(p);
  if (theta == 0.0) return Operator::identity(p.dim());
  if (theta == std::numbers::pi) phi = 0.0;
  const Matrix h = -std::sin(phi) * jx(p).matrix() + std::cos(phi) * jy(p).matrix();
  const HermitianEigen eig = eig_hermitian(h);
  Vector phases(eig.values.size());
  for (Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -theta * eig.values(i));
  return Operator(eig.vectors * phases.asDiagonal() * eig.vectors.adjoint());
}

Vector coherent_state(SpinParams p, double theta, double phi) {
  return rotation_operator(p, theta, phi).matrix().col(0);
}

Operator kernel_direct(SpinParams p, double theta, double phi) {
  const Vector v = coherent_state(p, theta, phi);
  Matrix proj = v * v.adjoint();
  return Operator(0.5 * (proj + proj.adjoint()));
}

std::vector<double> dual_coefficients(SpinParams p) {
  require_spin(p);
  const double s = p.s();
  std::vector<double> out;
  for (Index i = 0; i < p.dim(); ++i) {
    const double m = s - static_cast<double>(i);
    double acc = 0.0;
    for (int l = 0; l <= p.two_s; ++l) {
      const double top = wigner_3j(s, l, s, s, 0, -s);
      const double here = wigner_3j(s, l, s, m, 0, -m);
      acc += (2.0 * l + 1.0) / (2.0 * s + 1.0) * here / top;
    }
    out.push_back(i % 2 ? -acc : acc);  // (-1)^(s-m) = (-1)^i
  }
  return out;
}

Operator kernel_dual(SpinParams p, double theta, double phi) {
  const std::vector<double> coeffs = dual_coefficients(p);
  const Matrix u = rotation_operator(p, theta, phi).matrix();
  const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), p.dim());
  Matrix k = u * diag.cast<cplx>().asDiagonal() * u.adjoint();
  return Operator(0.5 * (k + k.adjoint()));
}

double tracial_overlap(SpinParams p, double theta) {
  require_spin(p);
  const std::vector<double> pl = legendre_table(p.two_s, std::cos(theta));
  double acc = 0.0;
  for (int l = 0; l <= p.two_s; ++l) acc += (2.0 * l + 1.0) * pl[l];
  return acc / (p.two_s + 1.0);
}

SphereGrid sphere_grid(SpinParams p, int n_theta, int n_phi) {
  require_spin(p);
  if (n_theta <= 0) n_theta = p.two_s + 1;
  if (n_phi <= 0) n_phi = 2 * p.two_s + 2;
  const QuadratureRule gl = gauss_legendre(n_theta);
  const double scale = (p.two_s + 1.0) / (4.0 * std::numbers::pi);
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  for (int a = 0; a < n_theta; ++a) {
    // Descending cos(theta) so theta increases along the grid.
    const int idx = n_theta - 1 - a;
    const double theta = std::acos(gl.nodes[idx]);
    for (int b = 0; b < n_phi; ++b) {
      nodes.push_back({theta, dphi * b});
      weights.push_back(gl.weights[idx] * dphi * scale);
    }
  }
  std::ostringstream id;
  id << "sphere/2s=" << p.two_s << "/" << n_theta << "x" << n_phi;
  return {n_theta, n_phi, IndexGrid(id.str(), std::move(nodes), std::move(weights))};
}

bool is_exact(SpinParams p, const SphereGrid& grid) {
  return grid.n_theta >= p.two_s + 1 && grid.n_phi >= 2 * p.two_s + 1;
}

TomographicSystem moyal_system(SpinParams p, const SphereGrid& grid, bool allow_underresolved) {
  require_spin(p);
  if (!allow_underresolved && !is_exact(p, grid)) {
    std::ostringstream msg;
    msg << "moyal_system: grid " << grid.n_theta << "x" << grid.n_phi
        << " is under-resolved for 2s=" << p.two_s << "; need n_theta >= " << p.two_s + 1
        << " and n_phi >= " << 2 * p.two_s + 1;
    throw DomainError(msg.str());
  }
  const IndexGrid& g = grid.grid;
  const std::vector<double> coeffs = dual_coefficients(p);
  const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), p.dim());
  std::vector<Matrix> rotations(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    rotations[i] = rotation_operator(p, g.coords(i)[0], g.coords(i)[1]).matrix();
  }
  auto analysis = std::make_shared<CachedFamily>(g.size(), [&](std::size_t i) {
    const Matrix& u = rotations[i];
    Matrix k = u * diag.cast<cplx>().asDiagonal() * u.adjoint();
    return Operator(0.5 * (k + k.adjoint()));
  });
  auto synthesis = std::make_shared<CachedFamily>(g.size(), [&](std::size_t i) {
    const Vector v = rotations[i].col(0);
    Matrix proj = v * v.adjoint();
    return Operator(0.5 * (proj + proj.adjoint()));
  });

  TomographicSystem::Parts parts;
  parts.name = "spin";
  parts.grid = g;
  parts.analysis = std::move(analysis);
  parts.synthesis = std::move(synthesis);
  parts.act = [p](std::span<const double> x, const Operator& o) {
    const Operator u = rotation_operator(p, x[0], x[1]);
    return u * o * u.adjoint();
  };
  parts.action_kind = ActionKind::adjoint;
  parts.vacuum = kernel_direct(p, 0.0, 0.0);
  parts.test_functional = Operator(Matrix(diag.cast<cplx>().asDiagonal()));
  parts.normalization = 1.0;
  return TomographicSystem(std::move(parts));
}

SampleVector symbols(SpinParams p, const DensityMatrix& rho, const SphereGrid& grid) {
  if (rho.dim() != p.dim()) throw DimensionError("symbols: state dimension does not match spin");
  return analyze(moyal_system(p, grid, true), rho.op());
}

}  // namespace coorbit::spin
