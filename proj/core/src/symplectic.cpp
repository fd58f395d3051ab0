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

#include "coorbit/parallel.hpp"
#include "coorbit/quadrature.hpp"

namespace coorbit::symplectic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Matrix annihilation_matrix(int d) { return cv::annihilation({d}).matrix(); }

void require_direction(double mu, double nu) {
  if (mu == 0.0 && nu == 0.0) throw DomainError("marginal: (mu, nu) = (0, 0) has no direction");
}

double regularizer(double mu, double nu, double delta) {
  return std::exp(-(mu * mu + nu * nu) / (2.0 * delta * delta));
}

cplx kernel_phase(double mu, double nu, KernelConvention convention) {
  // e^{-i nu p} e^{-i mu q} = e^{-i(mu q + nu p)} e^{i mu nu / 2}
  return convention == KernelConvention::as_printed ? std::polar(1.0, 1.5 * mu * nu) : cplx(1.0);
}

cplx beta_of(double mu, double nu) { return cplx(nu, -mu) / std::numbers::sqrt2; }

}  // namespace

Operator position(FockSpace f) {
  const Matrix a = annihilation_matrix(f.d);
  return Operator((a + a.adjoint()) / std::numbers::sqrt2);
}

Operator momentum(FockSpace f) {
  const Matrix a = annihilation_matrix(f.d);
  return Operator((a - a.adjoint()) / cplx(0.0, std::numbers::sqrt2));
}

std::vector<double> hermite_functions(int n, double x) {
  std::vector<double> psi(std::max(n, 0));
  if (n == 0) return psi;
  psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n > 1) psi[1] = std::numbers::sqrt2 * x * psi[0];
  for (int k = 1; k + 1 < n; ++k) {
    psi[k + 1] = std::sqrt(2.0 / (k + 1)) * x * psi[k] - std::sqrt(double(k) / (k + 1)) * psi[k - 1];
  }
  return psi;
}

std::vector<double> marginal(const DensityMatrix& rho, double mu, double nu,
                             const std::vector<double>& x_nodes, MarginalMethod method) {
  require_direction(mu, nu);
  const int d = static_cast<int>(rho.dim());
  std::vector<double> out(x_nodes.size());
  if (method == MarginalMethod::hermite) {
    const double lambda = std::hypot(mu, nu);
    const double theta = std::atan2(nu, mu);
    Vector phases(d);
    for (int m = 0; m < d; ++m) phases(m) = std::polar(1.0, theta * m);
    for (std::size_t j = 0; j < x_nodes.size(); ++j) {
      const std::vector<double> psi = hermite_functions(d, x_nodes[j] / lambda);
      Vector v(d);
      for (int m = 0; m < d; ++m) v(m) = psi[m] * phases(m);
      out[j] = (v.adjoint() * rho.matrix() * v)(0, 0).real() / lambda;
    }
    return out;
  }
  const FockSpace f{d};
  const Matrix h = mu * position(f).matrix() + nu * momentum(f).matrix();
  const HermitianEigen eig = eig_hermitian(h);
  const double gap = d > 1 ? (eig.values(d - 1) - eig.values(0)) / (d - 1) : 1.0;
  const double bw = 0.5 * gap;
  std::vector<double> weight(d);
  for (int k = 0; k < d; ++k) {
    weight[k] = (eig.vectors.col(k).adjoint() * rho.matrix() * eig.vectors.col(k))(0, 0).real();
  }
  const double norm = 1.0 / (std::sqrt(kTwoPi) * bw);
  for (std::size_t j = 0; j < x_nodes.size(); ++j) {
    double acc = 0.0;
    for (int k = 0; k < d; ++k) {
      const double z = (x_nodes[j] - eig.values(k)) / bw;
      acc += weight[k] * std::exp(-0.5 * z * z);
    }
    out[j] = norm * acc;
  }
  return out;
}

Operator kernel_K(FockSpace f, double X, double mu, double nu, KernelConvention convention) {
  const int pad = f.d + cv::kPadding;
  const Matrix q = position({pad}).matrix();
  const Matrix p = momentum({pad}).matrix();
  const cplx i(0.0, 1.0);
  Matrix body;
  cplx scalar = std::polar(1.0 / kTwoPi, X);
  if (convention == KernelConvention::as_printed) {
    body = matrix_exp(Matrix(-i * nu * p)) * matrix_exp(Matrix(-i * mu * q));
    scalar *= std::polar(1.0, mu * nu);
  } else {
    body = matrix_exp(Matrix(-i * (mu * q + nu * p)));
  }
  return Operator(scalar * body.topLeftCorner(f.d, f.d));
}

Operator kernel_K_closed(FockSpace f, double X, double mu, double nu,
                         KernelConvention convention) {
  const cplx scalar = std::polar(1.0 / kTwoPi, X) * kernel_phase(mu, nu, convention);
  return cv::displacement(f, beta_of(mu, nu)) * scalar;
}

MarginalGrid marginal_grid(FockSpace f, double delta, int n_x, int n_mn) {
  if (!(delta > 0.0)) throw DomainError("marginal_grid: delta must be positive");
  if (n_x < 2 || n_mn < 2 || n_mn % 2) {
    throw DomainError("marginal_grid: need n_x >= 2 and an even (mu, nu) node count");
  }
  MarginalGrid g;
  g.delta = delta;
  const double x_max = std::sqrt(2.0 * f.d + 1.0) + 5.0;
  const QuadratureRule xr = gauss_legendre(n_x, -x_max, x_max);
  g.x_nodes = xr.nodes;
  g.x_weights = xr.weights;
  // Characteristic functions of states below level d are negligible beyond
  // |mu, nu| ~ 2 sqrt(2d); the regularizer is below e^-35 past delta sqrt(70).
  const double L = std::min(delta * std::sqrt(70.0), 2.0 * std::sqrt(2.0 * f.d) + 8.0);
  const QuadratureRule mr = gauss_legendre(n_mn, -L, L);
  for (int a = 0; a < n_mn; ++a) {
    for (int b = 0; b < n_mn; ++b) {
      if (std::hypot(mr.nodes[a], mr.nodes[b]) > L) continue;
      g.mu.push_back(mr.nodes[a]);
      g.nu.push_back(mr.nodes[b]);
      g.mn_weights.push_back(mr.weights[a] * mr.weights[b]);
    }
  }
  return g;
}

MarginalTable sample_marginals(const DensityMatrix& rho, const MarginalGrid& grid) {
  MarginalTable out(grid.mu.size(), grid.x_nodes.size());
  parallel_for(grid.mu.size(), [&](std::size_t a) {
    const double lambda = std::hypot(grid.mu[a], grid.nu[a]);
    std::vector<double> X(grid.x_nodes.size());
    for (std::size_t j = 0; j < X.size(); ++j) X[j] = lambda * grid.x_nodes[j];
    const std::vector<double> w = marginal(rho, grid.mu[a], grid.nu[a], X);
    for (std::size_t j = 0; j < X.size(); ++j) out(static_cast<Index>(a), static_cast<Index>(j)) = w[j];
  });
  return out;
}

Operator reconstruct_from_marginals(const MarginalTable& w, const MarginalGrid& grid, FockSpace f,
                                    KernelConvention convention) {
  if (w.rows() != static_cast<Index>(grid.mu.size()) ||
      w.cols() != static_cast<Index>(grid.x_nodes.size())) {
    throw DimensionError("reconstruct_from_marginals: table does not match the grid");
  }
  CompensatedSum acc(f.d);
  for (std::size_t a = 0; a < grid.mu.size(); ++a) {
    const double mu = grid.mu[a], nu = grid.nu[a];
    const double lambda = std::hypot(mu, nu);
    // X integral of w(X) e^{iX}; the remaining factors of K do not depend on X.
    CompensatedScalar s;
    for (std::size_t j = 0; j < grid.x_nodes.size(); ++j) {
      const double X = lambda * grid.x_nodes[j];
      s.add(grid.x_weights[j] * lambda * w(static_cast<Index>(a), static_cast<Index>(j)) *
            std::polar(1.0, X));
    }
    const cplx coeff = grid.mn_weights[a] * regularizer(mu, nu, grid.delta) * s.result() *
                       kernel_phase(mu, nu, convention) / kTwoPi;
    acc.add(coeff, cv::displacement(f, beta_of(mu, nu)).matrix());
  }
  return Operator(acc.result());
}

Operator reconstruct(const DensityMatrix& rho, const MarginalGrid& grid,
                     KernelConvention convention) {
  const FockSpace f{static_cast<int>(rho.dim())};
  return reconstruct_from_marginals(sample_marginals(rho, grid), grid, f, convention);
}

std::vector<LadderPoint> delta_ladder(const DensityMatrix& rho, const std::vector<double>& deltas,
                                      KernelConvention convention) {
  const FockSpace f{static_cast<int>(rho.dim())};
  std::vector<LadderPoint> out;
  for (double delta : deltas) {
    const Operator rec = reconstruct(rho, marginal_grid(f, delta), convention);
    out.push_back({delta, (rec - rho.op()).hs_norm(), fidelity(rho, rec)});
  }
  return out;
}

Consistency marginal_wigner_consistency(const DensityMatrix& rho, double mu, double nu,
                                        double x_max) {
  require_direction(mu, nu);
  const int d = static_cast<int>(rho.dim());
  const double lambda = std::hypot(mu, nu);

  // Wigner function in (q, p) units, W_qp = W_alpha / (2 pi), on a Cartesian grid.
  const double extent = std::sqrt(2.0 * d + 1.0) + 5.0;
  const double h = 0.125;
  const int n = static_cast<int>(std::ceil(extent / h));
  std::vector<double> q_nodes, p_nodes, values;
  for (int a = -n; a <= n; ++a) {
    for (int b = -n; b <= n; ++b) {
      const double q = a * h, p = b * h;
      const double w = cv::wigner_function(rho, cplx(q, p) / std::numbers::sqrt2) / kTwoPi;
      q_nodes.push_back(q);
      p_nodes.push_back(p);
      values.push_back(w * h * h);
    }
  }

  // Fourier slice: w~(k) = int W e^{ik(mu q + nu p)}; then w(X) = (1/2pi) int w~(k) e^{-ikX} dk.
  const double K = (2.0 * std::sqrt(2.0 * d) + 8.0) / lambda;
  const QuadratureRule kr = gauss_legendre(256, -K, K);
  std::vector<cplx> slice(kr.nodes.size());
  for (std::size_t j = 0; j < kr.nodes.size(); ++j) {
    CompensatedScalar s;
    const double k = kr.nodes[j];
    for (std::size_t i = 0; i < values.size(); ++i) {
      s.add(values[i] * std::polar(1.0, k * (mu * q_nodes[i] + nu * p_nodes[i])));
    }
    slice[j] = s.result();
  }

  Consistency out;
  const int nx = 81;
  for (int i = 0; i < nx; ++i) out.x_nodes.push_back(-x_max + 2.0 * x_max * i / (nx - 1));
  out.from_marginal = marginal(rho, mu, nu, out.x_nodes);
  out.residual = 0.0;
  for (std::size_t i = 0; i < out.x_nodes.size(); ++i) {
    CompensatedScalar s;
    for (std::size_t j = 0; j < kr.nodes.size(); ++j) {
      s.add(kr.weights[j] * slice[j] * std::polar(1.0, -kr.nodes[j] * out.x_nodes[i]));
    }
    const double w = s.result().real() / kTwoPi;
    out.from_wigner.push_back(w);
    out.residual = std::max(out.residual, std::abs(w - out.from_marginal[i]));
  }
  return out;
}

}  // namespace coorbit::symplectic
