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
#include <memory>
#include <numbers>
#include <sstream>

#include "coorbit/quadrature.hpp"

namespace coorbit::cv {

namespace {

void require_fock(FockSpace f) {
  if (f.d < 1) throw DomainError("FockSpace: d must be positive");
}

Matrix annihilation_matrix(int d) {
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix crop(const Matrix& m, int d) { return m.topLeftCorner(d, d); }

// <n + k|D|n> = sqrt(n!/(n+k)!) alpha^k e^{-x/2} L_n^(k)(x), x = |alpha|^2, and
// <n|D|n + k> = sqrt(n!/(n+k)!) (-conj(alpha))^k e^{-x/2} L_n^(k)(x).
Matrix laguerre_displacement(int d, cplx alpha) {
  const double x = std::norm(alpha);
  const double r = std::abs(alpha);
  const double arg = std::arg(alpha);
  std::vector<double> lf(2 * d + 1);
  for (std::size_t n = 0; n < lf.size(); ++n) lf[n] = std::lgamma(static_cast<double>(n) + 1.0);
  Matrix out(d, d);
  std::vector<double> lag(d);
  for (int k = 0; k < d; ++k) {
    const int count = d - k;
    lag[0] = 1.0;
    if (count > 1) lag[1] = 1.0 + k - x;
    for (int n = 1; n + 1 < count; ++n) {
      lag[n + 1] = ((2.0 * n + 1.0 + k - x) * lag[n] - (n + k) * lag[n - 1]) / (n + 1.0);
    }
    const cplx below = std::polar(1.0, k * arg);                       // alpha^k / r^k
    const cplx above = std::polar(1.0, k * (std::numbers::pi - arg));  // (-conj(alpha))^k / r^k
    for (int n = 0; n < count; ++n) {
      const double log_mag = 0.5 * (lf[n] - lf[n + k]) + k * std::log(r) - 0.5 * x;
      const double mag = std::exp(log_mag) * lag[n];
      out(n + k, n) = mag * below;
      if (k > 0) out(n, n + k) = mag * above;
    }
  }
  return out;
}

Matrix padded_exp(const Matrix& generator, int d) { return crop(matrix_exp(generator), d); }

void require_husimi(const Ordering& o) {
  if (std::abs(o.mu * o.mu - o.nu * o.nu - 1.0) > 1e-12) {
    throw DomainError("husimi ordering requires mu^2 - nu^2 = 1");
  }
}

}  // namespace

Operator annihilation(FockSpace f) {
  require_fock(f);
  return Operator(annihilation_matrix(f.d));
}

Operator number(FockSpace f) {
  require_fock(f);
  Matrix n = Matrix::Zero(f.d, f.d);
  for (int i = 0; i < f.d; ++i) n(i, i) = i;
  return Operator(std::move(n));
}

Operator parity(FockSpace f) {
  require_fock(f);
  Matrix p = Matrix::Zero(f.d, f.d);
  for (int i = 0; i < f.d; ++i) p(i, i) = i % 2 ? -1.0 : 1.0;
  return Operator(std::move(p));
}

Operator displacement_padded_exp(FockSpace f, cplx alpha) {
  require_fock(f);
  const Matrix a = annihilation_matrix(f.d + kPadding);
  return Operator(padded_exp(alpha * a.adjoint() - std::conj(alpha) * a, f.d));
}

Operator displacement(FockSpace f, cplx alpha) {
  require_fock(f);
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw DomainError("displacement: alpha must be finite");
  }
  if (std::abs(alpha) <= 0.5) return displacement_padded_exp(f, alpha);
  return Operator(laguerre_displacement(f.d, alpha));
}

double displacement_leak(FockSpace f, cplx alpha) {
  const Matrix d = displacement(f, alpha).matrix();
  return (d.adjoint() * d - Matrix::Identity(f.d, f.d)).norm();
}

Operator ordered_displacement(FockSpace f, cplx alpha, const Ordering& ordering) {
  const double x = std::norm(alpha);
  const double xi = std::numbers::sqrt2 * alpha.imag();
  const double eta = -std::numbers::sqrt2 * alpha.real();
  switch (ordering.kind) {
    case OrderingKind::weyl:
      return displacement(f, alpha);
    case OrderingKind::normal:
      return displacement(f, alpha) * cplx(std::exp(0.5 * x));
    case OrderingKind::antinormal:
      return displacement(f, alpha) * cplx(std::exp(-0.5 * x));
    case OrderingKind::husimi: {
      require_husimi(ordering);
      const cplx beta = ordering.mu * alpha - ordering.nu * std::conj(alpha);
      return displacement(f, beta) * cplx(std::exp(-0.5 * x));
    }
    case OrderingKind::standard:
      return displacement(f, alpha) * std::polar(1.0, -0.5 * xi * eta);
    case OrderingKind::antistandard:
      return displacement(f, alpha) * std::polar(1.0, 0.5 * xi * eta);
  }
  throw DomainError("ordered_displacement: unknown ordering");
}

Operator ordered_displacement_product(FockSpace f, cplx alpha, const Ordering& ordering) {
  require_fock(f);
  const int pad = f.d + kPadding;
  const Matrix a = annihilation_matrix(pad);
  const Matrix ad = a.adjoint();
  const cplx ac = std::conj(alpha);
  const cplx i(0.0, 1.0);
  const Matrix q = (a + ad) / std::numbers::sqrt2;
  const Matrix p = (a - ad) / (i * std::numbers::sqrt2);
  const double xi = std::numbers::sqrt2 * alpha.imag();
  const double eta = -std::numbers::sqrt2 * alpha.real();
  Matrix out;
  switch (ordering.kind) {
    case OrderingKind::weyl:
      out = matrix_exp(Matrix(alpha * ad - ac * a));
      break;
    case OrderingKind::normal:
      out = matrix_exp(Matrix(alpha * ad)) * matrix_exp(Matrix(-ac * a));
      break;
    case OrderingKind::antinormal:
      out = matrix_exp(Matrix(-ac * a)) * matrix_exp(Matrix(alpha * ad));
      break;
    case OrderingKind::husimi: {
      require_husimi(ordering);
      const Matrix b = ordering.mu * a + ordering.nu * ad;
      out = matrix_exp(Matrix(-ac * b)) * matrix_exp(Matrix(alpha * b.adjoint()));
      break;
    }
    case OrderingKind::standard:
      out = matrix_exp(Matrix(i * xi * q)) * matrix_exp(Matrix(i * eta * p));
      break;
    case OrderingKind::antistandard:
      out = matrix_exp(Matrix(i * eta * p)) * matrix_exp(Matrix(i * xi * q));
      break;
  }
  return Operator(crop(out, f.d));
}

cplx char_function(const DensityMatrix& rho, cplx alpha, const Ordering& ordering) {
  const Operator u = ordered_displacement({static_cast<int>(rho.dim())}, alpha, ordering);
  return hs_inner(u, rho.op());
}

Operator quadrature_operator(FockSpace f, double phi) {
  require_fock(f);
  const Matrix a = annihilation_matrix(f.d);
  const cplx e = std::polar(1.0, phi);
  Matrix x = 0.5 * (e * a.adjoint() + std::conj(e) * a);
  return Operator(0.5 * (x + x.adjoint()));
}

PolarGrid polar_grid(double R, int n_r, int n_phi, PolarForm form) {
  if (!(R > 0.0) || n_r < 1 || n_phi < 1) {
    throw DomainError("polar_grid: need R > 0 and positive node counts");
  }
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  std::ostringstream id;
  if (form == PolarForm::alpha) {
    const QuadratureRule radial = gauss_legendre(n_r, 0.0, R);
    for (int a = 0; a < n_r; ++a) {
      const double r = radial.nodes[a];
      for (int b = 0; b < n_phi; ++b) {
        const cplx alpha = std::polar(r, dphi * b);
        nodes.push_back({alpha.real(), alpha.imag()});
        weights.push_back(radial.weights[a] * r * dphi / std::numbers::pi);
      }
    }
    id << "polar/R=" << R << "/" << n_r << "x" << n_phi;
  } else {
    const QuadratureRule radial = gauss_legendre(n_r, 0.0, 2.0 * R);
    for (int a = 0; a < n_r; ++a) {
      const double k = radial.nodes[a];
      for (int b = 0; b < n_phi; ++b) {
        const cplx alpha = cplx(0.0, 0.5) * k * std::polar(1.0, dphi * b);
        nodes.push_back({alpha.real(), alpha.imag()});
        weights.push_back(radial.weights[a] * std::abs(k) / 4.0 * dphi / std::numbers::pi);
      }
    }
    id << "polar-k/R=" << R << "/" << n_r << "x" << n_phi;
  }
  return {R, n_r, n_phi, IndexGrid(id.str(), std::move(nodes), std::move(weights))};
}

TomographicSystem homodyne_system(FockSpace f, const PolarGrid& grid) {
  if (f.d < 2) throw DomainError("homodyne_system: d must be at least 2");
  const IndexGrid& g = grid.grid;
  auto family = std::make_shared<CachedFamily>(g.size(), [&](std::size_t i) {
    return displacement(f, {g.coords(i)[0], g.coords(i)[1]});
  });
  TomographicSystem::Parts parts;
  parts.name = "homodyne";
  parts.grid = g;
  parts.analysis = family;
  parts.synthesis = family;
  parts.act = [f](std::span<const double> x, const Operator& o) {
    return displacement(f, {x[0], x[1]}) * o;
  };
  parts.action_kind = ActionKind::left;
  parts.vacuum = Operator::identity(f.d);
  parts.test_functional = Operator::identity(f.d);
  parts.normalization = 1.0;
  return TomographicSystem(std::move(parts));
}

Vector fock_state(FockSpace f, int n) {
  require_fock(f);
  if (n < 0 || n >= f.d) throw DomainError("fock_state: level outside the truncation");
  Vector v = Vector::Zero(f.d);
  v(n) = 1.0;
  return v;
}

Vector coherent_state(FockSpace f, cplx beta) {
  require_fock(f);
  Vector v(f.d);
  const double r = std::abs(beta);
  for (int n = 0; n < f.d; ++n) {
    if (r == 0.0) {
      v(n) = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double log_mag = n * std::log(r) - 0.5 * std::lgamma(n + 1.0) - 0.5 * r * r;
    v(n) = std::polar(std::exp(log_mag), n * std::arg(beta));
  }
  return v / v.norm();
}

DensityMatrix thermal_state(FockSpace f, double nbar) {
  require_fock(f);
  if (!(nbar >= 0.0)) throw DomainError("thermal_state: nbar must be nonnegative");
  Matrix m = Matrix::Zero(f.d, f.d);
  const double q = nbar / (nbar + 1.0);
  double w = 1.0;
  for (int n = 0; n < f.d; ++n, w *= q) m(n, n) = w;
  m /= m.trace().real();
  return DensityMatrix(Operator(std::move(m)));
}

Operator probe_vector(FockSpace f, double delta) {
  require_fock(f);
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw DomainError("probe_vector: Delta must be positive and finite");
  }
  const double q = delta / (delta + 1.0);
  Matrix m = Matrix::Zero(f.d, f.d);
  double w = q;
  for (int n = 0; n < f.d; ++n, w *= q) m(n, n) = w;
  return Operator(std::move(m));
}

PolarGrid admissibility_grid(FockSpace f, double delta) {
  // The integrand is exp(-|alpha|^2) times a Laguerre polynomial product of
  // degree 2(d - 1) in |alpha|^2; past |alpha|^2 = 4d + 40 it is negligible.
  // The Gaussian bound covers small d with a slowly decaying probe.
  const double R = std::sqrt(std::max(4.0 * f.d + 40.0, 40.0 / (delta + 0.5) + 1.0));
  const int n_r = std::max(64, 8 * f.d);
  return polar_grid(R, n_r, 4);
}

CvAdmissibility admissibility(FockSpace f, double delta, const PolarGrid& grid) {
  const Operator p0 = probe_vector(f, delta);
  const TomographicSystem sys = homodyne_system(f, grid);
  CvAdmissibility out;
  out.generic = singular_admissibility(sys, sys.vacuum(), p0);

  // Direct route: both factors are radial sums of Laguerre diagonals.
  CompensatedScalar acc;
  for (std::size_t i = 0; i < grid.grid.size(); ++i) {
    const cplx alpha(grid.grid.coords(i)[0], grid.grid.coords(i)[1]);
    const double x = std::norm(alpha);
    double lag_prev = 0.0, lag = 1.0, tr = 0.0, tr_p = 0.0;
    for (int n = 0; n < f.d; ++n) {
      tr += lag;
      tr_p += p0(n, n).real() * lag;
      const double next = ((2.0 * n + 1.0 - x) * lag - n * lag_prev) / (n + 1.0);
      lag_prev = lag;
      lag = next;
    }
    acc.add(grid.grid.weight(i) * std::exp(-x) * tr * tr_p);
  }
  out.direct = acc.result().real();
  out.analytic = delta * (1.0 - std::pow(delta / (delta + 1.0), f.d));
  return out;
}

CvAdmissibility admissibility(FockSpace f, double delta) {
  return admissibility(f, delta, admissibility_grid(f, delta));
}

Operator displaced_parity_closed(FockSpace f, cplx alpha) {
  return displacement(f, 2.0 * alpha) * parity(f) * cplx(2.0);
}

DisplacedParity displaced_parity(FockSpace f, cplx alpha, double xi_cutoff, int n_r, int n_phi) {
  require_fock(f);
  const PolarGrid grid = polar_grid(xi_cutoff, n_r, n_phi);
  const FockSpace padded{f.d + kPadding};
  const IndexGrid& g = grid.grid;
  CompensatedSum acc(f.d);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx xi(g.coords(i)[0], g.coords(i)[1]);
    const cplx kernel = std::exp(alpha * std::conj(xi) - std::conj(alpha) * xi);
    acc.add(g.weight(i) * kernel, crop(displacement(padded, xi).matrix(), f.d));
  }
  DisplacedParity out{Operator(acc.result()), 0.0, 0.0, 0.0};
  const Operator candidate = displacement(f, 2.0 * alpha) * parity(f);
  out.fitted_scale = hs_inner(candidate, out.value) / hs_inner(candidate, candidate);
  const double norm = out.value.hs_norm();
  out.residual = (out.value - out.fitted_scale * candidate).hs_norm() / norm;
  const Operator mirrored = candidate * out.value * candidate.adjoint();
  out.parity_leak = 0.5 * (out.value - mirrored).hs_norm() / norm;
  return out;
}

double wigner_function(const DensityMatrix& rho, cplx alpha) {
  const Operator k = displaced_parity_closed({static_cast<int>(rho.dim())}, alpha);
  return (rho.matrix() * k.matrix()).trace().real();
}

Operator wigner_expansion(const DensityMatrix& rho, const PolarGrid& grid) {
  const FockSpace f{static_cast<int>(rho.dim())};
  const IndexGrid& g = grid.grid;
  CompensatedSum acc(f.d);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Operator k = displaced_parity_closed(f, {g.coords(i)[0], g.coords(i)[1]});
    const double w = (rho.matrix() * k.matrix()).trace().real();
    acc.add(g.weight(i) * w, k.matrix());
  }
  return Operator(acc.result());
}

double qfunction(const DensityMatrix& rho, cplx alpha) {
  const Vector c = coherent_state({static_cast<int>(rho.dim())}, alpha);
  return (c.adjoint() * rho.matrix() * c)(0, 0).real();
}

TomographicSystem multimode_system(const std::vector<FockSpace>& modes,
                                   const std::vector<PolarGrid>& grids) {
  if (modes.empty() || modes.size() != grids.size()) {
    throw DimensionError("multimode_system: one grid per mode is required");
  }
  if (modes.size() > 2) {
    throw DomainError("multimode_system: more than two modes is beyond desk-scale cost "
                      "(product grids grow as the power of the mode count)");
  }
  if (modes.size() == 1) return homodyne_system(modes[0], grids[0]);

  const TomographicSystem a = homodyne_system(modes[0], grids[0]);
  const TomographicSystem b = homodyne_system(modes[1], grids[1]);
  auto family = std::make_shared<ProductFamily>(a.analysis_family(), b.analysis_family());

  const IndexGrid& ga = grids[0].grid;
  const IndexGrid& gb = grids[1].grid;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  nodes.reserve(ga.size() * gb.size());
  weights.reserve(ga.size() * gb.size());
  for (std::size_t i = 0; i < ga.size(); ++i) {
    for (std::size_t j = 0; j < gb.size(); ++j) {
      nodes.push_back({ga.coords(i)[0], ga.coords(i)[1], gb.coords(j)[0], gb.coords(j)[1]});
      weights.push_back(ga.weight(i) * gb.weight(j));
    }
  }
  const Index dim = static_cast<Index>(modes[0].d) * modes[1].d;
  TomographicSystem::Parts parts;
  parts.name = "homodyne2";
  parts.grid = IndexGrid("product(" + ga.id() + "," + gb.id() + ")", std::move(nodes),
                         std::move(weights));
  parts.analysis = family;
  parts.synthesis = family;
  parts.act = [fa = modes[0], fb = modes[1]](std::span<const double> x, const Operator& o) {
    return tensor(displacement(fa, {x[0], x[1]}), displacement(fb, {x[2], x[3]})) * o;
  };
  parts.action_kind = ActionKind::left;
  parts.vacuum = Operator::identity(dim);
  parts.test_functional = Operator::identity(dim);
  parts.normalization = 1.0;
  return TomographicSystem(std::move(parts));
}

Operator multimode_probe(const std::vector<FockSpace>& modes, double delta) {
  if (modes.empty()) throw DimensionError("multimode_probe: no modes");
  Operator out = probe_vector(modes[0], delta);
  for (std::size_t i = 1; i < modes.size(); ++i) out = tensor(out, probe_vector(modes[i], delta));
  return out;
}

std::vector<LadderPoint> homodyne_ladder(const DensityMatrix& rho, const std::vector<double>& radii,
                                         int n_r, int n_phi) {
  const FockSpace f{static_cast<int>(rho.dim())};
  std::vector<LadderPoint> out;
  for (double R : radii) {
    const TomographicSystem sys = homodyne_system(f, polar_grid(R, n_r, n_phi));
    const RoundTrip rt = roundtrip(sys, rho.op());
    out.push_back({R, rt.hs_error, fidelity(rho, rt.reconstructed)});
  }
  return out;
}

}  // namespace coorbit::cv
