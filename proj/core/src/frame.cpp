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

#include "coorbit/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "coorbit/parallel.hpp"

namespace coorbit {

IndexGrid::IndexGrid(std::string id, std::vector<std::vector<double>> nodes,
                     std::vector<double> weights)
    : id_(std::move(id)), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size()) {
    throw DimensionError("IndexGrid: node and weight counts differ");
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw DomainError("IndexGrid: weights must be positive and finite");
    }
  }
  for (const auto& node : nodes_) {
    for (double c : node) {
      if (!std::isfinite(c)) throw DomainError("IndexGrid: node coordinates must be finite");
    }
  }
}

double IndexGrid::total_weight() const {
  CompensatedScalar acc;
  for (double w : weights_) acc.add(w);
  return acc.result().real();
}

IndexGrid IndexGrid::with_scaled_weights(double factor, std::string new_id) const {
  std::vector<double> w = weights_;
  for (double& x : w) x *= factor;
  return IndexGrid(std::move(new_id), nodes_, std::move(w));
}

std::vector<cplx> OperatorFamily::pair(const Operator& o) const {
  std::vector<cplx> out(size());
  parallel_for(size(), [&](std::size_t i) { out[i] = hs_inner(at(i), o); });
  return out;
}

Operator OperatorFamily::combine(std::span<const cplx> coeffs) const {
  if (coeffs.size() != size()) throw DimensionError("OperatorFamily::combine: size mismatch");
  CompensatedSum acc(dim());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != cplx(0.0)) acc.add(coeffs[i], at(i).matrix());
  }
  return Operator(acc.result());
}

CachedFamily::CachedFamily(std::size_t n, const std::function<Operator(std::size_t)>& generator)
    : ops_(n) {
  parallel_for(n, [&](std::size_t i) { ops_[i] = generator(i); });
  if (n == 0) throw DimensionError("CachedFamily: empty family");
  dim_ = ops_.front().dim();
  for (const Operator& op : ops_) {
    if (op.dim() != dim_) throw DimensionError("CachedFamily: members differ in dimension");
  }
}

CachedFamily::CachedFamily(std::vector<Operator> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw DimensionError("CachedFamily: empty family");
  dim_ = ops_.front().dim();
  for (const Operator& op : ops_) {
    if (op.dim() != dim_) throw DimensionError("CachedFamily: members differ in dimension");
  }
}

std::vector<cplx> CachedFamily::pair(const Operator& o) const {
  if (o.dim() != dim_) throw DimensionError("CachedFamily::pair: dimension mismatch");
  std::vector<cplx> out(ops_.size());
  parallel_for(ops_.size(), [&](std::size_t i) { out[i] = hs_inner(ops_[i], o); });
  return out;
}

Operator CachedFamily::combine(std::span<const cplx> coeffs) const {
  if (coeffs.size() != ops_.size()) throw DimensionError("CachedFamily::combine: size mismatch");
  CompensatedSum acc(dim_);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != cplx(0.0)) acc.add(coeffs[i], ops_[i].matrix());
  }
  return Operator(acc.result());
}

ProductFamily::ProductFamily(std::shared_ptr<const OperatorFamily> first,
                             std::shared_ptr<const OperatorFamily> second)
    : first_(std::move(first)), second_(std::move(second)) {
  if (!first_ || !second_) throw DimensionError("ProductFamily: null factor");
}

Operator ProductFamily::at(std::size_t i) const {
  const std::size_t nb = second_->size();
  return tensor(first_->at(i / nb), second_->at(i % nb));
}

std::vector<cplx> ProductFamily::pair(const Operator& o) const {
  if (o.dim() != dim()) throw DimensionError("ProductFamily::pair: dimension mismatch");
  const Index da = first_->dim();
  const Index db = second_->dim();
  const std::size_t na = first_->size();
  const std::size_t nb = second_->size();
  std::vector<cplx> out(na * nb);
  // <a (x) b, o> = <a, M_b> with M_b[p,q] = sum_rs conj(b[r,s]) o[p db + r, q db + s].
  parallel_for(nb, [&](std::size_t j) {
    const Matrix b = second_->at(j).matrix();
    Matrix partial(da, da);
    for (Index q = 0; q < da; ++q) {
      for (Index p = 0; p < da; ++p) {
        partial(p, q) = (b.array().conjugate() * o.matrix().block(p * db, q * db, db, db).array()).sum();
      }
    }
    const Operator m(std::move(partial));
    for (std::size_t i = 0; i < na; ++i) out[i * nb + j] = hs_inner(first_->at(i), m);
  });
  return out;
}

Operator ProductFamily::combine(std::span<const cplx> coeffs) const {
  if (coeffs.size() != size()) throw DimensionError("ProductFamily::combine: size mismatch");
  const std::size_t na = first_->size();
  const std::size_t nb = second_->size();
  std::vector<Operator> slices(nb);
  parallel_for(nb, [&](std::size_t j) {
    std::vector<cplx> column(na);
    for (std::size_t i = 0; i < na; ++i) column[i] = coeffs[i * nb + j];
    slices[j] = first_->combine(column);
  });
  CompensatedSum acc(dim());
  for (std::size_t j = 0; j < nb; ++j) acc.add(tensor(slices[j], second_->at(j)).matrix());
  return Operator(acc.result());
}

TomographicSystem::TomographicSystem(Parts parts) : parts_(std::move(parts)) {
  if (!parts_.analysis || !parts_.synthesis) {
    throw DimensionError("TomographicSystem: analysis and synthesis families are required");
  }
  const Index d = parts_.vacuum.dim();
  if (d == 0) throw DimensionError("TomographicSystem: vacuum must be set");
  if (parts_.analysis->dim() != d || parts_.synthesis->dim() != d ||
      parts_.test_functional.dim() != d) {
    throw DimensionError("TomographicSystem: members differ in dimension");
  }
  const std::size_t n = parts_.grid.size();
  if (parts_.analysis->size() != n || parts_.synthesis->size() != n) {
    throw DimensionError("TomographicSystem: family sizes must match the grid");
  }
  const cplx p = parts_.normalization;
  if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
    throw DomainError("TomographicSystem: normalization must be finite");
  }
}

Operator TomographicSystem::act(std::span<const double> coords, const Operator& o) const {
  if (!parts_.act) throw DomainError("TomographicSystem::act: no group action attached");
  if (o.dim() != dim()) throw DimensionError("TomographicSystem::act: dimension mismatch");
  return parts_.act(coords, o);
}

Operator TomographicSystem::act(std::size_t node, const Operator& o) const {
  return act(parts_.grid.coords(node), o);
}

TomographicSystem TomographicSystem::with_grid(IndexGrid grid) const {
  if (grid.size() != parts_.grid.size()) {
    throw DimensionError("TomographicSystem::with_grid: node count must not change");
  }
  Parts p = parts_;
  p.grid = std::move(grid);
  return TomographicSystem(std::move(p));
}

TomographicSystem TomographicSystem::with_vacuum(Operator vacuum) const {
  if (vacuum.dim() != dim()) throw DimensionError("with_vacuum: dimension mismatch");
  Parts p = parts_;
  p.vacuum = std::move(vacuum);
  const TomographicSystem& self = *this;
  p.synthesis = std::make_shared<CachedFamily>(
      parts_.grid.size(), [&](std::size_t i) { return self.act(i, p.vacuum); });
  return TomographicSystem(std::move(p));
}

SampleVector analyze(const TomographicSystem& sys, const Operator& o) {
  if (o.dim() != sys.dim()) {
    std::ostringstream msg;
    msg << "analyze: operator dimension " << o.dim() << " does not match system dimension "
        << sys.dim();
    throw DimensionError(msg.str());
  }
  return {sys.grid().id(), sys.analysis().pair(o)};
}

Operator synthesize(const TomographicSystem& sys, const SampleVector& s) {
  const IndexGrid& grid = sys.grid();
  if (s.values.size() != grid.size() || s.grid_id != grid.id()) {
    throw DimensionError("synthesize: samples are not aligned with the system grid '" +
                         grid.id() + "'");
  }
  std::vector<cplx> coeffs(s.values.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = grid.weight(i) * s.values[i];
  return sys.synthesis().combine(coeffs);
}

RoundTrip roundtrip(const TomographicSystem& sys, const Operator& o) {
  const cplx p = sys.normalization();
  if (!(std::abs(p) >= kAdmissibilityFloor)) {
    throw NonAdmissibleError("roundtrip: normalization constant vanishes; supply a probe-derived "
                             "normalization");
  }
  Operator rec = synthesize(sys, analyze(sys, o));
  rec *= 1.0 / p;
  const double err = (rec - o).hs_norm();
  return {std::move(rec), err};
}

namespace {

// Tr(T(x_i) b L) for every node. When b is the vacuum the atoms are the
// synthesis family and Tr(X L) = conj(<X, L^dagger>) reuses its pairing.
std::vector<cplx> traces_of_atoms(const TomographicSystem& sys, const Operator& b,
                                  const Operator& l) {
  const IndexGrid& grid = sys.grid();
  if (b.matrix() == sys.vacuum().matrix()) {
    std::vector<cplx> out = sys.synthesis().pair(l.adjoint());
    for (cplx& v : out) v = std::conj(v);
    return out;
  }
  std::vector<cplx> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    out[i] = (sys.act(i, b).matrix() * l.matrix()).trace();
  });
  return out;
}

}  // namespace

Admissibility admissibility_constant(const TomographicSystem& sys, const Operator& b0_prime,
                                     const Operator& l0_prime) {
  require_same_dim(sys.vacuum(), b0_prime, "admissibility_constant");
  require_same_dim(sys.vacuum(), l0_prime, "admissibility_constant");
  const std::vector<cplx> left = sys.analysis().pair(sys.vacuum());
  const IndexGrid& grid = sys.grid();
  const std::vector<cplx> right = traces_of_atoms(sys, b0_prime, l0_prime);
  CompensatedScalar acc;
  for (std::size_t i = 0; i < grid.size(); ++i) acc.add(grid.weight(i) * left[i] * right[i]);

  Admissibility out;
  out.constant = acc.result();
  const bool finite = std::isfinite(out.constant.real()) && std::isfinite(out.constant.imag());
  out.admissible = finite && std::abs(out.constant) >= kAdmissibilityFloor;
  const cplx denom = (sys.vacuum().matrix() * l0_prime.matrix()).trace();
  if (finite && std::abs(denom) >= kAdmissibilityFloor) out.normalization = out.constant / denom;
  return out;
}

cplx singular_admissibility(const TomographicSystem& sys, const Operator& b0_ext,
                            const Operator& probe) {
  require_same_dim(sys.vacuum(), probe, "singular_admissibility");
  require_same_dim(sys.vacuum(), b0_ext, "singular_admissibility");
  const std::vector<cplx> samples = sys.analysis().pair(probe);
  const IndexGrid& grid = sys.grid();
  const std::vector<cplx> paired = traces_of_atoms(sys, b0_ext, sys.test_functional());
  CompensatedScalar acc;
  for (std::size_t i = 0; i < grid.size(); ++i) acc.add(grid.weight(i) * samples[i] * paired[i]);
  const cplx c = acc.result();
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw DomainError("singular_admissibility: quadrature is not finite");
  }
  return c;
}

std::vector<VacuumCheck> check_vacuum_invariance(const TomographicSystem& sys,
                                                 std::span<const Operator> subgroup,
                                                 ActionKind kind) {
  const Operator& b0 = sys.vacuum();
  const cplx norm2 = hs_inner(b0, b0);
  std::vector<VacuumCheck> out;
  out.reserve(subgroup.size());
  for (const Operator& h : subgroup) {
    const Operator moved = kind == ActionKind::left ? h * b0 : h * b0 * h.adjoint();
    const cplx chi = std::abs(norm2) > 0.0 ? hs_inner(b0, moved) / norm2 : cplx(0.0);
    out.push_back({chi, (moved - chi * b0).hs_norm()});
  }
  return out;
}

std::vector<VacuumCheck> check_vacuum_invariance(const TomographicSystem& sys,
                                                 std::span<const Operator> subgroup) {
  return check_vacuum_invariance(sys, subgroup, sys.action_kind());
}

double coorbit_norm(const SampleVector& s, const IndexGrid& grid, double d) {
  if (!(d >= 1.0)) throw DomainError("coorbit_norm: exponent d must be >= 1");
  if (s.values.size() != grid.size()) {
    throw DimensionError("coorbit_norm: samples are not aligned with the grid");
  }
  if (std::isinf(d)) {
    double worst = 0.0;
    for (const cplx& v : s.values) worst = std::max(worst, std::abs(v));
    return worst;
  }
  CompensatedScalar acc;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    acc.add(grid.weight(i) * std::pow(std::abs(s.values[i]), d));
  }
  return std::pow(acc.result().real(), 1.0 / d);
}

namespace {

void require_superoperator_size(const TomographicSystem& sys, Index limit) {
  const Index n2 = sys.dim() * sys.dim();
  if (n2 > limit) {
    std::ostringstream msg;
    msg << "frame_bounds: superoperator dimension " << n2 << " exceeds the limit " << limit
        << "; use a smaller truncation";
    throw DimensionError(msg.str());
  }
}

Eigen::Map<const Eigen::VectorXcd> vec(const Operator& o) {
  return {o.matrix().data(), o.matrix().size()};
}

// sum_i w_i vec(x_i) vec(y_i)^dagger, accumulated in node blocks.
Matrix outer_sum(const OperatorFamily& xs, const OperatorFamily& ys, const IndexGrid& grid) {
  const Index n2 = xs.dim() * xs.dim();
  const std::size_t n = grid.size();
  constexpr std::size_t kBlock = 256;
  Matrix acc = Matrix::Zero(n2, n2);
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t stop = std::min(n, start + kBlock);
    const Index cols = static_cast<Index>(stop - start);
    Matrix x(n2, cols);
    Matrix y(n2, cols);
    parallel_for(stop - start, [&](std::size_t k) {
      const std::size_t i = start + k;
      x.col(static_cast<Index>(k)) = grid.weight(i) * vec(xs.at(i));
      y.col(static_cast<Index>(k)) = vec(ys.at(i));
    });
    acc.noalias() += x * y.adjoint();
  }
  return acc;
}

}  // namespace

Matrix frame_superoperator(const TomographicSystem& sys) {
  const cplx p = sys.normalization();
  if (!(std::abs(p) >= kAdmissibilityFloor)) {
    throw NonAdmissibleError("frame_superoperator: normalization constant vanishes");
  }
  return outer_sum(sys.synthesis(), sys.analysis(), sys.grid()) / p;
}

FrameReport frame_bounds(const TomographicSystem& sys, double d, const FrameOptions& options) {
  if (!(d >= 1.0)) throw DomainError("frame_bounds: exponent d must be >= 1");
  FrameReport report;
  report.admissibility =
      admissibility_constant(sys, sys.vacuum(), sys.test_functional()).constant;

  if (d == 2.0) {
    require_superoperator_size(sys, options.max_superoperator_dim);
    const Matrix f = frame_superoperator(sys);
    const Index n2 = f.rows();
    report.asymmetry = (f - f.adjoint()).norm();
    report.reconstruction_residual = (f - Matrix::Identity(n2, n2)).norm();
    const Matrix herm = 0.5 * (f + f.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    const double lo = solver.eigenvalues()(0);
    const double hi = solver.eigenvalues()(n2 - 1);
    report.A = std::sqrt(std::max(lo, 0.0));
    report.B = std::sqrt(std::max(hi, 0.0));

    // Analysis-side Gram superoperator sum_i w_i |y_i>><<y_i|.
    const Matrix gram = outer_sum(sys.analysis(), sys.analysis(), sys.grid());
    Eigen::SelfAdjointEigenSolver<Matrix> gsolver(0.5 * (gram + gram.adjoint()),
                                                  Eigen::EigenvaluesOnly);
    report.gram_spectrum_min = gsolver.eigenvalues()(0);
    report.gram_spectrum_max = gsolver.eigenvalues()(n2 - 1);
    report.certified = true;
    return report;
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Index n = sys.dim();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int k = 0; k < options.samples; ++k) {
    Matrix m(n, n);
    for (Index j = 0; j < m.size(); ++j) m.data()[j] = cplx(normal(rng), normal(rng));
    m /= m.norm();
    const double ratio = coorbit_norm(analyze(sys, Operator(std::move(m))), sys.grid(), d);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  report.A = lo;
  report.B = hi;
  report.gram_spectrum_min = lo * lo;
  report.gram_spectrum_max = hi * hi;
  report.certified = false;
  return report;
}

}  // namespace coorbit
