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

#include "coorbit/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace coorbit {

namespace {

double neumaier_step(double& sum, double& comp, double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
  return t;
}

double hermiticity_defect_of(const Matrix& m) {
  double worst = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

}  // namespace

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionError(msg.str());
  }
}

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionError("Operator: matrix must be square");
  }
  if (entries_.rows() == 0) {
    throw DimensionError("Operator: dimension must be positive");
  }
  if (!is_finite()) {
    throw DomainError("Operator: entries must be finite");
  }
}

Operator Operator::identity(Index dim) {
  if (dim <= 0) throw DimensionError("Operator::identity: dimension must be positive");
  return Operator(Matrix::Identity(dim, dim), Unchecked{});
}

Operator Operator::zero(Index dim) {
  if (dim <= 0) throw DimensionError("Operator::zero: dimension must be positive");
  return Operator(Matrix::Zero(dim, dim), Unchecked{});
}

Operator Operator::adjoint() const { return Operator(entries_.adjoint(), Unchecked{}); }

bool Operator::is_finite() const {
  const double* raw = reinterpret_cast<const double*>(entries_.data());
  return std::all_of(raw, raw + 2 * entries_.size(), [](double x) { return std::isfinite(x); });
}

double Operator::hermiticity_defect() const { return hermiticity_defect_of(entries_); }

Operator& Operator::operator+=(const Operator& other) {
  require_same_dim(*this, other, "Operator::operator+=");
  entries_ += other.entries_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_dim(*this, other, "Operator::operator-=");
  entries_ -= other.entries_;
  return *this;
}

Operator& Operator::operator*=(cplx scale) {
  entries_ *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "Operator::operator*");
  return Operator(a.entries_ * b.entries_, Operator::Unchecked{});
}

DensityMatrix::DensityMatrix(const Operator& op) {
  if (op.dim() == 0) throw DimensionError("DensityMatrix: empty operator");
  const double herm = op.hermiticity_defect();
  if (herm > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "DensityMatrix: not Hermitian (defect " << herm << ")";
    throw DomainError(msg.str());
  }
  Matrix sym = 0.5 * (op.matrix() + op.matrix().adjoint());
  const double tr = sym.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace " << tr << " differs from 1";
    throw DomainError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()(0) < -kPositivityTolerance) {
    std::ostringstream msg;
    msg << "DensityMatrix: negative eigenvalue " << solver.eigenvalues()(0);
    throw DomainError(msg.str());
  }
  op_ = Operator(std::move(sym));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("DensityMatrix::pure: state vector must be nonzero and finite");
  }
  const Vector unit = psi / norm;
  Matrix proj = unit * unit.adjoint();
  // Rank-1 projector: enforce exact Hermiticity and trace before validation.
  proj = 0.5 * (proj + proj.adjoint()).eval();
  proj /= proj.trace().real();
  return DensityMatrix(Operator(std::move(proj)));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(Operator::identity(dim) * cplx(1.0 / static_cast<double>(dim)));
}

cplx hs_inner(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "hs_inner");
  return (a.matrix().array().conjugate() * b.matrix().array()).sum();
}

Matrix matrix_exp(const Matrix& a) {
  Matrix out = a.exp();
  return out;
}

Operator matrix_exp(const Operator& a) { return Operator(matrix_exp(a.matrix())); }

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(Matrix(Eigen::kroneckerProduct(a.matrix(), b.matrix())));
}

HermitianEigen eig_hermitian(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("eig_hermitian: matrix must be square");
  const double defect = hermiticity_defect_of(a);
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "eig_hermitian: input is not Hermitian (defect " << defect << ")";
    throw DomainError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (a + a.adjoint()));
  if (solver.info() != Eigen::Success) throw DomainError("eig_hermitian: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianEigen eig_hermitian(const Operator& a) { return eig_hermitian(a.matrix()); }

namespace {

Matrix psd_sqrt(const Matrix& herm) {
  const HermitianEigen eig = eig_hermitian(herm);
  const Eigen::VectorXd roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

double fidelity_of(const Matrix& rho, const Matrix& sigma) {
  const Matrix root = psd_sqrt(rho);
  Matrix inner = root * sigma * root;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(inner, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    acc += std::sqrt(std::max(solver.eigenvalues()(i), 0.0));
  }
  return std::clamp(acc * acc, 0.0, 1.0);
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.op(), sigma.op(), "fidelity");
  return fidelity_of(rho.matrix(), sigma.matrix());
}

double fidelity(const DensityMatrix& rho, const Operator& estimate) {
  require_same_dim(rho.op(), estimate, "fidelity");
  const HermitianEigen eig = eig_hermitian(0.5 * (estimate.matrix() + estimate.matrix().adjoint()));
  const Eigen::VectorXd kept = eig.values.cwiseMax(0.0);
  const double tr = kept.sum();
  if (!(tr > 0.0) || !std::isfinite(tr)) return 0.0;
  const Matrix sigma = eig.vectors * (kept / tr).cast<cplx>().asDiagonal() * eig.vectors.adjoint();
  return fidelity_of(rho.matrix(), sigma);
}

CompensatedSum::CompensatedSum(Index rows, Index cols)
    : sum_(Eigen::VectorXd::Zero(2 * rows * cols)),
      comp_(Eigen::VectorXd::Zero(2 * rows * cols)),
      rows_(rows),
      cols_(cols) {}

void CompensatedSum::accumulate(Index k, double x) { neumaier_step(sum_(k), comp_(k), x); }

void CompensatedSum::add(const Matrix& term) {
  if (term.rows() != rows_ || term.cols() != cols_) {
    throw DimensionError("CompensatedSum::add: shape mismatch");
  }
  const double* raw = reinterpret_cast<const double*>(term.data());
  for (Index k = 0; k < sum_.size(); ++k) accumulate(k, raw[k]);
}

void CompensatedSum::add(cplx coeff, const Matrix& term) {
  if (term.rows() != rows_ || term.cols() != cols_) {
    throw DimensionError("CompensatedSum::add: shape mismatch");
  }
  for (Index k = 0; k < term.size(); ++k) {
    const cplx v = coeff * term.data()[k];
    accumulate(2 * k, v.real());
    accumulate(2 * k + 1, v.imag());
  }
}

Matrix CompensatedSum::result() const {
  Matrix out(rows_, cols_);
  for (Index k = 0; k < out.size(); ++k) {
    out.data()[k] = cplx(sum_(2 * k) + comp_(2 * k), sum_(2 * k + 1) + comp_(2 * k + 1));
  }
  return out;
}

void CompensatedScalar::add(cplx x) {
  neumaier_step(re_, cre_, x.real());
  neumaier_step(im_, cim_, x.imag());
}

}  // namespace coorbit
