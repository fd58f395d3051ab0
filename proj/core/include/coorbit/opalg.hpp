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

#ifndef COORBIT_OPALG_HPP
#define COORBIT_OPALG_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace coorbit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Thrown when two operands live on Hilbert spaces of different dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an input violates a numeric contract (non-finite entries,
/// non-Hermitian input to a Hermitian routine, invalid density matrix, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-12;

/// Dense complex square matrix acting on a dim-dimensional Hilbert space.
///
/// Construction from a raw matrix validates shape and finiteness. Arithmetic
/// between operators checks dimensions and does not re-validate finiteness.
class Operator {
 public:
  Operator() = default;
  explicit Operator(Matrix entries);

  static Operator identity(Index dim);
  static Operator zero(Index dim);

  Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  cplx operator()(Index row, Index col) const { return entries_(row, col); }

  cplx trace() const { return entries_.trace(); }
  Operator adjoint() const;
  double hs_norm() const { return entries_.norm(); }
  bool is_finite() const;
  /// max |a_ij - conj(a_ji)|
  double hermiticity_defect() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(cplx scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  struct Unchecked {};
  Operator(Matrix entries, Unchecked) : entries_(std::move(entries)) {}

  Matrix entries_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
///
/// Inputs within tolerance are symmetrized, rho <- (rho + rho^dagger) / 2.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Operator& op);

  /// |psi><psi| / <psi|psi>
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return op_.dim(); }
  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }

 private:
  Operator op_;
};

/// Tr(a^dagger b).
cplx hs_inner(const Operator& a, const Operator& b);

/// Matrix exponential (scaling and squaring with Pade approximants).
Operator matrix_exp(const Operator& a);
Matrix matrix_exp(const Matrix& a);

/// Kronecker product a (x) b.
Operator tensor(const Operator& a, const Operator& b);

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns are eigenvectors
};

/// Eigendecomposition of a Hermitian operator (defect <= 1e-10 required).
HermitianEigen eig_hermitian(const Operator& a);
HermitianEigen eig_hermitian(const Matrix& a);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Fidelity against a reconstructed operator that need not be a valid state.
/// The estimate is first mapped to the nearest-spectrum state: Hermitian
/// part, negative eigenvalues set to zero, unit trace. Returns 0 when nothing
/// positive remains.
double fidelity(const DensityMatrix& rho, const Operator& estimate);

/// Neumaier-compensated accumulator for sums of complex matrices. Summation
/// order is the order of add() calls.
class CompensatedSum {
 public:
  CompensatedSum(Index rows, Index cols);
  explicit CompensatedSum(Index dim) : CompensatedSum(dim, dim) {}

  void add(const Matrix& term);
  void add(cplx coeff, const Matrix& term);
  Matrix result() const;

 private:
  void accumulate(Index k, double x);

  Eigen::VectorXd sum_;
  Eigen::VectorXd comp_;
  Index rows_;
  Index cols_;
};

/// Scalar Neumaier sum.
class CompensatedScalar {
 public:
  void add(cplx x);
  cplx result() const { return {re_ + cre_, im_ + cim_}; }

 private:
  double re_ = 0, im_ = 0, cre_ = 0, cim_ = 0;
};

void require_same_dim(const Operator& a, const Operator& b, const char* what);

}  // namespace coorbit

#endif  // COORBIT_OPALG_HPP
