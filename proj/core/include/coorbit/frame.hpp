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

#ifndef COORBIT_FRAME_HPP
#define COORBIT_FRAME_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coorbit/opalg.hpp"

namespace coorbit {

/// Thrown by roundtrip() when the system's admissibility constant vanishes or
/// is not finite.
class NonAdmissibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature nodes over the homogeneous space together with the measure
/// weights. Each node carries its full group-coordinate tuple; node order is
/// part of the grid's identity.
class IndexGrid {
 public:
  IndexGrid() = default;
  IndexGrid(std::string id, std::vector<std::vector<double>> nodes, std::vector<double> weights);

  const std::string& id() const { return id_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> coords(std::size_t i) const { return nodes_.at(i); }
  double weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<std::vector<double>>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_weight() const;

  /// Same nodes, weights multiplied by `factor` (> 0).
  IndexGrid with_scaled_weights(double factor, std::string new_id) const;

  friend bool operator==(const IndexGrid&, const IndexGrid&) = default;

 private:
  std::string id_;
  std::vector<std::vector<double>> nodes_;
  std::vector<double> weights_;
};

/// Samples of a wavelet transform, aligned with the nodes of one grid.
struct SampleVector {
  std::string grid_id;
  std::vector<cplx> values;

  friend bool operator==(const SampleVector&, const SampleVector&) = default;
};

/// An indexed family of operators {y_i}. pair() and combine() define the two
/// halves of the transform pair; structured families override them.
class OperatorFamily {
 public:
  virtual ~OperatorFamily() = default;

  virtual std::size_t size() const = 0;
  virtual Index dim() const = 0;
  virtual Operator at(std::size_t i) const = 0;

  /// out[i] = hs_inner(at(i), o) = Tr(o at(i)^dagger).
  virtual std::vector<cplx> pair(const Operator& o) const;

  /// sum_i coeffs[i] at(i), compensated, in index order.
  virtual Operator combine(std::span<const cplx> coeffs) const;
};

/// Family materialized once at construction (in parallel) and then immutable.
class CachedFamily final : public OperatorFamily {
 public:
  CachedFamily(std::size_t n, const std::function<Operator(std::size_t)>& generator);
  explicit CachedFamily(std::vector<Operator> ops);

  std::size_t size() const override { return ops_.size(); }
  Index dim() const override { return dim_; }
  Operator at(std::size_t i) const override { return ops_.at(i); }
  const Operator& ref(std::size_t i) const { return ops_.at(i); }

  std::vector<cplx> pair(const Operator& o) const override;
  Operator combine(std::span<const cplx> coeffs) const override;

 private:
  std::vector<Operator> ops_;
  Index dim_ = 0;
};

/// Tensor-product family {a_i (x) b_j} indexed by i * b.size() + j. pair and
/// combine contract one factor at a time instead of forming the Kronecker
/// products.
class ProductFamily final : public OperatorFamily {
 public:
  ProductFamily(std::shared_ptr<const OperatorFamily> first,
                std::shared_ptr<const OperatorFamily> second);

  std::size_t size() const override { return first_->size() * second_->size(); }
  Index dim() const override { return first_->dim() * second_->dim(); }
  Operator at(std::size_t i) const override;

  std::vector<cplx> pair(const Operator& o) const override;
  Operator combine(std::span<const cplx> coeffs) const override;

 private:
  std::shared_ptr<const OperatorFamily> first_;
  std::shared_ptr<const OperatorFamily> second_;
};

/// T(x) O for the group element with the given coordinates.
using GroupAction = std::function<Operator(std::span<const double>, const Operator&)>;

enum class ActionKind { left, adjoint };

/// The data (X, dmu, U, l0, b0, P) of one tomography: analysis functionals
/// y_i (with <O, y_i> = Tr(O y_i^dagger)), synthesis atoms T(x_i) b0, the
/// representation itself, vacuum b0, test functional L0 (<O, l0> = Tr(O L0))
/// and the normalization P.
class TomographicSystem {
 public:
  struct Parts {
    std::string name;
    IndexGrid grid;
    std::shared_ptr<const OperatorFamily> analysis;
    std::shared_ptr<const OperatorFamily> synthesis;
    GroupAction act;
    ActionKind action_kind = ActionKind::left;
    Operator vacuum;
    Operator test_functional;
    cplx normalization{1.0, 0.0};
  };

  explicit TomographicSystem(Parts parts);

  const std::string& name() const { return parts_.name; }
  Index dim() const { return parts_.vacuum.dim(); }
  const IndexGrid& grid() const { return parts_.grid; }
  const OperatorFamily& analysis() const { return *parts_.analysis; }
  const OperatorFamily& synthesis() const { return *parts_.synthesis; }
  std::shared_ptr<const OperatorFamily> analysis_family() const { return parts_.analysis; }
  std::shared_ptr<const OperatorFamily> synthesis_family() const { return parts_.synthesis; }
  Operator act(std::size_t node, const Operator& o) const;
  Operator act(std::span<const double> coords, const Operator& o) const;
  ActionKind action_kind() const { return parts_.action_kind; }
  const Operator& vacuum() const { return parts_.vacuum; }
  const Operator& test_functional() const { return parts_.test_functional; }
  cplx normalization() const { return parts_.normalization; }

  /// Same families on a grid with identical node count (weights may differ).
  TomographicSystem with_grid(IndexGrid grid) const;
  /// Rebuilds the synthesis family as T(x_i) vacuum.
  TomographicSystem with_vacuum(Operator vacuum) const;

 private:
  Parts parts_;
};

/// values[i] = Tr(o y_i^dagger).
SampleVector analyze(const TomographicSystem& sys, const Operator& o);

/// sum_i w_i values[i] T(x_i) b0 in node order, compensated.
Operator synthesize(const TomographicSystem& sys, const SampleVector& s);

struct RoundTrip {
  Operator reconstructed;
  double hs_error = 0.0;
};

/// synthesize(analyze(o)) / P. Throws NonAdmissibleError for |P| < 1e-14.
RoundTrip roundtrip(const TomographicSystem& sys, const Operator& o);

struct Admissibility {
  cplx constant;                      // C(b0, b0')
  std::optional<cplx> normalization;  // P = C / <b0, l0'> when defined
  bool admissible = false;            // finite and |C| >= 1e-14
};

inline constexpr double kAdmissibilityFloor = 1e-14;

/// C(b0, b0') = sum_i w_i <T(x_i^-1) b0, l0> <T(x_i) b0', l0'>.
Admissibility admissibility_constant(const TomographicSystem& sys, const Operator& b0_prime,
                                     const Operator& l0_prime);

/// C(b0, p0) = < sum_i w_i <T(x_i^-1) p0, l0> T(x_i) b0_ext , l0 >.
cplx singular_admissibility(const TomographicSystem& sys, const Operator& b0_ext,
                            const Operator& probe);

struct VacuumCheck {
  cplx character;   // chi(h) = <b0, U(h) b0> / <b0, b0>
  double residual;  // || U(h) b0 - chi(h) b0 ||_HS
};

/// Applies each unitary h to the vacuum (left: h b0, adjoint: h b0 h^dagger).
std::vector<VacuumCheck> check_vacuum_invariance(const TomographicSystem& sys,
                                                 std::span<const Operator> subgroup,
                                                 ActionKind kind);
std::vector<VacuumCheck> check_vacuum_invariance(const TomographicSystem& sys,
                                                 std::span<const Operator> subgroup);

/// (sum_i w_i |v_i|^d)^(1/d); d = infinity gives max_i |v_i|.
double coorbit_norm(const SampleVector& s, const IndexGrid& grid, double d);

struct FrameReport {
  double A = 0.0;
  double B = 0.0;
  /// Extreme eigenvalues of the analysis Gram superoperator sum_i w_i |y_i>><<y_i|.
  double gram_spectrum_min = 0.0;
  double gram_spectrum_max = 0.0;
  cplx admissibility;
  /// ||F - Id||_F where F = S W / P is the reconstruction superoperator.
  double reconstruction_residual = 0.0;
  /// ||F - F^dagger||_F.
  double asymmetry = 0.0;
  /// true for d = 2 (spectral certificate), false for sampled estimates.
  bool certified = false;
};

struct FrameOptions {
  Index max_superoperator_dim = 4096;
  int samples = 256;
  std::uint64_t seed = 0x5eed;
};

/// Frame bounds of the transform pair. For d = 2 the frame superoperator
/// F[O] = (1/P) sum_i w_i <O, y_i> T(x_i) b0 is assembled as a dim^2 x dim^2
/// matrix; A^2 and B^2 are the extreme eigenvalues of its Hermitian part.
/// For d != 2, A and B are sampled ratios ||W O||_d / ||O||_HS.
FrameReport frame_bounds(const TomographicSystem& sys, double d, const FrameOptions& options = {});

/// Column-stacking vectorization and the corresponding dim^2 x dim^2 matrix
/// of the superoperator O -> F[O] (1/P included).
Matrix frame_superoperator(const TomographicSystem& sys);

}  // namespace coorbit

#endif  // COORBIT_FRAME_HPP
