#pragma once

// The building block A(n, (a+1)n): continuous M_{n'}-valued functions f on
// [0,1] with f(0) = diag(c, ..., c, 0_n) (a copies of c) and
// f(1) = diag(c, ..., c) (a+1 copies), for a boundary datum c in M_n.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <variant>

#include "razak/numkernel.hpp"

namespace razak {

struct BuildingBlock {
  std::size_t n = 1;  // size of the fibre at infinity
  std::size_t a = 1;  // multiplicity parameter, n' = (a+1)·n

  std::size_t n_prime() const { return (a + 1) * n; }

  friend bool operator==(const BuildingBlock&, const BuildingBlock&) = default;
};

/// Checked constructor: n ≥ 1, a ≥ 1.
BuildingBlock make_block(std::size_t n, std::size_t a);

std::string to_string(const BuildingBlock& b);

/// diag(c ×a, 0_n), the value forced at t = 0.
CMatrix pattern_at_zero(const BuildingBlock& b, const CMatrix& c);
/// diag(c ×(a+1)), the value forced at t = 1.
CMatrix pattern_at_one(const BuildingBlock& b, const CMatrix& c);

/// An element of a building block: values on a uniform grid plus the exact
/// boundary datum c. Elements built from a closed form keep an evaluator, so
/// off-grid points (such as branch values ξ_k(x)) are evaluated exactly;
/// sample-only elements interpolate linearly between grid points.
///
/// Values are immutable and cheap to copy.
class BlockElement {
 public:
  using Evaluator = std::function<CMatrix(double)>;

  BlockElement() = default;

  /// Raw samples, stored as given (validate_element reports any endpoint defect).
  static BlockElement from_samples(const BuildingBlock& block, MatrixGridFunction samples,
                                   CMatrix boundary);

  /// The evaluator is used at every point, endpoints included.
  static BlockElement from_evaluator(const BuildingBlock& block, std::size_t grid_size,
                                     CMatrix boundary, Evaluator f);

  /// The evaluator is used on (0,1); endpoint values are synthesized from the
  /// boundary datum, so the boundary conditions hold exactly.
  static BlockElement from_interior(const BuildingBlock& block, std::size_t grid_size,
                                    CMatrix boundary, Evaluator interior);

  const BuildingBlock& block() const { return block_; }
  std::size_t grid_size() const { return grid_size_; }
  std::size_t dim() const { return block_.n_prime(); }
  const CMatrix& boundary() const { return boundary_; }
  bool has_evaluator() const { return static_cast<bool>(eval_); }

  double grid_point(std::size_t j) const { return MatrixGridFunction::point(grid_size_, j); }

  /// f(t) for any t in [0,1].
  CMatrix at(double t) const;

  /// f(t_j).
  CMatrix sample(std::size_t j) const;

  /// All grid samples (tabulated on demand for evaluator-backed elements).
  MatrixGridFunction samples() const;

  /// Copy with every grid sample cached; the evaluator is kept for off-grid points.
  BlockElement materialize() const;

 private:
  BuildingBlock block_;
  std::size_t grid_size_ = 0;
  CMatrix boundary_;
  std::shared_ptr<const MatrixGridFunction> samples_;
  std::shared_ptr<const Evaluator> eval_;
};

/// Max of ‖f(0) − diag(c×a, 0_n)‖_F and ‖f(1) − diag(c×(a+1))‖_F.
double validate_element(const BlockElement& e);

/// h(t) = diag(1_n ×a, t·1_n), boundary datum 1_n.
BlockElement canonical_h(const BuildingBlock& b, std::size_t grid_size);

BlockElement zero_element(const BuildingBlock& b, std::size_t grid_size);

struct AtInfinity {};
using EvalPoint = std::variant<double, AtInfinity>;

/// ev_s for s in [0,1], or ev_∞ (the boundary datum c).
CMatrix evaluate(const BlockElement& e, EvalPoint where);

/// Tolerance for the cone condition g(0) = (a/(a+1))·g(1).
inline constexpr double kConeTol = 1e-9;

/// ψ(g)(t) = (a+1)/(a+t)·diag(g(t)·1_n ×a, t·g(t)·1_n), with boundary datum
/// g(1)·1_n. Satisfies tr⊗δ_t(ψ(g)) = g(t). Throws NotInCone when the cone
/// condition fails beyond kConeTol.
BlockElement psi_embed(const BuildingBlock& b, const RealGridFunction& g);
BlockElement psi_embed(const BuildingBlock& b, std::size_t grid_size,
                       const std::function<double(double)>& g);

// Pointwise algebra. Operands must share block and grid.
BlockElement multiply(const BlockElement& x, const BlockElement& y);
BlockElement add(const BlockElement& x, const BlockElement& y);
BlockElement scale(const BlockElement& x, Complex s);
BlockElement adjoint(const BlockElement& x);

/// g applied pointwise to a self-adjoint element (and to its boundary datum).
/// The result lies in the block when g(0) = 0.
BlockElement apply_calculus(const BlockElement& e, const std::function<double(double)>& g,
                            double tol = kHermitianTol);

/// f(t) = (1−t)·diag(c×a,0) + t·diag(c×(a+1)) + t(1−t)·(R0 + t·R1) with random
/// c, R0, R1 (entries uniform in [−1,1], R scaled by 1/n'). Self-adjoint if requested.
BlockElement random_element(const BuildingBlock& b, std::size_t grid_size, std::mt19937_64& rng,
                            bool self_adjoint = false);

struct ProjectionVerdict {
  enum class Kind { NotAlmostProjection, NearZero };
  enum class Reason { None, Defect, Tie, RankJump, EndpointMismatch };

  Kind kind = Kind::NotAlmostProjection;
  Reason reason = Reason::None;
  double bound = 0.0;   // NearZero: grid sup norm of the input, all eigenvalues below the cut
  double defect = 0.0;  // max(‖e² − e‖, ‖e − e*‖) over the grid
  std::size_t rank_at_zero = 0;
  std::size_t rank_at_one = 0;
  std::size_t rank_at_infinity = 0;
  std::optional<std::size_t> jump_index;  // first grid index where the rank changes
};

/// Finite-stage stable-projectionlessness check: an almost-projection in the
/// block must have constant spectral-cut rank r(t), but the endpoints force
/// r(0) = a·r_∞ and r(1) = (a+1)·r_∞, hence r ≡ 0.
ProjectionVerdict certify_no_projection(const BlockElement& e, double eps);

const char* to_string(ProjectionVerdict::Kind kind);
const char* to_string(ProjectionVerdict::Reason reason);

}  // namespace razak
