#pragma once

// Continuous unitary paths t ↦ u(t) on [0,1] used by the connecting maps.

#include <cstddef>
#include <memory>
#include <vector>

#include "razak/dyadic.hpp"
#include "razak/numkernel.hpp"
#include "razak/permutation.hpp"

namespace razak {

class UnitaryPath {
 public:
  virtual ~UnitaryPath() = default;
  virtual std::size_t dimension() const = 0;
  virtual CMatrix at(double t) const = 0;
};

using PathPtr = std::shared_ptr<const UnitaryPath>;

/// u(t) = exp(t·Log(P1·P0ᵀ))·P0 with the principal logarithm taken cycle by
/// cycle: on an L-cycle the shift has eigenvalues e^{2πik/L}, and the angle is
/// chosen in (−π, π]. u(0) = P0 and u(1) = P1 exactly.
class PermutationPath final : public UnitaryPath {
 public:
  PermutationPath(Permutation p0, Permutation p1);

  std::size_t dimension() const override { return p0_.size(); }
  CMatrix at(double t) const override;

  const Permutation& start() const { return p0_; }
  const Permutation& end() const { return p1_; }
  /// Cycles of σ1∘σ0⁻¹, the permutation carried by the path.
  const std::vector<std::vector<std::size_t>>& cycles() const { return cycles_; }

 private:
  Permutation p0_, p1_;
  std::vector<std::vector<std::size_t>> cycles_;
};

/// Same construction for arbitrary unitary endpoints: u1·u0* = V·diag(e^{iθ})·V*
/// by complex Schur form (diagonal for normal matrices), θ ∈ (−π, π].
class SpectralPath final : public UnitaryPath {
 public:
  SpectralPath(CMatrix u0, CMatrix u1);

  std::size_t dimension() const override { return static_cast<std::size_t>(u0_.rows()); }
  CMatrix at(double t) const override;

 private:
  CMatrix u0_, u1_, basis_;
  RVector angles_;
};

/// A stored path. Grid points return the stored samples; between grid points
/// the samples are interpolated linearly (no longer exactly unitary).
class SampledPath final : public UnitaryPath {
 public:
  explicit SampledPath(MatrixGridFunction samples);

  std::size_t dimension() const override;
  CMatrix at(double t) const override;
  const MatrixGridFunction& samples() const { return samples_; }

 private:
  MatrixGridFunction samples_;
};

/// U(x) = u_outer(x)·⊕_l u_inner(ξ_l(x)), the unitary of a composite map whose
/// outer map has branches ξ_l.
class ComposedPath final : public UnitaryPath {
 public:
  ComposedPath(PathPtr outer, PathPtr inner, std::vector<BranchMap> outer_branches);

  std::size_t dimension() const override { return outer_->dimension(); }
  CMatrix at(double x) const override;

 private:
  PathPtr outer_, inner_;
  std::vector<BranchMap> outer_branches_;
};

/// Constant identity path.
class IdentityPath final : public UnitaryPath {
 public:
  explicit IdentityPath(std::size_t dim) : dim_(dim) {}
  std::size_t dimension() const override { return dim_; }
  CMatrix at(double) const override { return identity(dim_); }

 private:
  std::size_t dim_;
};

/// Unitarity tolerance (Frobenius) accepted for path endpoints.
inline constexpr double kUnitaryTol = 1e-10;

/// The canonical path from u0 to u1 as a path object: the exact cycle formula
/// when both endpoints are permutation matrices, the spectral formula otherwise.
/// Throws NotUnitary if an endpoint is not unitary.
PathPtr make_unitary_path(const CMatrix& u0, const CMatrix& u1);

/// The same path tabulated on the grid of size N; u(0) = u0 and u(1) = u1 exactly.
MatrixGridFunction unitary_path(const CMatrix& u0, const CMatrix& u1, std::size_t grid_size);

/// Max over the grid of ‖u(t)·u(t)* − I‖_F.
double path_unitarity_defect(const UnitaryPath& path, std::size_t grid_size);

}  // namespace razak
