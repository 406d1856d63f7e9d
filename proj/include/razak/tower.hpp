#pragma once

// The inductive system A_1 → A_2 → ⋯ built by iterating build_successor,
// with the composed maps φ_ij and the finite-stage experiments on it.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "razak/homs.hpp"
#include "razak/traces.hpp"

namespace razak {

struct TowerOptions {
  std::size_t grid_size = 256;
  std::size_t dimension_cap = 6000;  // largest admissible stage n'
};

class Tower {
 public:
  /// Assembles a tower from consecutive steps; the composites φ_ij are built
  /// eagerly so the tower is immutable afterwards. Throws ChainMismatch if the
  /// steps do not chain.
  Tower(BuildingBlock seed, std::vector<ConnectingMap> steps, std::size_t grid_size);

  /// Number of stages.
  std::size_t depth() const { return stages_.size(); }
  std::size_t grid_size() const { return grid_size_; }
  const BuildingBlock& seed() const { return stages_.front(); }

  /// A_i, 1-based. Throws StageOutOfRange.
  const BuildingBlock& stage(std::size_t i) const;
  const std::vector<BuildingBlock>& stages() const { return stages_; }
  /// steps()[i−1] is φ_i: A_i → A_{i+1}.
  const std::vector<ConnectingMap>& steps() const { return steps_; }

  /// φ_ij for i ≤ j ≤ depth (the identity when i = j). Throws StageOutOfRange.
  const ConnectingMap& stage_map(std::size_t i, std::size_t j) const;

 private:
  std::vector<BuildingBlock> stages_;
  std::vector<ConnectingMap> steps_;
  std::size_t grid_size_;
  std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const ConnectingMap>> maps_;
};

/// depth stages starting at the seed. Throws ResourceLimit if a stage would
/// exceed the dimension cap and ConfigError for depth 0.
Tower build_tower(const BuildingBlock& seed, std::size_t depth, const TowerOptions& options = {});

/// Block parameters after `steps` successor steps: a ← 2a+1, n ← (2a+1)·n.
BuildingBlock successor_block(const BuildingBlock& b, std::size_t steps = 1);

struct EigDensity {
  double delta = 0.0;
  std::vector<double> spectrum;  // distinct values, ascending
  bool dense = false;            // full eigensolver (true) or per-branch blocks
};

/// Distinct values: sorted values closer than tol are merged into their mean.
std::vector<double> distinct_values(std::vector<double> values, double tol = 1e-9);

/// Smallest δ such that every point of [0,1] lies within δ of a value.
double density_radius(const std::vector<double>& sorted_values);

/// Spectrum of φ_1j(h)(x). Stages up to `dense_limit` use the dense Hermitian
/// solver on the full matrix; larger stages use the block structure, since
/// φ(h)(x) is unitarily equivalent to ⊕_k h(ξ_k(x)). Throws StageOutOfRange.
EigDensity eig_density(const Tower& tower, std::size_t j, double x, std::size_t dense_limit = 512);

/// oscillation_gap for φ_ij. Throws StageOutOfRange, and InvariantFailure if
/// the gap exceeds the modulus bound by more than 1e−6.
OscillationGap trace_unique_rate(const Tower& tower, const BlockElement& f, std::size_t i,
                                 std::size_t j);

struct OpenInterval {
  double lo = 0.0;
  double hi = 1.0;
};

struct SimplicityWitness {
  bool found = false;
  std::size_t stage = 0;          // j, or the largest stage searched
  std::optional<BranchMap> branch;  // composed branch with image inside the support
  double min_witness_norm = 0.0;  // min over the grid of ‖f(ξ(x))‖ (or ‖f(x)‖ when j = i)
};

/// Smallest j ≤ i + max_depth such that φ_ij(f) is nowhere zero: j = i when f
/// itself is nonzero at every grid point and at infinity, otherwise the first
/// depth with a composed branch ξ with ξ([0,1]) ⊂ support. The branch search runs
/// symbolically past the built stages. Throws ZeroElement for f = 0.
SimplicityWitness simplicity_witness(const Tower& tower, std::size_t i, const BlockElement& f,
                                     OpenInterval support, std::size_t max_depth);

}  // namespace razak
