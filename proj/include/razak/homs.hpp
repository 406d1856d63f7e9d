#pragma once

// Connecting *-homomorphisms φ(f) = u·(f∘ξ_1 ⊕ ⋯ ⊕ f∘ξ_m)·u* between
// building blocks: the successor construction, application, composition and
// the quantitative diagnostics of a map.

#include <cstddef>
#include <memory>
#include <vector>

#include "razak/blocks.hpp"
#include "razak/dyadic.hpp"
#include "razak/permutation.hpp"
#include "razak/unitary_path.hpp"

namespace razak {

struct ConnectingMap {
  enum class Kind { Identity, Step, Composite };

  Kind kind = Kind::Identity;
  BuildingBlock source;
  BuildingBlock target;
  std::vector<BranchMap> branches;
  int depth = 0;
  std::size_t grid_size = 0;
  PathPtr path;
  // Composite maps remember their factors, applied inner first.
  std::shared_ptr<const ConnectingMap> outer;
  std::shared_ptr<const ConnectingMap> inner;

  std::size_t multiplicity() const { return branches.size(); }
  CMatrix unitary_at(double x) const { return path->at(x); }
  MatrixGridFunction unitary_samples() const;

  /// ev_∞ of φ(e), computed from the boundary data of the factors:
  /// a step gives diag(e(1/2), c ×a).
  CMatrix boundary_datum(const BlockElement& e) const;
};

using MapPtr = std::shared_ptr<const ConnectingMap>;

ConnectingMap identity_map(const BuildingBlock& block, std::size_t grid_size);

/// Block-diagonal patterns of the construction. At x = 0 the branches give
/// f(0) ×b then f(1/2) ×b, to be matched with d_f ×b ⊕ 0_{n2}; at x = 1 they
/// give f(1/2) ×(b+1) then f(1) ×(b−1), matched with d_f ×(b+1).
struct SuccessorLayouts {
  SlotLayout source_at_zero, target_at_zero;
  SlotLayout source_at_one, target_at_one;
};

SuccessorLayouts successor_layouts(const BuildingBlock& b1);

struct Successor {
  BuildingBlock block;
  ConnectingMap map;
};

/// x/2 ×b, 1/2, (x+1)/2 ×(b−1) with b = 2a+1.
std::vector<BranchMap> successor_branches(const BuildingBlock& b1);

/// b = 2a+1, n2 = b·n1, m = 2b; branches x/2 ×b, 1/2, (x+1)/2 ×(b−1); u0, u1
/// the matched permutation unitaries joined by the canonical path.
Successor build_successor(const BuildingBlock& b1, std::size_t grid_size);

/// U·(B_1 ⊕ ⋯ ⊕ B_m)·U*.
CMatrix conjugate_blocks(const CMatrix& u, const std::vector<CMatrix>& blocks);

/// f(ξ_1(x)), ..., f(ξ_m(x)).
std::vector<CMatrix> branch_values(const ConnectingMap& phi, const BlockElement& e, double x);

/// φ(e)(x).
CMatrix apply_at(const ConnectingMap& phi, const BlockElement& e, double x);

/// φ(e) as a lazily evaluated element of φ.target. Throws DimensionMismatch if
/// e does not live in φ.source.
BlockElement apply_map(const ConnectingMap& phi, const BlockElement& e);

/// outer ∘ inner. Branches ξ^{inner}_k ∘ ξ^{outer}_l with l as the major index;
/// U(x) = u_outer(x)·⊕_l u_inner(ξ^{outer}_l(x)). Throws ChainMismatch unless
/// inner.target = outer.source on the same grid.
ConnectingMap compose_maps(const ConnectingMap& outer, const ConnectingMap& inner);

/// Exact max_k sup |ξ_k(x) − ξ_k(y)|.
Dyadic branch_oscillation(const std::vector<BranchMap>& branches);

/// Exact test of ⋃_k ξ_k([0,1]) = [0,1].
bool branches_cover(const std::vector<BranchMap>& branches);

struct MapMetricsRequest {
  bool hom_defect = true;
  bool adjoint_defect = true;
  std::vector<int> approx_unit_orders;  // n for ‖φ(h)^{1/n}·φ(f) − φ(f)‖
};

struct MapMetrics {
  Dyadic oscillation;
  bool covers = false;
  double hom_defect = 0.0;      // max ‖φ(fg) − φ(f)φ(g)‖_F, consecutive sample pairs
  double adjoint_defect = 0.0;  // max ‖φ(f*) − φ(f)*‖_F
  double boundary_defect = 0.0; // max validate_element(φ(f))
  std::vector<std::pair<int, double>> approx_unit_defect;  // spectral norm
};

/// Diagnostics over all grid points; the unitary U(x) is computed once per
/// point and shared by every sample.
MapMetrics map_metrics(const ConnectingMap& phi, const std::vector<BlockElement>& samples,
                       const MapMetricsRequest& request = {});

const char* to_string(ConnectingMap::Kind kind);

}  // namespace razak
