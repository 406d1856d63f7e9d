#pragma once

// Traces τ = tr ⊗ μ on a building block for finitely atomic measures μ.

#include <cstddef>
#include <vector>

#include "razak/blocks.hpp"
#include "razak/homs.hpp"

namespace razak {

struct Atom {
  double t = 0.0;
  double weight = 0.0;
};

/// Σ_j w_j·tr_{n'}(f(t_j)). An atom at 0 is the bounded trace
/// tr⊗δ_0 = (a/(a+1))·tr_n∘ev_∞.
class Trace {
 public:
  Trace() = default;
  explicit Trace(const BuildingBlock& block) : block_(block) {}
  Trace(const BuildingBlock& block, const std::vector<Atom>& atoms);

  static Trace point(const BuildingBlock& block, double t, double weight = 1.0);

  /// Adds mass at t, merging with an existing atom at a bit-identical location.
  /// Zero weights are dropped; negative or non-finite data throw.
  void add(double t, double weight);

  const BuildingBlock& block() const { return block_; }
  /// Sorted by location.
  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_mass() const;

 private:
  BuildingBlock block_;
  std::vector<Atom> atoms_;
};

/// Throws ContextMismatch if e lives in another block.
double eval_trace(const Trace& tau, const BlockElement& e);

/// φ*τ: each atom (x, w) of a trace on φ.target becomes atoms (ξ_k(x), w/m).
Trace pushforward_trace(const ConnectingMap& phi, const Trace& tau);

/// ‖τ‖ = Σ_j w_j·ν(t_j) with ν(0) = a/(a+1) and ν(t) = 1 for t > 0.
double trace_norm(const Trace& tau);

/// τ(h^{1/n}), increasing to ‖τ‖ as n → ∞.
double trace_norm_at(const Trace& tau, int n);

/// Richardson step 2·τ(h^{1/2n}) − τ(h^{1/n}), which removes the O(1/n) term.
double trace_norm_extrapolated(const Trace& tau, int n);

/// g(t) = tr_{n'}(f(t)) on the grid, for self-adjoint f (NotSelfAdjoint otherwise).
/// g lies in C[0,1]_a: g(0) = (a/(a+1))·g(1).
RealGridFunction affine_image(const BlockElement& e);

struct OscillationGap {
  double gap = 0.0;      // max − min over grid x of tr⊗δ_x(φ(f))
  double modulus = 0.0;  // ω_g(2^{−depth}) for g(t) = tr(f(t)), on the grid of size N·2^{depth}
  double min_value = 0.0;
  double max_value = 0.0;
};

/// Spread of the point traces tr⊗δ_x(φ(f)) over the grid, evaluated as
/// tr⊗δ_x∘φ = φ*(tr⊗δ_x) on f. Every branch value ξ_k(x) of a grid point x lies
/// on the grid of size N·2^{depth}, so gap ≤ modulus holds at evaluated points.
OscillationGap oscillation_gap(const ConnectingMap& phi, const BlockElement& f);

}  // namespace razak
