#pragma once

// Finite tensor truncations M_{d_0} ⊗ M_{q_1} ⊗ ⋯ ⊗ M_{q_M} of B ⊗ Q^{⊗∞} and
// the factor embeddings μ_{k,m}, σ_{i,m} = μ_{n_i,m}∘ev_∞ acting on them.

#include <cstddef>
#include <random>
#include <vector>

#include "razak/tower.hpp"

namespace razak {

/// Dimension cap of a truncation.
inline constexpr std::size_t kTruncationCap = 10000;

struct TensorTruncation {
  std::size_t base_dim = 1;          // d_0, the slot for the algebra being tensored
  std::vector<std::size_t> factors;  // q_1..q_M

  std::size_t dimension() const;
};

/// Checked constructor (positive sizes, dimension ≤ kTruncationCap, else ResourceLimit).
TensorTruncation make_truncation(std::size_t base_dim, std::vector<std::size_t> factors);

/// x_0 ⊗ x_1 ⊗ ⋯ ⊗ x_M; parts[0] sits in the base slot, parts[m] in factor m.
/// Missing trailing parts are identities.
CMatrix simple_tensor(const TensorTruncation& trunc, const std::vector<CMatrix>& parts);

/// μ_{k,m}(a) = 1 ⊗ ⋯ ⊗ (a ⊗ 1_{q_m/k}) ⊗ ⋯ ⊗ 1 with a in factor m (1-based).
/// Throws NoUnitalEmbedding unless k divides q_m, DimensionMismatch for a bad m.
CMatrix mu_embed(const TensorTruncation& trunc, std::size_t k, std::size_t m, const CMatrix& a);

struct SigmaMetrics {
  double commutator = 0.0;   // max ‖[σ(a), b]‖ over test elements on factors < m
  double norm_defect = 0.0;  // max |‖σ(a)b‖ − ‖ev_∞(a)‖·‖b‖|
  std::vector<std::pair<std::size_t, double>> norm_recovery;  // (j, ‖ev_∞(φ_ij(a))‖)
  std::vector<std::pair<std::size_t, double>> trace_match;    // (j, tr_{n_j}(ev_∞(φ_ij(a))))
};

/// Random simple tensors supported on the base slot and factors 1..m−1.
std::vector<CMatrix> disjoint_test_elements(const TensorTruncation& trunc, std::size_t m,
                                            std::size_t count, std::mt19937_64& rng);

/// σ_{i,m}(a) = μ_{n_i,m}(ev_∞(a)) with its metrics against the given test
/// elements, and the recovery/trace sequences for j = i..tower depth.
/// Throws NoUnitalEmbedding, StageOutOfRange.
SigmaMetrics sigma_stage(const Tower& tower, std::size_t i, const TensorTruncation& trunc,
                         std::size_t m, const BlockElement& a, const std::vector<CMatrix>& tests);

}  // namespace razak
