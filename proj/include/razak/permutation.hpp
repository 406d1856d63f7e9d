#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "razak/numkernel.hpp"

namespace razak {

/// A coordinate permutation σ; its matrix P satisfies P·e_s = e_{σ(s)}, so
/// (P·X·Pᵀ)[σ(s), σ(s')] = X[s, s'].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> image);

  static Permutation identity(std::size_t size);

  std::size_t size() const { return image_.size(); }
  std::size_t operator()(std::size_t s) const { return image_[s]; }
  const std::vector<std::size_t>& image() const { return image_; }

  Permutation inverse() const;
  /// x ↦ this(first(x)); matrix of the result is P_this · P_first.
  Permutation after(const Permutation& first) const;
  bool is_identity() const;

  CMatrix matrix() const;

  /// P·X·Pᵀ computed by index relabelling (exact).
  CMatrix conjugate(const CMatrix& x) const;

  /// Cycles (c_0, c_1, ...) with σ(c_i) = c_{i+1}, each starting at its
  /// smallest coordinate, ordered by that coordinate.
  std::vector<std::vector<std::size_t>> cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

/// Recovers σ from a permutation matrix, or nullopt if m is not one.
std::optional<Permutation> permutation_from_matrix(const CMatrix& m);

enum class SlotType { C, Zero, Mid };

const char* to_string(SlotType t);

struct Slot {
  SlotType type;
  std::size_t size;

  friend bool operator==(const Slot&, const Slot&) = default;
};

/// A block-diagonal pattern: consecutive diagonal slots of the given sizes.
using SlotLayout = std::vector<Slot>;

std::size_t layout_dimension(const SlotLayout& layout);

/// Maps the i-th source slot of each (type, size) to the i-th target slot of
/// that (type, size), preserving the order inside each slot. Conjugating by the
/// result sends any filling of the source pattern to the matching filling of
/// the target pattern. Throws LayoutMismatch if the slot multisets differ.
Permutation match_permutation(const SlotLayout& source, const SlotLayout& target);

}  // namespace razak
