#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace razak {

/// num / 2^exp, kept exact for the oscillation and covering tests.
struct Dyadic {
  std::int64_t num = 0;
  int exp = 0;

  double value() const;
  Dyadic reduced() const;

  friend bool operator==(const Dyadic& x, const Dyadic& y);
  friend std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y);
};

std::string to_string(const Dyadic& d);

/// A branch map of a connecting homomorphism: ξ(x) = (x + l)/2^d, or the
/// constant l/2^d. Compositions of the maps x/2, 1/2 and (x+1)/2 stay in this
/// form with d equal to the number of factors.
struct BranchMap {
  std::uint64_t l = 0;
  int d = 0;
  bool constant = false;

  static BranchMap identity() { return {0, 0, false}; }
  static BranchMap lower_half() { return {0, 1, false}; }  // x/2
  static BranchMap midpoint() { return {1, 1, true}; }     // ≡ 1/2
  static BranchMap upper_half() { return {1, 1, false}; }  // (x+1)/2

  double operator()(double x) const;

  /// this ∘ first: x ↦ this(first(x)).
  BranchMap after(const BranchMap& first) const;

  /// |ξ(x) − ξ(y)| maximised over [0,1]: 2^{−d}, or 0 for constants.
  Dyadic oscillation() const;
  Dyadic image_lo() const { return {static_cast<std::int64_t>(l), d}; }
  Dyadic image_hi() const {
    return {static_cast<std::int64_t>(constant ? l : l + 1), d};
  }

  friend bool operator==(const BranchMap&, const BranchMap&) = default;
  friend auto operator<=>(const BranchMap&, const BranchMap&) = default;
};

std::string to_string(const BranchMap& b);

}  // namespace razak
