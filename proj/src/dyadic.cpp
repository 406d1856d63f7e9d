#include "razak/dyadic.hpp"

#include <cmath>

#include "razak/errors.hpp"

namespace razak {

namespace {

// Common exponent; exponents here stay far below 62.
std::pair<std::int64_t, std::int64_t> align(const Dyadic& x, const Dyadic& y) {
  const int e = std::max(x.exp, y.exp);
  return {x.num << (e - x.exp), y.num << (e - y.exp)};
}

}  // namespace

double Dyadic::value() const { return std::ldexp(static_cast<double>(num), -exp); }

Dyadic Dyadic::reduced() const {
  Dyadic r = *this;
  if (r.num == 0) return {0, 0};
  while (r.exp > 0 && (r.num % 2) == 0) {
    r.num /= 2;
    --r.exp;
  }
  return r;
}

bool operator==(const Dyadic& x, const Dyadic& y) {
  const auto [a, b] = align(x, y);
  return a == b;
}

std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y) {
  const auto [a, b] = align(x, y);
  return a <=> b;
}

std::string to_string(const Dyadic& d) {
  const Dyadic r = d.reduced();
  if (r.exp == 0) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(std::int64_t{1} << r.exp);
}

double BranchMap::operator()(double x) const {
  if (constant) return std::ldexp(static_cast<double>(l), -d);
  return std::ldexp(x + static_cast<double>(l), -d);
}

BranchMap BranchMap::after(const BranchMap& first) const {
  if (d + first.d > 60) {
    throw Error(ErrorKind::ResourceLimit, "branch depth exceeds exact 64-bit dyadic range");
  }
  BranchMap out;
  out.d = d + first.d;
  if (constant) {
    out.l = l << first.d;
    out.constant = true;
  } else {
    out.l = first.l + (l << first.d);
    out.constant = first.constant;
  }
  return out;
}

Dyadic BranchMap::oscillation() const {
  if (constant) return {0, 0};
  return {1, d};
}

std::string to_string(const BranchMap& b) {
  const std::string denom = std::to_string(std::uint64_t{1} << b.d);
  if (b.constant) return std::to_string(b.l) + "/" + denom;
  if (b.d == 0) return "x";
  return "(x+" + std::to_string(b.l) + ")/" + denom;
}

}  // namespace razak
