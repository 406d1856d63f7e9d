#include "razak/permutation.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

namespace razak {

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<char> hit(image_.size(), 0);
  for (std::size_t v : image_) {
    if (v >= image_.size() || hit[v]) {
      throw Error(ErrorKind::DimensionMismatch, "not a permutation");
    }
    hit[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t size) {
  std::vector<std::size_t> image(size);
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t s = 0; s < image_.size(); ++s) inv[image_[s]] = s;
  return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& first) const {
  if (first.size() != size()) throw Error(ErrorKind::DimensionMismatch, "permutation sizes differ");
  std::vector<std::size_t> out(size());
  for (std::size_t s = 0; s < size(); ++s) out[s] = image_[first.image_[s]];
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t s = 0; s < image_.size(); ++s)
    if (image_[s] != s) return false;
  return true;
}

CMatrix Permutation::matrix() const {
  const auto n = static_cast<Eigen::Index>(size());
  CMatrix p = CMatrix::Zero(n, n);
  for (std::size_t s = 0; s < size(); ++s) p(static_cast<Eigen::Index>(image_[s]), static_cast<Eigen::Index>(s)) = 1.0;
  return p;
}

CMatrix Permutation::conjugate(const CMatrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != size() || x.rows() != x.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "conjugation by a permutation of another size");
  }
  const auto n = static_cast<Eigen::Index>(size());
  CMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      out(static_cast<Eigen::Index>(image_[i]), static_cast<Eigen::Index>(image_[j])) = x(i, j);
  return out;
}

std::vector<std::vector<std::size_t>> Permutation::cycles() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<char> seen(size(), 0);
  for (std::size_t start = 0; start < size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t s = start; !seen[s]; s = image_[s]) {
      seen[s] = 1;
      cycle.push_back(s);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::optional<Permutation> permutation_from_matrix(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> image(n, n);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex v = m(i, j);
      if (v == Complex(1.0, 0.0)) {
        if (image[static_cast<std::size_t>(j)] != n) return std::nullopt;
        image[static_cast<std::size_t>(j)] = static_cast<std::size_t>(i);
      } else if (v != Complex(0.0, 0.0)) {
        return std::nullopt;
      }
    }
    if (image[static_cast<std::size_t>(j)] == n) return std::nullopt;
  }
  try {
    return Permutation(std::move(image));
  } catch (const Error&) {
    return std::nullopt;
  }
}

const char* to_string(SlotType t) {
  switch (t) {
    case SlotType::C: return "C";
    case SlotType::Zero: return "Zero";
    case SlotType::Mid: return "Mid";
  }
  return "?";
}

std::size_t layout_dimension(const SlotLayout& layout) {
  std::size_t dim = 0;
  for (const auto& s : layout) dim += s.size;
  return dim;
}

Permutation match_permutation(const SlotLayout& source, const SlotLayout& target) {
  using Key = std::pair<int, std::size_t>;
  std::map<Key, std::vector<std::size_t>> free_targets;  // slot offsets, in order
  std::size_t offset = 0;
  for (const auto& slot : target) {
    free_targets[{static_cast<int>(slot.type), slot.size}].push_back(offset);
    offset += slot.size;
  }
  const std::size_t dim = offset;
  if (layout_dimension(source) != dim) {
    throw Error(ErrorKind::LayoutMismatch, "layouts have different total size");
  }

  std::map<Key, std::size_t> used;
  std::vector<std::size_t> image(dim);
  offset = 0;
  for (const auto& slot : source) {
    const Key key{static_cast<int>(slot.type), slot.size};
    auto it = free_targets.find(key);
    std::size_t& k = used[key];
    if (it == free_targets.end() || k >= it->second.size()) {
      throw Error(ErrorKind::LayoutMismatch, std::string("no free target slot of type ") +
                                                 to_string(slot.type) + " and size " +
                                                 std::to_string(slot.size));
    }
    const std::size_t target_offset = it->second[k++];
    for (std::size_t r = 0; r < slot.size; ++r) image[offset + r] = target_offset + r;
    offset += slot.size;
  }
  for (const auto& [key, offsets] : free_targets) {
    if (used[key] != offsets.size()) {
      throw Error(ErrorKind::LayoutMismatch, "target has unmatched slots");
    }
  }
  return Permutation(std::move(image));
}

}  // namespace razak
