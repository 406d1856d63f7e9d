#include "razak/central.hpp"

#include <cmath>
#include <string>

namespace razak {

std::size_t TensorTruncation::dimension() const {
  std::size_t dim = base_dim;
  for (std::size_t q : factors) dim *= q;
  return dim;
}

TensorTruncation make_truncation(std::size_t base_dim, std::vector<std::size_t> factors) {
  if (base_dim == 0) throw Error(ErrorKind::DimensionMismatch, "base dimension must be >= 1");
  std::size_t dim = base_dim;
  for (std::size_t q : factors) {
    if (q == 0) throw Error(ErrorKind::DimensionMismatch, "factor sizes must be >= 1");
    dim *= q;
    if (dim > kTruncationCap) {
      throw Error(ErrorKind::ResourceLimit, "truncation dimension exceeds " + std::to_string(kTruncationCap));
    }
  }
  return TensorTruncation{base_dim, std::move(factors)};
}

CMatrix simple_tensor(const TensorTruncation& trunc, const std::vector<CMatrix>& parts) {
  if (parts.size() > trunc.factors.size() + 1) {
    throw Error(ErrorKind::DimensionMismatch, "more tensor parts than slots");
  }
  auto slot = [&](std::size_t s) { return s == 0 ? trunc.base_dim : trunc.factors[s - 1]; };
  CMatrix out;
  for (std::size_t s = 0; s <= trunc.factors.size(); ++s) {
    CMatrix part = s < parts.size() ? parts[s] : identity(slot(s));
    if (static_cast<std::size_t>(part.rows()) != slot(s) || part.rows() != part.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "tensor part " + std::to_string(s) + " has the wrong size");
    }
    out = s == 0 ? part : kron(out, part);
  }
  return out;
}

CMatrix mu_embed(const TensorTruncation& trunc, std::size_t k, std::size_t m, const CMatrix& a) {
  if (m < 1 || m > trunc.factors.size()) {
    throw Error(ErrorKind::DimensionMismatch, "factor position " + std::to_string(m) + " out of range");
  }
  const std::size_t q = trunc.factors[m - 1];
  if (k == 0 || q % k != 0) {
    throw Error(ErrorKind::NoUnitalEmbedding,
                "no unital embedding of M_" + std::to_string(k) + " into M_" + std::to_string(q));
  }
  if (static_cast<std::size_t>(a.rows()) != k || a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "argument of μ must be k×k");
  }
  std::vector<CMatrix> parts;
  parts.push_back(identity(trunc.base_dim));
  for (std::size_t s = 1; s < m; ++s) parts.push_back(identity(trunc.factors[s - 1]));
  parts.push_back(kron(a, identity(q / k)));
  return simple_tensor(trunc, parts);
}

std::vector<CMatrix> disjoint_test_elements(const TensorTruncation& trunc, std::size_t m,
                                            std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_matrix = [&](std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    CMatrix x(d, d);
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index r = 0; r < d; ++r) {
        const double re = unit(rng);
        const double im = unit(rng);
        x(r, c) = Complex(re, im);
      }
    return x;
  };
  std::vector<CMatrix> out;
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<CMatrix> parts{random_matrix(trunc.base_dim)};
    for (std::size_t s = 1; s < m; ++s) parts.push_back(random_matrix(trunc.factors[s - 1]));
    out.push_back(simple_tensor(trunc, parts));
  }
  return out;
}

SigmaMetrics sigma_stage(const Tower& tower, std::size_t i, const TensorTruncation& trunc,
                         std::size_t m, const BlockElement& a, const std::vector<CMatrix>& tests) {
  const BuildingBlock& block = tower.stage(i);
  if (!(a.block() == block)) {
    throw Error(ErrorKind::ContextMismatch, "element does not live in stage " + std::to_string(i));
  }
  const CMatrix pi = evaluate(a, AtInfinity{});
  const CMatrix sigma = mu_embed(trunc, block.n, m, pi);
  const double pi_norm = spectral_norm(pi);

  SigmaMetrics out;
  for (const auto& b : tests) {
    if (b.rows() != sigma.rows()) throw Error(ErrorKind::DimensionMismatch, "test element has the wrong size");
    const CMatrix sb = sigma * b;
    const CMatrix bs = b * sigma;
    out.commutator = std::max(out.commutator, spectral_norm(sb - bs));
    out.norm_defect = std::max(out.norm_defect, std::abs(spectral_norm(sb) - pi_norm * spectral_norm(b)));
  }
  for (std::size_t j = i; j <= tower.depth(); ++j) {
    const CMatrix d = tower.stage_map(i, j).boundary_datum(a);
    out.norm_recovery.emplace_back(j, spectral_norm(d));
    out.trace_match.emplace_back(j, normalized_trace(d));
  }
  return out;
}

}  // namespace razak
