#include "razak/tower.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "razak/parallel.hpp"

namespace razak {

Tower::Tower(BuildingBlock seed, std::vector<ConnectingMap> steps, std::size_t grid_size)
    : steps_(std::move(steps)), grid_size_(grid_size) {
  stages_.push_back(seed);
  for (const auto& step : steps_) {
    if (!(step.source == stages_.back()) || step.grid_size != grid_size_) {
      throw Error(ErrorKind::ChainMismatch, "tower steps do not chain at " + to_string(stages_.back()));
    }
    stages_.push_back(step.target);
  }
  const std::size_t d = stages_.size();
  for (std::size_t i = 1; i <= d; ++i) {
    auto current = std::make_shared<const ConnectingMap>(identity_map(stages_[i - 1], grid_size_));
    maps_[{i, i}] = current;
    for (std::size_t j = i + 1; j <= d; ++j) {
      current = std::make_shared<const ConnectingMap>(compose_maps(steps_[j - 2], *current));
      maps_[{i, j}] = current;
    }
  }
}

const BuildingBlock& Tower::stage(std::size_t i) const {
  if (i < 1 || i > stages_.size()) {
    throw Error(ErrorKind::StageOutOfRange, "stage " + std::to_string(i) + " not in 1.." +
                                                std::to_string(stages_.size()));
  }
  return stages_[i - 1];
}

const ConnectingMap& Tower::stage_map(std::size_t i, std::size_t j) const {
  auto it = maps_.find({i, j});
  if (it == maps_.end()) {
    throw Error(ErrorKind::StageOutOfRange, "no map φ_" + std::to_string(i) + "," + std::to_string(j) +
                                                " in a tower of depth " + std::to_string(depth()));
  }
  return *it->second;
}

BuildingBlock successor_block(const BuildingBlock& b, std::size_t steps) {
  BuildingBlock out = b;
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t next = 2 * out.a + 1;
    out = BuildingBlock{next * out.n, next};
  }
  return out;
}

Tower build_tower(const BuildingBlock& seed, std::size_t depth, const TowerOptions& options) {
  if (depth == 0) throw Error(ErrorKind::ConfigError, "tower depth must be >= 1");
  if (options.grid_size == 0) throw Error(ErrorKind::ConfigError, "grid size must be >= 1");
  BuildingBlock current = make_block(seed.n, seed.a);
  auto check_cap = [&](const BuildingBlock& b) {
    if (b.n_prime() > options.dimension_cap) {
      throw Error(ErrorKind::ResourceLimit, "stage " + to_string(b) + " exceeds the dimension cap " +
                                                std::to_string(options.dimension_cap));
    }
  };
  check_cap(current);
  std::vector<ConnectingMap> steps;
  for (std::size_t s = 1; s < depth; ++s) {
    check_cap(successor_block(current));
    Successor next = build_successor(current, options.grid_size);
    current = next.block;
    steps.push_back(std::move(next.map));
  }
  return Tower(seed, std::move(steps), options.grid_size);
}

std::vector<double> distinct_values(std::vector<double> values, double tol) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  std::size_t start = 0;
  while (start < values.size()) {
    std::size_t end = start + 1;
    double sum = values[start];
    while (end < values.size() && values[end] - values[end - 1] <= tol) sum += values[end++];
    out.push_back(sum / static_cast<double>(end - start));
    start = end;
  }
  return out;
}

double density_radius(const std::vector<double>& sorted_values) {
  if (sorted_values.empty()) return 1.0;
  double delta = std::max(sorted_values.front(), 1.0 - sorted_values.back());
  for (std::size_t k = 1; k < sorted_values.size(); ++k) {
    delta = std::max(delta, 0.5 * (sorted_values[k] - sorted_values[k - 1]));
  }
  return std::max(delta, 0.0);
}

EigDensity eig_density(const Tower& tower, std::size_t j, double x, std::size_t dense_limit) {
  const ConnectingMap& phi = tower.stage_map(1, j);
  const BlockElement h = canonical_h(tower.seed(), tower.grid_size());
  EigDensity out;
  std::vector<double> values;
  if (phi.target.n_prime() <= dense_limit) {
    out.dense = true;
    values = herm_spectrum(apply_at(phi, h, x));
  } else {
    std::set<BranchMap> distinct(phi.branches.begin(), phi.branches.end());
    for (const auto& xi : distinct) {
      const auto block = herm_spectrum(h.at(xi(x)));
      values.insert(values.end(), block.begin(), block.end());
    }
  }
  out.spectrum = distinct_values(std::move(values));
  out.delta = density_radius(out.spectrum);
  return out;
}

OscillationGap trace_unique_rate(const Tower& tower, const BlockElement& f, std::size_t i,
                                 std::size_t j) {
  if (i >= j) throw Error(ErrorKind::StageOutOfRange, "trace rate needs i < j");
  const OscillationGap gap = oscillation_gap(tower.stage_map(i, j), f);
  if (gap.gap > gap.modulus + 1e-6) {
    throw Error(ErrorKind::InvariantFailure, "trace oscillation " + std::to_string(gap.gap) +
                                                 " exceeds the modulus bound " + std::to_string(gap.modulus));
  }
  return gap;
}

namespace {

// Nonzero threshold for the witness norms.
constexpr double kNonzero = 1e-12;

double min_norm_along(const BlockElement& f, const BranchMap& xi) {
  const std::size_t points = f.grid_size() + 1;
  std::vector<double> norms(points);
  parallel_for(points, [&](std::size_t j) { norms[j] = spectral_norm(f.at(xi(f.grid_point(j)))); });
  return *std::min_element(norms.begin(), norms.end());
}

}  // namespace

SimplicityWitness simplicity_witness(const Tower& tower, std::size_t i, const BlockElement& f,
                                     OpenInterval support, std::size_t max_depth) {
  const BuildingBlock& block = tower.stage(i);
  if (!(f.block() == block)) {
    throw Error(ErrorKind::ContextMismatch, "element does not live in stage " + std::to_string(i));
  }
  bool zero = f.boundary().norm() == 0.0;
  if (zero) {
    for (std::size_t j = 0; j <= f.grid_size() && zero; ++j) zero = f.sample(j).norm() == 0.0;
  }
  if (zero) throw Error(ErrorKind::ZeroElement, "the zero element generates no ideal");

  SimplicityWitness out;
  // Depth 0: f is already full when nonzero at every point and at infinity.
  const double direct = std::min(min_norm_along(f, BranchMap::identity()), spectral_norm(f.boundary()));
  out.stage = i;
  if (direct > kNonzero) {
    out.found = true;
    out.branch = BranchMap::identity();
    out.min_witness_norm = direct;
    return out;
  }

  auto inside = [&](const BranchMap& xi) {
    return xi.image_lo().value() > support.lo && xi.image_hi().value() < support.hi;
  };

  std::set<BranchMap> current{BranchMap::identity()};
  BuildingBlock stage_block = block;
  for (std::size_t d = 1; d <= max_depth; ++d) {
    const std::size_t from = i + d - 1;  // step A_from → A_{from+1}
    const std::vector<BranchMap> step = from < tower.depth() ? tower.steps()[from - 1].branches
                                                             : successor_branches(stage_block);
    const std::set<BranchMap> outer(step.begin(), step.end());
    std::set<BranchMap> next;
    for (const auto& xo : outer)
      for (const auto& xi : current) next.insert(xi.after(xo));
    current = std::move(next);
    stage_block = successor_block(stage_block);
    out.stage = i + d;

    for (const auto& xi : current) {
      if (!inside(xi)) continue;
      const double norm = min_norm_along(f, xi);
      if (norm > kNonzero) {
        out.found = true;
        out.branch = xi;
        out.min_witness_norm = norm;
        return out;
      }
    }
  }
  return out;
}

}  // namespace razak
