#include "razak/homs.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "razak/parallel.hpp"

namespace razak {

MatrixGridFunction ConnectingMap::unitary_samples() const {
  std::vector<CMatrix> samples(grid_size + 1);
  parallel_for(samples.size(), [&](std::size_t j) {
    samples[j] = path->at(MatrixGridFunction::point(grid_size, j));
  });
  return MatrixGridFunction(grid_size, std::move(samples));
}

CMatrix ConnectingMap::boundary_datum(const BlockElement& e) const {
  switch (kind) {
    case Kind::Identity:
      return e.boundary();
    case Kind::Step: {
      std::vector<CMatrix> parts;
      parts.reserve(source.a + 1);
      parts.push_back(e.at(0.5));
      for (std::size_t i = 0; i < source.a; ++i) parts.push_back(e.boundary());
      return direct_sum(parts);
    }
    case Kind::Composite:
      return outer->boundary_datum(apply_map(*inner, e));
  }
  throw Error(ErrorKind::InvariantFailure, "unknown map kind");
}

ConnectingMap identity_map(const BuildingBlock& block, std::size_t grid_size) {
  ConnectingMap phi;
  phi.kind = ConnectingMap::Kind::Identity;
  phi.source = block;
  phi.target = block;
  phi.branches = {BranchMap::identity()};
  phi.depth = 0;
  phi.grid_size = grid_size;
  phi.path = std::make_shared<IdentityPath>(block.n_prime());
  return phi;
}

SuccessorLayouts successor_layouts(const BuildingBlock& b1) {
  const std::size_t a = b1.a;
  const std::size_t b = 2 * a + 1;
  const Slot c{SlotType::C, b1.n};
  const Slot zero{SlotType::Zero, b1.n};
  const Slot mid{SlotType::Mid, b1.n_prime()};

  auto d_f = [&](SlotLayout& out) {
    out.push_back(mid);
    out.insert(out.end(), a, c);
  };

  SuccessorLayouts l;
  for (std::size_t k = 0; k < b; ++k) {  // f(0) = diag(c ×a, 0)
    l.source_at_zero.insert(l.source_at_zero.end(), a, c);
    l.source_at_zero.push_back(zero);
  }
  l.source_at_zero.insert(l.source_at_zero.end(), b, mid);
  for (std::size_t k = 0; k < b; ++k) d_f(l.target_at_zero);
  l.target_at_zero.insert(l.target_at_zero.end(), b, zero);  // 0_{n2}, n2 = b·n1

  l.source_at_one.insert(l.source_at_one.end(), b + 1, mid);
  l.source_at_one.insert(l.source_at_one.end(), (b - 1) * (a + 1), c);  // f(1) = diag(c ×(a+1))
  for (std::size_t k = 0; k < b + 1; ++k) d_f(l.target_at_one);
  return l;
}

std::vector<BranchMap> successor_branches(const BuildingBlock& b1) {
  const std::size_t b = 2 * b1.a + 1;
  std::vector<BranchMap> branches(b, BranchMap::lower_half());
  branches.push_back(BranchMap::midpoint());
  branches.insert(branches.end(), b - 1, BranchMap::upper_half());
  return branches;
}

Successor build_successor(const BuildingBlock& b1, std::size_t grid_size) {
  if (grid_size == 0) throw Error(ErrorKind::ConfigError, "grid size must be >= 1");
  const BuildingBlock checked = make_block(b1.n, b1.a);
  const std::size_t b = 2 * checked.a + 1;

  ConnectingMap phi;
  phi.kind = ConnectingMap::Kind::Step;
  phi.source = checked;
  phi.target = make_block(b * checked.n, b);
  phi.depth = 1;
  phi.grid_size = grid_size;
  phi.branches = successor_branches(checked);

  const SuccessorLayouts l = successor_layouts(checked);
  phi.path = std::make_shared<PermutationPath>(match_permutation(l.source_at_zero, l.target_at_zero),
                                               match_permutation(l.source_at_one, l.target_at_one));
  return {phi.target, std::move(phi)};
}

CMatrix conjugate_blocks(const CMatrix& u, const std::vector<CMatrix>& blocks) {
  CMatrix ud(u.rows(), u.cols());
  Eigen::Index off = 0;
  for (const auto& blk : blocks) {
    const Eigen::Index k = blk.rows();
    if (off + k > u.cols()) break;
    ud.middleCols(off, k).noalias() = u.middleCols(off, k) * blk;
    off += k;
  }
  if (off != u.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "blocks do not fill the unitary");
  }
  CMatrix out(u.rows(), u.rows());
  out.noalias() = ud * u.adjoint();
  return out;
}

std::vector<CMatrix> branch_values(const ConnectingMap& phi, const BlockElement& e, double x) {
  std::vector<CMatrix> values;
  values.reserve(phi.branches.size());
  // Consecutive equal branches (the common case) share one evaluation.
  const BranchMap* previous = nullptr;
  for (const auto& xi : phi.branches) {
    if (previous && *previous == xi) {
      values.push_back(values.back());
    } else {
      values.push_back(e.at(xi(x)));
    }
    previous = &xi;
  }
  return values;
}

namespace {

void check_source(const ConnectingMap& phi, const BlockElement& e) {
  if (!(e.block() == phi.source)) {
    throw Error(ErrorKind::DimensionMismatch,
                "element of " + to_string(e.block()) + " applied to a map from " + to_string(phi.source));
  }
}

}  // namespace

CMatrix apply_at(const ConnectingMap& phi, const BlockElement& e, double x) {
  check_source(phi, e);
  if (phi.kind == ConnectingMap::Kind::Identity) return e.at(x);
  return conjugate_blocks(phi.unitary_at(x), branch_values(phi, e, x));
}

BlockElement apply_map(const ConnectingMap& phi, const BlockElement& e) {
  check_source(phi, e);
  if (phi.kind == ConnectingMap::Kind::Identity) return e;
  auto shared = std::make_shared<const ConnectingMap>(phi);
  return BlockElement::from_evaluator(phi.target, phi.grid_size, phi.boundary_datum(e),
                                      [shared, e](double x) { return apply_at(*shared, e, x); });
}

ConnectingMap compose_maps(const ConnectingMap& outer, const ConnectingMap& inner) {
  if (!(inner.target == outer.source) || inner.grid_size != outer.grid_size) {
    throw Error(ErrorKind::ChainMismatch, "cannot compose a map into " + to_string(inner.target) +
                                              " with a map from " + to_string(outer.source));
  }
  if (outer.kind == ConnectingMap::Kind::Identity) return inner;
  if (inner.kind == ConnectingMap::Kind::Identity) return outer;

  ConnectingMap phi;
  phi.kind = ConnectingMap::Kind::Composite;
  phi.source = inner.source;
  phi.target = outer.target;
  phi.depth = outer.depth + inner.depth;
  phi.grid_size = outer.grid_size;
  phi.branches.reserve(outer.branches.size() * inner.branches.size());
  for (const auto& xo : outer.branches)
    for (const auto& xi : inner.branches) phi.branches.push_back(xi.after(xo));
  phi.path = std::make_shared<ComposedPath>(outer.path, inner.path, outer.branches);
  phi.outer = std::make_shared<const ConnectingMap>(outer);
  phi.inner = std::make_shared<const ConnectingMap>(inner);
  return phi;
}

Dyadic branch_oscillation(const std::vector<BranchMap>& branches) {
  Dyadic worst{0, 0};
  for (const auto& xi : branches) worst = std::max(worst, xi.oscillation());
  return worst;
}

bool branches_cover(const std::vector<BranchMap>& branches) {
  std::vector<std::pair<Dyadic, Dyadic>> images;
  images.reserve(branches.size());
  for (const auto& xi : branches) images.emplace_back(xi.image_lo(), xi.image_hi());
  std::sort(images.begin(), images.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Dyadic reach{0, 0};
  for (const auto& [lo, hi] : images) {
    if (lo > reach) return false;
    reach = std::max(reach, hi);
  }
  return reach >= Dyadic{1, 0};
}

MapMetrics map_metrics(const ConnectingMap& phi, const std::vector<BlockElement>& samples,
                       const MapMetricsRequest& request) {
  MapMetrics out;
  out.oscillation = branch_oscillation(phi.branches);
  out.covers = branches_cover(phi.branches);

  std::vector<BlockElement> products, adjoints;
  if (request.hom_defect) {
    for (std::size_t p = 0; p + 1 < samples.size(); p += 2)
      products.push_back(multiply(samples[p], samples[p + 1]));
  }
  if (request.adjoint_defect) {
    for (const auto& f : samples) adjoints.push_back(adjoint(f));
  }
  for (const auto& f : samples) {
    out.boundary_defect = std::max(out.boundary_defect, validate_element(apply_map(phi, f)));
  }

  const auto& orders = request.approx_unit_orders;
  const BlockElement h = canonical_h(phi.source, phi.grid_size);
  const std::size_t points = phi.grid_size + 1;
  std::vector<double> hom(points, 0.0), adj(points, 0.0);
  std::vector<std::vector<double>> unit(points, std::vector<double>(orders.size(), 0.0));

  parallel_for(points, [&](std::size_t j) {
    const double x = MatrixGridFunction::point(phi.grid_size, j);
    const CMatrix u = phi.unitary_at(x);
    auto image = [&](const BlockElement& f) { return conjugate_blocks(u, branch_values(phi, f, x)); };

    std::vector<CMatrix> images;
    images.reserve(samples.size());
    for (const auto& f : samples) images.push_back(image(f));

    for (std::size_t p = 0; p < products.size(); ++p) {
      const CMatrix lhs = image(products[p]);
      hom[j] = std::max(hom[j], (lhs - images[2 * p] * images[2 * p + 1]).norm());
    }
    for (std::size_t i = 0; i < adjoints.size(); ++i) {
      adj[j] = std::max(adj[j], (image(adjoints[i]) - images[i].adjoint()).norm());
    }
    if (!orders.empty()) {
      const HermitianEigen eig = herm_eigen(image(h));
      for (std::size_t q = 0; q < orders.size(); ++q) {
        const double inv = 1.0 / static_cast<double>(orders[q]);
        RVector root = eig.values.unaryExpr([inv](double l) { return std::pow(std::max(l, 0.0), inv); });
        const CMatrix r = eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
        for (const auto& img : images) {
          unit[j][q] = std::max(unit[j][q], spectral_norm(r * img - img));
        }
      }
    }
  });

  out.hom_defect = *std::max_element(hom.begin(), hom.end());
  out.adjoint_defect = *std::max_element(adj.begin(), adj.end());
  for (std::size_t q = 0; q < orders.size(); ++q) {
    double worst = 0.0;
    for (std::size_t j = 0; j < points; ++j) worst = std::max(worst, unit[j][q]);
    out.approx_unit_defect.emplace_back(orders[q], worst);
  }
  return out;
}

const char* to_string(ConnectingMap::Kind kind) {
  switch (kind) {
    case ConnectingMap::Kind::Identity: return "identity";
    case ConnectingMap::Kind::Step: return "step";
    case ConnectingMap::Kind::Composite: return "composite";
  }
  return "?";
}

}  // namespace razak
