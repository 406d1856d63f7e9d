#include "razak/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "razak/parallel.hpp"

namespace razak {

BuildingBlock make_block(std::size_t n, std::size_t a) {
  if (n < 1 || a < 1) {
    throw Error(ErrorKind::DimensionMismatch, "building block needs n >= 1 and a >= 1");
  }
  return BuildingBlock{n, a};
}

std::string to_string(const BuildingBlock& b) {
  return "A(" + std::to_string(b.n) + "," + std::to_string(b.n_prime()) + ")";
}

CMatrix pattern_at_zero(const BuildingBlock& b, const CMatrix& c) {
  return repeat_diag(c, b.a, b.n);
}

CMatrix pattern_at_one(const BuildingBlock& b, const CMatrix& c) {
  return repeat_diag(c, b.a + 1);
}

namespace {

void check_boundary(const BuildingBlock& block, const CMatrix& c) {
  const auto n = static_cast<Eigen::Index>(block.n);
  if (c.rows() != n || c.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "boundary datum must be n×n for " + to_string(block));
  }
}

void check_same_context(const BlockElement& x, const BlockElement& y) {
  if (!(x.block() == y.block()) || x.grid_size() != y.grid_size()) {
    throw Error(ErrorKind::DimensionMismatch, "operands live in different blocks or grids");
  }
}

std::optional<std::size_t> grid_index(double t, std::size_t grid_size) {
  const double scaled = t * static_cast<double>(grid_size);
  const double rounded = std::round(scaled);
  if (scaled != rounded || rounded < 0.0 || rounded > static_cast<double>(grid_size)) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

BlockElement BlockElement::from_samples(const BuildingBlock& block, MatrixGridFunction samples,
                                        CMatrix boundary) {
  check_boundary(block, boundary);
  const auto dim = static_cast<Eigen::Index>(block.n_prime());
  for (const auto& s : samples.samples()) {
    if (s.rows() != dim || s.cols() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "samples must be n'×n' for " + to_string(block));
    }
  }
  BlockElement e;
  e.block_ = block;
  e.grid_size_ = samples.grid_size();
  e.boundary_ = std::move(boundary);
  e.samples_ = std::make_shared<const MatrixGridFunction>(std::move(samples));
  return e;
}

BlockElement BlockElement::from_evaluator(const BuildingBlock& block, std::size_t grid_size,
                                          CMatrix boundary, Evaluator f) {
  check_boundary(block, boundary);
  if (grid_size == 0) throw Error(ErrorKind::DimensionMismatch, "grid size must be >= 1");
  BlockElement e;
  e.block_ = block;
  e.grid_size_ = grid_size;
  e.boundary_ = std::move(boundary);
  e.eval_ = std::make_shared<const Evaluator>(std::move(f));
  return e;
}

BlockElement BlockElement::from_interior(const BuildingBlock& block, std::size_t grid_size,
                                         CMatrix boundary, Evaluator interior) {
  check_boundary(block, boundary);
  auto at0 = std::make_shared<const CMatrix>(pattern_at_zero(block, boundary));
  auto at1 = std::make_shared<const CMatrix>(pattern_at_one(block, boundary));
  return from_evaluator(block, grid_size, boundary,
                        [at0, at1, interior = std::move(interior)](double t) -> CMatrix {
                          if (t <= 0.0) return *at0;
                          if (t >= 1.0) return *at1;
                          return interior(t);
                        });
}

CMatrix BlockElement::at(double t) const {
  if (samples_) {
    if (auto j = grid_index(t, grid_size_)) return (*samples_)[*j];
    if (!eval_) return samples_->interpolate(t);
  }
  return (*eval_)(t);
}

CMatrix BlockElement::sample(std::size_t j) const {
  if (samples_) return (*samples_)[j];
  return (*eval_)(grid_point(j));
}

MatrixGridFunction BlockElement::samples() const {
  if (samples_) return *samples_;
  std::vector<CMatrix> values(grid_size_ + 1);
  parallel_for(values.size(), [&](std::size_t j) { values[j] = sample(j); });
  return MatrixGridFunction(grid_size_, std::move(values));
}

BlockElement BlockElement::materialize() const {
  BlockElement e = *this;
  if (!samples_) e.samples_ = std::make_shared<const MatrixGridFunction>(samples());
  return e;
}

double validate_element(const BlockElement& e) {
  const CMatrix& c = e.boundary();
  const double at0 = (e.sample(0) - pattern_at_zero(e.block(), c)).norm();
  const double at1 = (e.sample(e.grid_size()) - pattern_at_one(e.block(), c)).norm();
  return std::max(at0, at1);
}

BlockElement canonical_h(const BuildingBlock& b, std::size_t grid_size) {
  const auto n = static_cast<Eigen::Index>(b.n);
  const auto dim = static_cast<Eigen::Index>(b.n_prime());
  return BlockElement::from_interior(b, grid_size, CMatrix::Identity(n, n), [=](double t) {
    CMatrix h = CMatrix::Identity(dim, dim);
    for (Eigen::Index i = dim - n; i < dim; ++i) h(i, i) = t;
    return h;
  });
}

BlockElement zero_element(const BuildingBlock& b, std::size_t grid_size) {
  const auto n = static_cast<Eigen::Index>(b.n);
  const auto dim = static_cast<Eigen::Index>(b.n_prime());
  return BlockElement::from_interior(b, grid_size, CMatrix::Zero(n, n),
                                     [=](double) { return CMatrix::Zero(dim, dim); });
}

CMatrix evaluate(const BlockElement& e, EvalPoint where) {
  if (std::holds_alternative<AtInfinity>(where)) return e.boundary();
  const double s = std::get<double>(where);
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorKind::DimensionMismatch, "evaluation point outside [0,1]");
  }
  return e.at(s);
}

namespace {

CMatrix psi_value(const BuildingBlock& b, double t, double gt) {
  const auto n = static_cast<Eigen::Index>(b.n);
  const auto dim = static_cast<Eigen::Index>(b.n_prime());
  const double a = static_cast<double>(b.a);
  const double lead = (a + 1.0) / (a + t) * gt;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim - n; ++i) out(i, i) = lead;
  for (Eigen::Index i = dim - n; i < dim; ++i) out(i, i) = lead * t;
  return out;
}

void check_cone(const BuildingBlock& b, double g0, double g1) {
  const double a = static_cast<double>(b.a);
  const double residual = std::abs(g0 - a / (a + 1.0) * g1);
  if (!(residual <= kConeTol)) {
    throw Error(ErrorKind::NotInCone, "g(0) − (a/(a+1))·g(1) = " + std::to_string(residual));
  }
}

}  // namespace

BlockElement psi_embed(const BuildingBlock& b, const RealGridFunction& g) {
  check_cone(b, g[0], g[g.grid_size()]);
  const auto n = static_cast<Eigen::Index>(b.n);
  const double g1 = g[g.grid_size()];
  return BlockElement::from_interior(b, g.grid_size(), g1 * CMatrix::Identity(n, n),
                                     [b, g](double t) { return psi_value(b, t, g.interpolate(t)); });
}

BlockElement psi_embed(const BuildingBlock& b, std::size_t grid_size,
                       const std::function<double(double)>& g) {
  check_cone(b, g(0.0), g(1.0));
  const auto n = static_cast<Eigen::Index>(b.n);
  return BlockElement::from_interior(b, grid_size, g(1.0) * CMatrix::Identity(n, n),
                                     [b, g](double t) { return psi_value(b, t, g(t)); });
}

BlockElement multiply(const BlockElement& x, const BlockElement& y) {
  check_same_context(x, y);
  return BlockElement::from_evaluator(x.block(), x.grid_size(), x.boundary() * y.boundary(),
                                      [x, y](double t) -> CMatrix { return x.at(t) * y.at(t); });
}

BlockElement add(const BlockElement& x, const BlockElement& y) {
  check_same_context(x, y);
  return BlockElement::from_evaluator(x.block(), x.grid_size(), x.boundary() + y.boundary(),
                                      [x, y](double t) -> CMatrix { return x.at(t) + y.at(t); });
}

BlockElement scale(const BlockElement& x, Complex s) {
  return BlockElement::from_evaluator(x.block(), x.grid_size(), s * x.boundary(),
                                      [x, s](double t) -> CMatrix { return s * x.at(t); });
}

BlockElement adjoint(const BlockElement& x) {
  return BlockElement::from_evaluator(x.block(), x.grid_size(), x.boundary().adjoint(),
                                      [x](double t) -> CMatrix { return x.at(t).adjoint(); });
}

BlockElement apply_calculus(const BlockElement& e, const std::function<double(double)>& g,
                            double tol) {
  return BlockElement::from_evaluator(e.block(), e.grid_size(), herm_function(e.boundary(), g, tol),
                                      [e, g, tol](double t) { return herm_function(e.at(t), g, tol); });
}

BlockElement random_element(const BuildingBlock& b, std::size_t grid_size, std::mt19937_64& rng,
                            bool self_adjoint) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_matrix = [&](std::size_t dim, double scale_by) {
    const auto d = static_cast<Eigen::Index>(dim);
    CMatrix m(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) {
        const double re = unit(rng);
        const double im = unit(rng);
        m(i, j) = Complex(re, im) * scale_by;
      }
    if (self_adjoint) m = (0.5 * (m + m.adjoint())).eval();
    return m;
  };

  const double inv_dim = 1.0 / static_cast<double>(b.n_prime());
  CMatrix c = random_matrix(b.n, 1.0);
  CMatrix r0 = random_matrix(b.n_prime(), inv_dim);
  CMatrix r1 = random_matrix(b.n_prime(), inv_dim);
  CMatrix p0 = pattern_at_zero(b, c);
  CMatrix p1 = pattern_at_one(b, c);
  return BlockElement::from_interior(b, grid_size, c, [=](double t) -> CMatrix {
    return (1.0 - t) * p0 + t * p1 + (t * (1.0 - t)) * (r0 + t * r1);
  });
}

ProjectionVerdict certify_no_projection(const BlockElement& e, double eps) {
  const std::size_t points = e.grid_size() + 1;
  std::vector<double> defects(points);
  std::vector<double> norms(points);
  std::vector<std::size_t> ranks(points);
  std::vector<char> ties(points, 0);

  auto cut_rank = [eps](const std::vector<double>& spectrum, bool& tie) {
    std::size_t r = 0;
    for (double lambda : spectrum) {
      if (std::abs(lambda - 0.5) <= eps) tie = true;
      if (lambda > 0.5) ++r;
    }
    return r;
  };

  parallel_for(points, [&](std::size_t j) {
    const CMatrix x = e.sample(j);
    const double skew = spectral_norm(x - x.adjoint());
    const double idem = spectral_norm(x * x - x);
    defects[j] = std::max(skew, idem);
    norms[j] = spectral_norm(x);
    const CMatrix herm = 0.5 * (x + x.adjoint());
    bool tie = false;
    ranks[j] = cut_rank(herm_spectrum(herm, 0.0), tie);
    ties[j] = tie ? 1 : 0;
  });

  ProjectionVerdict v;
  v.defect = *std::max_element(defects.begin(), defects.end());
  v.rank_at_zero = ranks.front();
  v.rank_at_one = ranks.back();
  {
    const CMatrix& c = e.boundary();
    bool tie = false;
    v.rank_at_infinity = cut_rank(herm_spectrum(0.5 * (c + c.adjoint()), 0.0), tie);
  }

  if (v.defect > eps) {
    v.reason = ProjectionVerdict::Reason::Defect;
    v.bound = v.defect;
    return v;
  }
  if (std::any_of(ties.begin(), ties.end(), [](char t) { return t != 0; })) {
    v.reason = ProjectionVerdict::Reason::Tie;
    return v;
  }
  for (std::size_t j = 1; j < points; ++j) {
    if (ranks[j] != ranks[0]) {
      v.reason = ProjectionVerdict::Reason::RankJump;
      v.jump_index = j;
      return v;
    }
  }
  const std::size_t a = e.block().a;
  if (v.rank_at_zero != a * v.rank_at_infinity || v.rank_at_one != (a + 1) * v.rank_at_infinity) {
    v.reason = ProjectionVerdict::Reason::EndpointMismatch;
    return v;
  }
  // Constant rank with a·r_∞ = (a+1)·r_∞ forces r_∞ = 0, so r ≡ 0.
  v.kind = ProjectionVerdict::Kind::NearZero;
  v.bound = *std::max_element(norms.begin(), norms.end());
  return v;
}

const char* to_string(ProjectionVerdict::Kind kind) {
  return kind == ProjectionVerdict::Kind::NearZero ? "NearZero" : "NotAlmostProjection";
}

const char* to_string(ProjectionVerdict::Reason reason) {
  switch (reason) {
    case ProjectionVerdict::Reason::None: return "none";
    case ProjectionVerdict::Reason::Defect: return "defect";
    case ProjectionVerdict::Reason::Tie: return "tie";
    case ProjectionVerdict::Reason::RankJump: return "rank-jump";
    case ProjectionVerdict::Reason::EndpointMismatch: return "endpoint-mismatch";
  }
  return "none";
}

}  // namespace razak
