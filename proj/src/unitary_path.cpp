#include "razak/unitary_path.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "razak/parallel.hpp"

namespace razak {

PermutationPath::PermutationPath(Permutation p0, Permutation p1)
    : p0_(std::move(p0)), p1_(std::move(p1)) {
  if (p0_.size() != p1_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "path endpoints have different sizes");
  }
  cycles_ = p1_.after(p0_.inverse()).cycles();
}

CMatrix PermutationPath::at(double t) const {
  if (t == 0.0) return p0_.matrix();
  if (t == 1.0) return p1_.matrix();

  const auto n = static_cast<Eigen::Index>(dimension());
  CMatrix e = CMatrix::Zero(n, n);
  std::vector<Complex> g;
  for (const auto& cycle : cycles_) {
    const std::size_t len = cycle.size();
    if (len == 1) {
      const auto c = static_cast<Eigen::Index>(cycle[0]);
      e(c, c) = 1.0;
      continue;
    }
    // On the cycle the permutation is the shift e_i ↦ e_{i+1}, whose
    // eigenvalue ω^k has principal angle 2πk'/L, k' ≡ k mod L, k' ∈ (−L/2, L/2].
    const double L = static_cast<double>(len);
    g.assign(len, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < len; ++k) {
      const double kp = (2 * k > len) ? static_cast<double>(k) - L : static_cast<double>(k);
      const Complex phase = std::polar(1.0, t * 2.0 * std::numbers::pi * kp / L);
      for (std::size_t r = 0; r < len; ++r) {
        const double w = -2.0 * std::numbers::pi * static_cast<double>((k * r) % len) / L;
        g[r] += phase * std::polar(1.0, w);
      }
    }
    for (auto& v : g) v /= L;
    for (std::size_t i = 0; i < len; ++i) {
      for (std::size_t j = 0; j < len; ++j) {
        e(static_cast<Eigen::Index>(cycle[i]), static_cast<Eigen::Index>(cycle[j])) =
            g[(i + len - j) % len];
      }
    }
  }
  // u = E·P0: column s of u is column σ0(s) of E.
  CMatrix u(n, n);
  for (Eigen::Index s = 0; s < n; ++s) u.col(s) = e.col(static_cast<Eigen::Index>(p0_(static_cast<std::size_t>(s))));
  return u;
}

SpectralPath::SpectralPath(CMatrix u0, CMatrix u1) : u0_(std::move(u0)), u1_(std::move(u1)) {
  if (u0_.rows() != u1_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "path endpoints have different sizes");
  }
  const CMatrix w = u1_ * u0_.adjoint();
  Eigen::ComplexSchur<CMatrix> schur(w);
  basis_ = schur.matrixU();
  const auto& tri = schur.matrixT();
  angles_.resize(tri.rows());
  for (Eigen::Index i = 0; i < tri.rows(); ++i) angles_(i) = std::arg(tri(i, i));
}

CMatrix SpectralPath::at(double t) const {
  if (t == 0.0) return u0_;
  if (t == 1.0) return u1_;
  Eigen::VectorXcd phases(angles_.size());
  for (Eigen::Index i = 0; i < angles_.size(); ++i) phases(i) = std::polar(1.0, t * angles_(i));
  return basis_ * phases.asDiagonal() * basis_.adjoint() * u0_;
}

SampledPath::SampledPath(MatrixGridFunction samples) : samples_(std::move(samples)) {}

std::size_t SampledPath::dimension() const {
  return static_cast<std::size_t>(samples_[0].rows());
}

CMatrix SampledPath::at(double t) const { return samples_.interpolate(t); }

ComposedPath::ComposedPath(PathPtr outer, PathPtr inner, std::vector<BranchMap> outer_branches)
    : outer_(std::move(outer)), inner_(std::move(inner)), outer_branches_(std::move(outer_branches)) {
  if (outer_->dimension() != inner_->dimension() * outer_branches_.size()) {
    throw Error(ErrorKind::ChainMismatch, "composed path dimensions do not chain");
  }
}

CMatrix ComposedPath::at(double x) const {
  const CMatrix uo = outer_->at(x);
  const auto k = static_cast<Eigen::Index>(inner_->dimension());
  CMatrix out(uo.rows(), uo.cols());
  // Constant branches share one inner value.
  CMatrix mid;
  bool have_mid = false;
  for (std::size_t l = 0; l < outer_branches_.size(); ++l) {
    const BranchMap& xi = outer_branches_[l];
    const auto off = static_cast<Eigen::Index>(l) * k;
    if (xi.constant) {
      if (!have_mid) {
        mid = inner_->at(xi(x));
        have_mid = true;
      }
      out.middleCols(off, k).noalias() = uo.middleCols(off, k) * mid;
    } else {
      out.middleCols(off, k).noalias() = uo.middleCols(off, k) * inner_->at(xi(x));
    }
  }
  return out;
}

namespace {

bool is_unitary(const CMatrix& u) {
  return u.rows() == u.cols() && u.rows() > 0 && unitarity_defect(u) <= kUnitaryTol;
}

}  // namespace

PathPtr make_unitary_path(const CMatrix& u0, const CMatrix& u1) {
  if (!is_unitary(u0) || !is_unitary(u1)) {
    throw Error(ErrorKind::NotUnitary, "path endpoints must be unitary");
  }
  if (u0.rows() != u1.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "path endpoints have different sizes");
  }
  auto p0 = permutation_from_matrix(u0);
  auto p1 = permutation_from_matrix(u1);
  if (p0 && p1) return std::make_shared<PermutationPath>(std::move(*p0), std::move(*p1));
  return std::make_shared<SpectralPath>(u0, u1);
}

MatrixGridFunction unitary_path(const CMatrix& u0, const CMatrix& u1, std::size_t grid_size) {
  const PathPtr path = make_unitary_path(u0, u1);
  std::vector<CMatrix> samples(grid_size + 1);
  parallel_for(grid_size + 1, [&](std::size_t j) {
    samples[j] = path->at(MatrixGridFunction::point(grid_size, j));
  });
  return MatrixGridFunction(grid_size, std::move(samples));
}

double path_unitarity_defect(const UnitaryPath& path, std::size_t grid_size) {
  std::vector<double> d(grid_size + 1);
  parallel_for(grid_size + 1, [&](std::size_t j) {
    d[j] = unitarity_defect(path.at(MatrixGridFunction::point(grid_size, j)));
  });
  double worst = 0.0;
  for (double v : d) worst = std::max(worst, v);
  return worst;
}

}  // namespace razak
