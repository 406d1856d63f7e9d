#include "razak/numkernel.hpp"

#include <algorithm>
#include <cmath>

#include "razak/parallel.hpp"

namespace razak {

CMatrix herm_function(const CMatrix& m, const std::function<double(double)>& g, double tol) {
  const HermitianEigen eig = herm_eigen(m, tol);
  RVector gv(eig.values.size());
  for (Eigen::Index i = 0; i < gv.size(); ++i) gv(i) = g(eig.values(i));
  return eig.vectors * gv.asDiagonal() * eig.vectors.adjoint();
}

MatrixGridFunction scalar_calculus(const MatrixGridFunction& f,
                                   const std::function<double(double)>& g, double tol) {
  std::vector<CMatrix> out(f.size());
  parallel_for(f.size(), [&](std::size_t j) { out[j] = herm_function(f[j], g, tol); });
  return MatrixGridFunction(f.grid_size(), std::move(out));
}

double frobenius_norm(const CMatrix& m) { return m.norm(); }

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && hermitian_defect(m) == 0.0) {
    const auto values = herm_spectrum(m, 0.0);
    return std::max(std::abs(values.front()), std::abs(values.back()));
  }
  const CMatrix gram = m.adjoint() * m;
  const auto values = herm_spectrum(gram, std::max(1e-12, 1e-12 * gram.norm()));
  return std::sqrt(std::max(0.0, values.back()));
}

double hermitian_defect(const CMatrix& m) { return (m - m.adjoint()).norm(); }

double unitarity_defect(const CMatrix& u) {
  return (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).norm();
}

double sup_norm(const MatrixGridFunction& f) {
  std::vector<double> norms(f.size());
  parallel_for(f.size(), [&](std::size_t j) { norms[j] = spectral_norm(f[j]); });
  return *std::max_element(norms.begin(), norms.end());
}

double sup_norm(const RealGridFunction& f) {
  double best = 0.0;
  for (double v : f.samples()) best = std::max(best, std::abs(v));
  return best;
}

double normalized_trace(const CMatrix& m) {
  return m.trace().real() / static_cast<double>(m.rows());
}

CMatrix direct_sum(std::span<const CMatrix> blocks) {
  Eigen::Index dim = 0;
  for (const auto& b : blocks) dim += b.rows();
  CMatrix out = CMatrix::Zero(dim, dim);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

CMatrix repeat_diag(const CMatrix& block, std::size_t copies, std::size_t zero_tail) {
  const Eigen::Index n = block.rows();
  const auto dim = static_cast<Eigen::Index>(copies) * n + static_cast<Eigen::Index>(zero_tail);
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < copies; ++k) {
    out.block(static_cast<Eigen::Index>(k) * n, static_cast<Eigen::Index>(k) * n, n, n) = block;
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix identity(std::size_t dim) {
  return CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

}  // namespace razak
