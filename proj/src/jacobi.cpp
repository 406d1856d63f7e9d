// Cyclic Jacobi eigensolver for complex Hermitian matrices.
//
// Each rotation G = Φ·R zeroes the pivot a_pq, where Φ = diag(1, conj(e))
// makes the pivot real (e = a_pq/|a_pq|) and R is the classical real Jacobi
// rotation. A ← G*·A·G is applied to columns p and q; rows follow from
// Hermitian symmetry.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "razak/numkernel.hpp"

namespace razak {
namespace {

thread_local int g_last_sweeps = 0;

constexpr int kMaxSweeps = 64;

double off_diagonal_mass(const CMatrix& a) {
  double sum = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index p = 0; p < n; ++p)
      if (p != q) sum += std::norm(a(p, q));
  return std::sqrt(sum);
}

void check_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "expected a nonempty square matrix");
  }
  const double defect = hermitian_defect(m);
  if (!(defect <= tol)) {
    throw Error(ErrorKind::NotHermitian,
                "‖m − m*‖ = " + std::to_string(defect) + " exceeds " + std::to_string(tol));
  }
}

// Diagonalizes a (overwritten) in place; accumulates rotations into v if given.
void jacobi(CMatrix& a, CMatrix* v) {
  const Eigen::Index n = a.rows();
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  const double threshold = 1e-12 * static_cast<double>(n) * scale;

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) < threshold) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r < std::numeric_limits<double>::min()) continue;

        const Complex e = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        double t;
        if (std::abs(tau) > 1e150) {
          t = 0.5 / tau;
        } else {
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex ebar = std::conj(e);

        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          const Complex new_kp = c * akp - s * ebar * akq;
          const Complex new_kq = s * akp + c * ebar * akq;
          a(k, p) = new_kp;
          a(k, q) = new_kq;
          a(p, k) = std::conj(new_kp);
          a(q, k) = std::conj(new_kq);
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (v) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const Complex vkp = (*v)(k, p);
            const Complex vkq = (*v)(k, q);
            (*v)(k, p) = c * vkp - s * ebar * vkq;
            (*v)(k, q) = s * vkp + c * ebar * vkq;
          }
        }
      }
    }
  }
  g_last_sweeps = sweep;
}

CMatrix hermitian_part(const CMatrix& m) {
  CMatrix h = 0.5 * (m + m.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = h(i, i).real();
  return h;
}

}  // namespace

int last_jacobi_sweeps() { return g_last_sweeps; }

std::vector<double> herm_spectrum(const CMatrix& m, double tol) {
  check_hermitian(m, tol);
  CMatrix a = hermitian_part(m);
  jacobi(a, nullptr);
  std::vector<double> values(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) values[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

HermitianEigen herm_eigen(const CMatrix& m, double tol) {
  check_hermitian(m, tol);
  CMatrix a = hermitian_part(m);
  CMatrix v = CMatrix::Identity(a.rows(), a.cols());
  jacobi(a, &v);

  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real() <
           a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real();
  });

  HermitianEigen out;
  out.values.resize(a.rows());
  out.vectors.resize(a.rows(), a.cols());
  for (std::size_t k = 0; k < n; ++k) {
    const auto src = static_cast<Eigen::Index>(order[k]);
    const auto dst = static_cast<Eigen::Index>(k);
    out.values(dst) = a(src, src).real();
    out.vectors.col(dst) = v.col(src);
  }
  return out;
}

}  // namespace razak
