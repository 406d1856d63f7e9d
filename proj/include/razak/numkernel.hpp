#pragma once

// Dense complex-matrix kernel: Hermitian spectra (cyclic Jacobi), functional
// calculus, norms, direct sums, Kronecker products and uniform-grid functions.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "razak/errors.hpp"

namespace razak {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Default tolerance on ‖m − m*‖ accepted by the Hermitian routines.
inline constexpr double kHermitianTol = 1e-9;

/// Samples of a function on the uniform grid t_j = j/N, j = 0..N.
/// t_0 = 0 and t_N = 1 are exact.
template <class T>
class GridFunction {
 public:
  GridFunction() = default;

  GridFunction(std::size_t grid_size, std::vector<T> samples)
      : grid_size_(grid_size), samples_(std::move(samples)) {
    if (grid_size_ == 0 || samples_.size() != grid_size_ + 1) {
      throw Error(ErrorKind::DimensionMismatch,
                  "grid function needs N+1 samples for grid size N >= 1");
    }
  }

  template <class F>
  static GridFunction tabulate(std::size_t grid_size, F&& f) {
    std::vector<T> samples;
    samples.reserve(grid_size + 1);
    for (std::size_t j = 0; j <= grid_size; ++j) samples.push_back(f(point(grid_size, j)));
    return GridFunction(grid_size, std::move(samples));
  }

  static double point(std::size_t grid_size, std::size_t j) {
    return j == grid_size ? 1.0 : static_cast<double>(j) / static_cast<double>(grid_size);
  }

  std::size_t grid_size() const { return grid_size_; }
  std::size_t size() const { return samples_.size(); }
  double point(std::size_t j) const { return point(grid_size_, j); }

  const T& operator[](std::size_t j) const { return samples_[j]; }
  const std::vector<T>& samples() const { return samples_; }

  /// Linear interpolation between neighbouring samples; exact at grid points.
  T interpolate(double t) const {
    if (t <= 0.0) return samples_.front();
    if (t >= 1.0) return samples_.back();
    const double scaled = t * static_cast<double>(grid_size_);
    const auto lo = static_cast<std::size_t>(scaled);
    const double frac = scaled - static_cast<double>(lo);
    if (frac == 0.0 || lo >= grid_size_) return samples_[std::min(lo, grid_size_)];
    return T(samples_[lo] * (1.0 - frac) + samples_[lo + 1] * frac);
  }

 private:
  std::size_t grid_size_ = 0;
  std::vector<T> samples_;
};

using MatrixGridFunction = GridFunction<CMatrix>;
using RealGridFunction = GridFunction<double>;

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns are eigenvectors
};

/// Eigenvalues (ascending) of a Hermitian matrix by cyclic Jacobi rotations.
/// Throws NotHermitian if ‖m − m*‖_F > tol.
std::vector<double> herm_spectrum(const CMatrix& m, double tol = kHermitianTol);

/// Eigenvalues and an orthonormal eigenbasis: m ≈ V·diag(values)·V*.
HermitianEigen herm_eigen(const CMatrix& m, double tol = kHermitianTol);

/// Sweep count of the last Jacobi run on this thread (diagnostics).
int last_jacobi_sweeps();

/// g(m) = V·diag(g(λ))·V* for Hermitian m.
CMatrix herm_function(const CMatrix& m, const std::function<double(double)>& g,
                      double tol = kHermitianTol);

/// Pointwise functional calculus over the grid; evaluation is parallel over grid points.
MatrixGridFunction scalar_calculus(const MatrixGridFunction& f,
                                   const std::function<double(double)>& g,
                                   double tol = kHermitianTol);

double frobenius_norm(const CMatrix& m);

/// Operator (spectral) norm.
double spectral_norm(const CMatrix& m);

/// ‖m − m*‖_F.
double hermitian_defect(const CMatrix& m);

/// ‖u·u* − I‖_F.
double unitarity_defect(const CMatrix& u);

/// Max over grid points of the spectral norm. This is a lower bound of the
/// sup norm of the underlying continuous function.
double sup_norm(const MatrixGridFunction& f);
double sup_norm(const RealGridFunction& f);

/// Normalized trace tr(m) = Tr(m)/dim (real part).
double normalized_trace(const CMatrix& m);

CMatrix direct_sum(std::span<const CMatrix> blocks);

/// diag(block, ..., block, 0_{zero_tail}) with `copies` repetitions.
CMatrix repeat_diag(const CMatrix& block, std::size_t copies, std::size_t zero_tail = 0);

CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix identity(std::size_t dim);

}  // namespace razak
