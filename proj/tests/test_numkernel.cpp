#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "razak/blocks.hpp"
#include "razak/numkernel.hpp"

using namespace razak;

namespace {

CMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

CMatrix diag(std::initializer_list<double> values) {
  RVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v(k++) = x;
  return v.cast<Complex>().asDiagonal();
}

}  // namespace

TEST_CASE("spectrum of small fixed matrices") {
  auto s = herm_spectrum(diag({1.0, 0.0}));
  CHECK(s[0] == doctest::Approx(0.0));
  CHECK(s[1] == doctest::Approx(1.0));

  CMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  s = herm_spectrum(swap);
  CHECK(s[0] == doctest::Approx(-1.0));
  CHECK(s[1] == doctest::Approx(1.0));
}

TEST_CASE("non-Hermitian input is rejected") {
  CMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(herm_spectrum(m), Error);
  try {
    herm_spectrum(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
}

TEST_CASE("Jacobi agrees with an independent eigensolver") {
  std::mt19937_64 rng(7);
  for (std::size_t dim : {1u, 2u, 5u, 12u, 40u, 97u}) {
    const CMatrix m = random_hermitian(dim, rng);
    const HermitianEigen e = herm_eigen(m);
    Eigen::SelfAdjointEigenSolver<CMatrix> oracle(m);
    const double scale = m.norm();
    CHECK((e.values - oracle.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-12 * scale * static_cast<double>(dim));

    const CMatrix recon = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    CHECK((recon - m).norm() <= 10.0 * kHermitianTol * static_cast<double>(dim));
    CHECK(unitarity_defect(e.vectors) <= 1e-10 * static_cast<double>(dim));
  }
}

TEST_CASE("eigenvalues come out ascending") {
  std::mt19937_64 rng(11);
  const auto s = herm_spectrum(random_hermitian(30, rng));
  for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k - 1] <= s[k]);
}

TEST_CASE("scalar calculus examples") {
  const BuildingBlock b = make_block(1, 1);
  const MatrixGridFunction h = canonical_h(b, 16).samples();

  const auto same = scalar_calculus(h, [](double t) { return t; });
  for (std::size_t j = 0; j < h.size(); ++j) CHECK((same[j] - h[j]).norm() <= 1e-12);

  const auto proj = MatrixGridFunction::tabulate(4, [](double) { return diag({1.0, 0.0}); });
  const auto root = scalar_calculus(proj, [](double t) { return std::sqrt(std::max(t, 0.0)); });
  for (std::size_t j = 0; j < root.size(); ++j) CHECK((root[j] - diag({1.0, 0.0})).norm() <= 1e-12);

  const auto sq = scalar_calculus(h, [](double t) { return t * t; });
  CHECK((sq[8] - diag({1.0, 0.25})).norm() <= 1e-12);  // t = 1/2
}

TEST_CASE("scalar calculus composes") {
  std::mt19937_64 rng(3);
  std::vector<CMatrix> samples;
  for (int j = 0; j <= 8; ++j) samples.push_back(random_hermitian(6, rng));
  const MatrixGridFunction f(8, samples);
  auto g1 = [](double t) { return std::sin(t); };
  auto g2 = [](double t) { return t * t - 0.5 * t; };
  const auto once = scalar_calculus(f, [&](double t) { return g1(g2(t)); });
  const auto twice = scalar_calculus(scalar_calculus(f, g2), g1);
  for (std::size_t j = 0; j < once.size(); ++j) CHECK((once[j] - twice[j]).norm() <= 1e-9);
}

TEST_CASE("sup norm examples") {
  const BuildingBlock b = make_block(1, 1);
  const std::size_t n = 256;
  CHECK(sup_norm(zero_element(b, n).samples()) == 0.0);
  const MatrixGridFunction h = canonical_h(b, n).samples();
  CHECK(sup_norm(h) == doctest::Approx(1.0).epsilon(1e-14));

  const auto defect = MatrixGridFunction::tabulate(n, [&](double t) {
    const CMatrix x = canonical_h(b, n).at(t);
    return CMatrix(x * x - x);
  });
  CHECK(sup_norm(defect) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("sup norm is submultiplicative and satisfies the C*-identity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  auto random_fn = [&] {
    std::vector<CMatrix> s;
    for (int j = 0; j <= 8; ++j) {
      CMatrix m(4, 4);
      for (Eigen::Index c = 0; c < 4; ++c)
        for (Eigen::Index r = 0; r < 4; ++r) m(r, c) = Complex(u(rng), u(rng));
      s.push_back(m);
    }
    return MatrixGridFunction(8, s);
  };
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_fn();
    const auto g = random_fn();
    std::vector<CMatrix> fg, ff;
    for (std::size_t j = 0; j < f.size(); ++j) {
      fg.push_back(f[j] * g[j]);
      ff.push_back(f[j].adjoint() * f[j]);
    }
    CHECK(sup_norm(MatrixGridFunction(8, fg)) <= sup_norm(f) * sup_norm(g) + 1e-12);
    CHECK(sup_norm(MatrixGridFunction(8, ff)) == doctest::Approx(sup_norm(f) * sup_norm(f)).epsilon(1e-9));
  }
}

TEST_CASE("spectral norm matches singular values") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  CMatrix m(7, 7);
  for (Eigen::Index c = 0; c < 7; ++c)
    for (Eigen::Index r = 0; r < 7; ++r) m(r, c) = Complex(u(rng), u(rng));
  Eigen::JacobiSVD<CMatrix> svd(m);
  CHECK(spectral_norm(m) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
}

TEST_CASE("direct sums, repeats and Kronecker products") {
  const CMatrix a = diag({1.0, 2.0});
  const CMatrix b = diag({3.0});
  const std::vector<CMatrix> parts{a, b};
  CHECK((direct_sum(parts) - diag({1.0, 2.0, 3.0})).norm() == 0.0);
  CHECK((repeat_diag(b, 2, 1) - diag({3.0, 3.0, 0.0})).norm() == 0.0);
  CHECK((kron(a, identity(2)) - diag({1.0, 1.0, 2.0, 2.0})).norm() == 0.0);
  CHECK(normalized_trace(diag({1.0, 0.5, 1.0})) == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("grid functions keep exact endpoints and interpolate linearly") {
  const auto f = RealGridFunction::tabulate(4, [](double t) { return 3.0 * t; });
  CHECK(f.point(0) == 0.0);
  CHECK(f.point(4) == 1.0);
  CHECK(f.interpolate(0.125) == doctest::Approx(0.375));
  CHECK_THROWS_AS(RealGridFunction(4, std::vector<double>(3, 0.0)), Error);
}
