#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "razak/errors.hpp"
#include "razak/homs.hpp"

using namespace razak;

namespace {

constexpr std::size_t kGrid = 64;

CMatrix diag(std::initializer_list<double> values) {
  RVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v(k++) = x;
  return v.cast<Complex>().asDiagonal();
}

std::vector<double> sorted_union_of_spectra(const std::vector<CMatrix>& blocks) {
  std::vector<double> all;
  for (const CMatrix& b : blocks) {
    const auto s = herm_spectrum(b);
    all.insert(all.end(), s.begin(), s.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

TEST_CASE("successor of A(1,2)") {
  const Successor s = build_successor(make_block(1, 1), kGrid);
  CHECK(s.block == make_block(3, 3));
  CHECK(s.map.multiplicity() == 6);
  const std::vector<BranchMap> expected{BranchMap::lower_half(), BranchMap::lower_half(), BranchMap::lower_half(),
                                        BranchMap::midpoint(),   BranchMap::upper_half(), BranchMap::upper_half()};
  CHECK(s.map.branches == expected);
  CHECK(successor_branches(make_block(1, 1)) == expected);

  const Successor s2 = build_successor(s.block, kGrid);
  CHECK(s2.block == make_block(21, 7));
  CHECK(s2.map.multiplicity() == 14);
}

TEST_CASE("image of h under the first step") {
  const Successor s = build_successor(make_block(1, 1), kGrid);
  const BlockElement h = canonical_h(make_block(1, 1), kGrid);
  const BlockElement image = apply_map(s.map, h);
  CHECK((image.boundary() - diag({1.0, 0.5, 1.0})).norm() == 0.0);
  CHECK(validate_element(image) <= 1e-15);
  CHECK((image.at(1.0) - pattern_at_one(s.block, diag({1.0, 0.5, 1.0}))).norm() <= 1e-15);

  const auto eigs = herm_spectrum(image.at(0.0));
  const std::vector<double> expected{0, 0, 0, 0.5, 0.5, 0.5, 1, 1, 1, 1, 1, 1};
  REQUIRE(eigs.size() == expected.size());
  for (std::size_t k = 0; k < eigs.size(); ++k) CHECK(eigs[k] == doctest::Approx(expected[k]).epsilon(1e-14));

  CHECK_THROWS_AS(apply_map(s.map, canonical_h(make_block(1, 2), kGrid)), Error);
}

TEST_CASE("conjugation preserves the branch spectra") {
  std::mt19937_64 rng(59);
  const Successor s = build_successor(make_block(1, 2), kGrid);
  const BlockElement e = random_element(make_block(1, 2), kGrid, rng, true);
  for (double x : {0.0, 0.2, 0.5, 0.77, 1.0}) {
    const auto got = herm_spectrum(apply_at(s.map, e, x));
    std::vector<CMatrix> blocks;
    for (const BranchMap& xi : s.map.branches) blocks.push_back(e.at(xi(x)));
    const auto want = sorted_union_of_spectra(blocks);
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12));
  }
}

TEST_CASE("successor maps are multiplicative and respect adjoints") {
  std::mt19937_64 rng(61);
  for (std::size_t a : {1u, 2u}) {
    const BuildingBlock b = make_block(1, a);
    const Successor s = build_successor(b, kGrid);
    std::vector<BlockElement> samples;
    for (int k = 0; k < 4; ++k) samples.push_back(random_element(b, kGrid, rng));
    const MapMetrics m = map_metrics(s.map, samples);
    CHECK(m.hom_defect <= 1e-12);
    CHECK(m.adjoint_defect <= 1e-12);
    CHECK(m.boundary_defect <= 1e-12);
    CHECK(m.covers);
    CHECK(m.oscillation == Dyadic{1, 1});
  }
}

TEST_CASE("composition of two steps") {
  const Successor s1 = build_successor(make_block(1, 1), kGrid);
  const Successor s2 = build_successor(s1.block, kGrid);
  const ConnectingMap phi = compose_maps(s2.map, s1.map);
  CHECK(phi.kind == ConnectingMap::Kind::Composite);
  CHECK(phi.multiplicity() == 84);
  CHECK(phi.source == make_block(1, 1));
  CHECK(phi.target == s2.block);

  std::set<double> at_zero;
  for (const BranchMap& xi : phi.branches) at_zero.insert(xi(0.0));
  CHECK(at_zero == std::set<double>{0.0, 0.25, 0.5, 0.75});
  CHECK(branch_oscillation(phi.branches) == Dyadic{1, 2});
  CHECK(branches_cover(phi.branches));

  // Functoriality against the two steps applied in turn.
  std::mt19937_64 rng(67);
  const BlockElement e = random_element(make_block(1, 1), kGrid, rng);
  const BlockElement direct = apply_map(phi, e);
  const BlockElement twice = apply_map(s2.map, apply_map(s1.map, e));
  CHECK((direct.boundary() - twice.boundary()).norm() <= 1e-14);
  for (double x : {0.0, 0.125, 0.3, 1.0}) CHECK((direct.at(x) - twice.at(x)).norm() <= 1e-12);
  CHECK(validate_element(direct) <= 1e-12);
}

TEST_CASE("composition errors and identities") {
  const Successor s1 = build_successor(make_block(1, 1), kGrid);
  try {
    compose_maps(s1.map, s1.map);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ChainMismatch);
  }
  const ConnectingMap left = compose_maps(identity_map(s1.block, kGrid), s1.map);
  const ConnectingMap right = compose_maps(s1.map, identity_map(make_block(1, 1), kGrid));
  CHECK(left.branches == s1.map.branches);
  CHECK(right.branches == s1.map.branches);
  CHECK(left.kind == ConnectingMap::Kind::Step);
}

TEST_CASE("exact branch tests") {
  CHECK(!branches_cover({BranchMap::lower_half(), BranchMap::midpoint()}));
  CHECK(branches_cover({BranchMap::lower_half(), BranchMap::upper_half()}));
  CHECK(branches_cover({BranchMap::identity()}));
  CHECK(branch_oscillation({BranchMap::midpoint()}) == Dyadic{0, 0});
  CHECK(branch_oscillation({BranchMap::identity(), BranchMap::lower_half()}) == Dyadic{1, 0});
  const BranchMap quarter = BranchMap::lower_half().after(BranchMap::upper_half());
  CHECK(quarter(0.0) == 0.25);
  CHECK(quarter(1.0) == 0.5);
}

TEST_CASE("approximate unit defect decreases with the order") {
  const Successor s = build_successor(make_block(1, 1), kGrid);
  const BlockElement h = canonical_h(make_block(1, 1), kGrid);
  MapMetricsRequest req;
  req.hom_defect = false;
  req.adjoint_defect = false;
  req.approx_unit_orders = {1, 4, 16};
  const MapMetrics m = map_metrics(s.map, {h}, req);
  REQUIRE(m.approx_unit_defect.size() == 3);
  CHECK(m.approx_unit_defect[0].second == doctest::Approx(0.25));
  CHECK(m.approx_unit_defect[1].second < m.approx_unit_defect[0].second);
  CHECK(m.approx_unit_defect[2].second < m.approx_unit_defect[1].second);
}
