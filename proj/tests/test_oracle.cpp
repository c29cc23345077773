#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "theta/errors.hpp"
#include "theta/oracle.hpp"

namespace theta {
namespace {

const Prime p2 = Prime::including_two(2);
const Prime p3(3), p5(5);

const CaseClass kInert{CaseKind::Inert, 0, 2};
const CaseClass kRamified{CaseKind::Ramified, 1, 2};
const CaseClass kSplit{CaseKind::Split, 0, 1};

TreeVertex vertex_of(CaseKind kind, int d, const Prime& p) {
  return canonicalize(standard_coset_rep(kind, d, p).matrix, p);
}

TEST(BfsBall, Sizes) {
  EXPECT_EQ(oracle::bfs_ball(p3, 1).size(), 5u);
  EXPECT_EQ(oracle::bfs_ball(p2, 2).size(), 10u);
  EXPECT_EQ(oracle::bfs_ball(p5, 0).size(), 1u);
  EXPECT_THROW(oracle::bfs_ball(p3, 7), RadiusTooLarge);
  EXPECT_THROW(oracle::bfs_ball(p3, -1), RadiusTooLarge);
}

TEST(BfsBall, SortedByDistanceThenVertex) {
  auto ball = oracle::bfs_ball(p3, 3);
  EXPECT_TRUE(std::is_sorted(ball.begin(), ball.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  }));
  for (const auto& [v, d] : ball) EXPECT_EQ(v.d, d);
}

TEST(OrbitClosure, InertSphere) {
  auto gens = hx_generators_mod(kInert, p3, 3);
  auto r = oracle::orbit_closure(gens, vertex_of(CaseKind::Inert, 1, p3), 3, p3);
  EXPECT_EQ(r.orbit.size(), 4u);
  for (const TreeVertex& v : r.orbit) EXPECT_EQ(v.d, 1);
  EXPECT_EQ(r.generator_count, static_cast<int>(gens.size()));
  EXPECT_GE(r.closure_rounds, 1);
}

TEST(OrbitClosure, RamifiedSphereAroundEdge) {
  auto gens = hx_generators_mod(kRamified, p3, 3);
  auto r = oracle::orbit_closure(gens, vertex_of(CaseKind::Ramified, 2, p3), 3, p3);
  EXPECT_EQ(r.orbit.size(), 6u);
  EdgeRef e(TreeVertex::base(), TreeVertex::upper(1, 0), p3);
  for (const TreeVertex& v : r.orbit) EXPECT_EQ(dist_to_edge(v, e, p3), 1);
}

TEST(OrbitClosure, SplitTorusMovesAlongApartment) {
  auto gens = hx_generators_mod(kSplit, p3, 2);
  auto r = oracle::orbit_closure(gens, TreeVertex::base(), 2, p3);
  std::set<TreeVertex> want;
  for (int k = -2; k <= 2; ++k) want.insert(apartment_vertex(k, p3));
  EXPECT_EQ(r.orbit, want);
}

TEST(OrbitClosure, SplitOrbitIsApartmentDistanceLevelSet) {
  auto gens = hx_generators_mod(kSplit, p3, 4);
  for (int d = 0; d <= 2; ++d) {
    auto r = oracle::orbit_closure(gens, vertex_of(CaseKind::Split, d, p3), 4, p3);
    std::set<TreeVertex> want;
    for (const auto& [v, dist] : oracle::bfs_ball(p3, 4)) {
      if (dist_to_apartment(v, p3) == d) want.insert(v);
    }
    EXPECT_EQ(r.orbit, want) << "d = " << d;
  }
}

TEST(OrbitClosure, IndependentOfGeneratorOrder) {
  std::mt19937_64 rng(6);
  for (const CaseClass& c : {kInert, kRamified, kSplit}) {
    auto gens = hx_generators_mod(c, p3, 2);
    const TreeVertex start = vertex_of(c.kind, 2, p3);
    auto base = oracle::orbit_closure(gens, start, 3, p3).orbit;
    for (int s = 0; s < 3; ++s) {
      std::shuffle(gens.begin(), gens.end(), rng);
      EXPECT_EQ(oracle::orbit_closure(gens, start, 3, p3).orbit, base);
    }
  }
}

TEST(OrbitClosure, LevelStable) {
  for (const CaseClass& c : {kInert, kRamified}) {
    for (int d = c.kind == CaseKind::Ramified ? 1 : 0; d <= 2; ++d) {
      const TreeVertex start = vertex_of(c.kind, d, p3);
      auto a = oracle::orbit_closure(hx_generators_mod(c, p3, d + 1), start, 4, p3).orbit;
      auto b = oracle::orbit_closure(hx_generators_mod(c, p3, d + 2), start, 4, p3).orbit;
      EXPECT_EQ(a, b);
    }
  }
}

TEST(OrbitClosure, StartOutsideBallIsEmpty) {
  auto r = oracle::orbit_closure(hx_generators_mod(kInert, p3, 1), TreeVertex::upper(3, 0), 2, p3);
  EXPECT_TRUE(r.orbit.empty());
}

TEST(StabilizerIndex, CompactTori) {
  auto in = hx_generators_mod(kInert, p3, 3);
  EXPECT_EQ(oracle::stabilizer_index(in, vertex_of(CaseKind::Inert, 1, p3), p3), 4);
  EXPECT_EQ(oracle::stabilizer_index(in, vertex_of(CaseKind::Inert, 2, p3), p3), 12);
  auto ram = hx_generators_mod(kRamified, p3, 3);
  EXPECT_EQ(oracle::stabilizer_index(ram, vertex_of(CaseKind::Ramified, 1, p3), p3), 2);
  EXPECT_EQ(oracle::stabilizer_index(ram, vertex_of(CaseKind::Ramified, 2, p3), p3), 6);
}

TEST(StabilizerIndex, TimesVolumeIsOne) {
  for (const CaseClass& c : {kInert, kRamified}) {
    auto gens = hx_generators_mod(c, p3, 3);
    for (int d = c.kind == CaseKind::Ramified ? 1 : 0; d <= 2; ++d) {
      CosetRep rep = standard_coset_rep(c.kind, d, p3);
      long index = oracle::stabilizer_index(gens, canonicalize(rep.matrix, p3), p3);
      EXPECT_EQ(Rational(index) * stabilizer_volume(c, rep, p3), 1);
    }
  }
}

// The split stabilizer vol(H_x cap delta_d K delta_d^{-1}) has index
// (p - 1) p^{d-1} in H_x cap K for d >= 1.
TEST(StabilizerIndex, SplitCompactPart) {
  for (const Prime& p : {p3, p5}) {
    auto gens = hx_cap_k_generators_mod(kSplit, p, 3);
    for (int d = 0; d <= 3; ++d) {
      CosetRep rep = standard_coset_rep(CaseKind::Split, d, p);
      long index = oracle::stabilizer_index(gens, canonicalize(rep.matrix, p), p);
      long want = d == 0 ? 1 : (p.value() - 1) * testing::ipow(p.value(), d - 1);
      EXPECT_EQ(index, want) << "p = " << p.value() << ", d = " << d;
      EXPECT_EQ(Rational(index) * stabilizer_volume(kSplit, rep, p), 1);
    }
  }
}

TEST(StabilizerIndex, GuardTrips) {
  auto gens = hx_generators_mod(kSplit, p3, 1);
  EXPECT_THROW(oracle::stabilizer_index(gens, TreeVertex::base(), p3, 3), GuardExceeded);
}

}  // namespace
}  // namespace theta
