#pragma once

// Brute-force ground truth for the tree and double-coset modules: breadth
// first search from the base vertex, orbit closures under explicit torus
// generators, and stabilizer indices as orbit sizes.

#include <set>
#include <utility>
#include <vector>

#include "theta/bt_tree.hpp"
#include "theta/padic.hpp"
#include "theta/quadspace.hpp"

namespace theta::oracle {

inline constexpr int kMaxBallRadius = 6;
inline constexpr std::size_t kMaxOrbitSize = 100000;

/// Every vertex within `radius` of K with its BFS distance, sorted by
/// (distance, vertex). Throws RadiusTooLarge above kMaxBallRadius.
std::vector<std::pair<TreeVertex, int>> bfs_ball(const Prime& p, int radius);

struct OrbitReport {
  TreeVertex start;
  std::set<TreeVertex> orbit;
  int generator_count = 0;
  int closure_rounds = 0;
};

/// Least set containing `start`, closed under the generators and their
/// inverses, restricted to the ball of radius ball_radius around K.
OrbitReport orbit_closure(const std::vector<ProjMat>& gens, const TreeVertex& start, int ball_radius,
                          const Prime& p);

/// Orbit size of `target` under the group generated by gens (no ball
/// truncation). Throws GuardExceeded if the orbit leaves the radius-guard
/// ball or exceeds kMaxOrbitSize vertices.
long stabilizer_index(const std::vector<ProjMat>& gens, const TreeVertex& target, const Prime& p,
                      int radius_guard = 12);

}  // namespace theta::oracle
