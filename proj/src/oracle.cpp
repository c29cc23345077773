#include "theta/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "theta/errors.hpp"

namespace theta::oracle {

std::vector<std::pair<TreeVertex, int>> bfs_ball(const Prime& p, int radius) {
  if (radius < 0 || radius > kMaxBallRadius) {
    throw RadiusTooLarge("radius " + std::to_string(radius) + " outside [0, " +
                         std::to_string(kMaxBallRadius) + "]");
  }
  std::map<TreeVertex, int> seen{{TreeVertex::base(), 0}};
  std::deque<TreeVertex> queue{TreeVertex::base()};
  while (!queue.empty()) {
    TreeVertex v = queue.front();
    queue.pop_front();
    int dv = seen[v];
    if (dv == radius) continue;
    for (const TreeVertex& w : neighbors(v, p)) {
      if (seen.emplace(w, dv + 1).second) queue.push_back(w);
    }
  }
  std::vector<std::pair<TreeVertex, int>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second, x.first) < std::tie(y.second, y.first);
  });
  return out;
}

namespace {

std::vector<ProjMat> with_inverses(const std::vector<ProjMat>& gens) {
  std::vector<ProjMat> all = gens;
  for (const ProjMat& g : gens) all.push_back(g.inverse());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

// Rounds of frontier expansion; `keep` filters vertices, `on_reject` fires
// for filtered vertices.
template <class Keep, class Reject>
int close(const std::vector<ProjMat>& moves, std::set<TreeVertex>& orbit, const Prime& p, Keep keep,
          Reject on_reject) {
  std::vector<TreeVertex> frontier(orbit.begin(), orbit.end());
  int rounds = 0;
  while (!frontier.empty()) {
    ++rounds;
    std::vector<TreeVertex> next;
    for (const TreeVertex& v : frontier) {
      ProjMat m = v.matrix(p);
      for (const ProjMat& g : moves) {
        TreeVertex w = canonicalize(g * m, p);
        if (!keep(w)) {
          on_reject(w);
          continue;
        }
        if (orbit.insert(w).second) {
          if (orbit.size() > kMaxOrbitSize) throw GuardExceeded("orbit exceeds vertex guard");
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  return rounds;
}

}  // namespace

OrbitReport orbit_closure(const std::vector<ProjMat>& gens, const TreeVertex& start, int ball_radius,
                          const Prime& p) {
  OrbitReport report{start, {}, static_cast<int>(gens.size()), 0};
  if (distance(start, TreeVertex::base(), p) > ball_radius) return report;
  report.orbit.insert(start);
  report.closure_rounds = close(
      with_inverses(gens), report.orbit, p,
      [&](const TreeVertex& w) { return w.d <= ball_radius; }, [](const TreeVertex&) {});
  return report;
}

long stabilizer_index(const std::vector<ProjMat>& gens, const TreeVertex& target, const Prime& p,
                      int radius_guard) {
  std::set<TreeVertex> orbit{target};
  close(
      with_inverses(gens), orbit, p, [&](const TreeVertex& w) { return w.d <= radius_guard; },
      [&](const TreeVertex& w) {
        throw GuardExceeded("orbit of " + target.label() + " reaches " + w.label() +
                            " beyond the radius guard");
      });
  return static_cast<long>(orbit.size());
}

}  // namespace theta::oracle
