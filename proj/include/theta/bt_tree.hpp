#pragma once

// The Bruhat-Tits tree of PGL_2(Q_p): vertices are the cosets hK,
// K = PGL_2(Z_p), each stored by its unique representative
//
//   Upper(d, u) = [[p^d, u], [0, 1]] K,  d >= 0, 0 <= u < p^d
//   Lower(d, u) = [[1, 0], [u, p^d]] K,  d >= 1, 0 <= u < p^d, p | u
//
// Upper(0, 0) is the base vertex K; d is always the distance to K.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "theta/padic.hpp"
#include "theta/quadspace.hpp"

namespace theta {

struct TreeVertex {
  enum class Form : std::uint8_t { Upper, Lower };

  int d = 0;
  Form form = Form::Upper;
  std::int64_t u = 0;

  static TreeVertex base() { return {}; }
  static TreeVertex upper(int d, std::int64_t u) { return {d, Form::Upper, u}; }
  static TreeVertex lower(int d, std::int64_t u) { return {d, Form::Lower, u}; }

  ProjMat matrix(const Prime& p) const;
  /// "U(d,u)" or "L(d,u)".
  std::string label() const;

  friend auto operator<=>(const TreeVertex&, const TreeVertex&) = default;
};

struct TreeVertexHash {
  std::size_t operator()(const TreeVertex& v) const noexcept {
    return std::hash<std::int64_t>()(v.u * 131 + v.d * 2 + static_cast<int>(v.form));
  }
};

/// An edge of the tree; the constructor checks the endpoints are adjacent.
class EdgeRef {
 public:
  EdgeRef(const TreeVertex& a, const TreeVertex& b, const Prime& p);
  const TreeVertex& first() const { return a_; }
  const TreeVertex& second() const { return b_; }

 private:
  TreeVertex a_, b_;
};

/// diag(p^k, 1) K; k may be negative.
TreeVertex apartment_vertex(int k, const Prime& p);

/// Canonical representative of gK. Throws Singular.
TreeVertex canonicalize(const ProjMat& g, const Prime& p);

/// Canonical representative of g * v.
TreeVertex translate(const ProjMat& g, const TreeVertex& v, const Prime& p);

/// v_p(det) - 2 * (min entry valuation) of g1^{-1} g2.
int distance(const TreeVertex& v1, const TreeVertex& v2, const Prime& p);

/// The p + 1 vertices adjacent to v.
std::vector<TreeVertex> neighbors(const TreeVertex& v, const Prime& p);

int dist_to_edge(const TreeVertex& v, const EdgeRef& e, const Prime& p);

/// Distance to the standard apartment {diag(p^k, 1) K : k in Z}.
int dist_to_apartment(const TreeVertex& v, const Prime& p);

/// The closed-form representative list restricted to distance <= max_d,
/// in increasing order.
std::vector<TreeVertex> representatives_within(const Prime& p, int max_d);

}  // namespace theta
