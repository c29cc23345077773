#pragma once

// Independent ground truth used by the unit and acceptance tests.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "theta/bt_tree.hpp"
#include "theta/double_coset.hpp"
#include "theta/matching.hpp"
#include "theta/oracle.hpp"
#include "theta/padic.hpp"
#include "theta/quadspace.hpp"

namespace theta::testing {

inline long ipow(long p, int k) {
  long r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

inline long mod(long a, long m) { return ((a % m) + m) % m; }

/// +1 iff a x^2 + b y^2 = z^2 has a primitive solution mod p^k. For odd p
/// and 0 <= v_p(a), v_p(b) <= 1, k = 3 already decides local solvability.
/// A primitive solution has x or y a unit: if p divides both then p^2
/// divides z^2, so z is not a unit either.
inline int hilbert_by_search(long a, long b, long p, int k) {
  const long m = ipow(p, k);
  std::vector<char> square(static_cast<std::size_t>(m), 0);
  for (long z = 0; z < m; ++z) square[static_cast<std::size_t>(z * z % m)] = 1;
  for (long x = 0; x < m; ++x) {
    const long ax = mod(a % m * (x * x % m), m);
    for (long y = 0; y < m; ++y) {
      if (x % p == 0 && y % p == 0) continue;
      if (square[static_cast<std::size_t>(mod(ax + b % m * (y * y % m), m))]) return 1;
    }
  }
  return -1;
}

inline Rational random_unit(std::mt19937_64& rng, const Prime& p, long bound = 40) {
  std::uniform_int_distribution<long> dist(1, bound);
  for (;;) {
    Rational r(dist(rng), dist(rng));
    r.canonicalize();
    if (valuation(r, p) == 0) return std::uniform_int_distribution<int>(0, 1)(rng) ? r : Rational(-r);
  }
}

/// Nonzero rational p^v * unit with v uniform in [vmin, vmax].
inline Rational random_nonzero(std::mt19937_64& rng, const Prime& p, int vmin, int vmax) {
  int v = std::uniform_int_distribution<int>(vmin, vmax)(rng);
  return p.rpow(v) * random_unit(rng, p);
}

/// Integral entries with unit determinant: an element of GL_2(Z_p).
inline Mat2 random_unimodular(std::mt19937_64& rng, const Prime& p) {
  std::uniform_int_distribution<long> dist(-30, 30);
  for (;;) {
    Mat2 m{dist(rng), dist(rng), dist(rng), dist(rng)};
    Rational det = m.det();
    if (det != 0 && valuation(det, p) == 0) return m;
  }
}

inline ProjMat random_group_element(std::mt19937_64& rng, const Prime& p) {
  std::uniform_int_distribution<int> v(-2, 2);
  for (;;) {
    Mat2 m{random_unit(rng, p) * p.rpow(v(rng)), random_unit(rng, p) * p.rpow(v(rng)),
           random_unit(rng, p) * p.rpow(v(rng)), random_unit(rng, p) * p.rpow(v(rng))};
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) m.b = 0;
    if (m.det() != 0) return ProjMat(m);
  }
}

/// Right side of the matching identity computed from orbits alone:
///
///   integral_{H_x} 1_{rep K}(h0 h) dh0 = sum over translates w of rep K by
///   H_x / C (C the compact part) of [w in C hK] / |C hK|,
///
/// with vol(C) = vol_Hx. C is H_x for the compact tori and H_x cap K for the
/// split torus, whose translates diag(p^k, 1) are enumerated explicitly.
inline Rational matching_rhs_by_orbits(const MatchingDatum& md, const ProjMat& h, const Prime& p, int level) {
  const CaseClass& c = md.case_class;
  const TreeVertex v = canonicalize(h, p);
  const bool split = c.kind == CaseKind::Split;
  const auto gens = split ? hx_cap_k_generators_mod(c, p, level) : hx_generators_mod(c, p, level);
  const int radius = v.d + (c.kind == CaseKind::Ramified ? 1 : 0);
  const auto orbit = oracle::orbit_closure(gens, v, radius, p).orbit;
  const Rational size(static_cast<long>(orbit.size()));
  Rational total = 0;
  for (const CosetTerm& t : md.xi.terms) {
    const TreeVertex w = canonicalize(t.rep.matrix, p);
    if (!split) {
      if (orbit.count(w)) total += t.coeff * md.xi.measure.vol_Hx / size;
      continue;
    }
    // h0 = diag(p^k, 1) u, u in H_x cap K: need u hK = diag(p^-k, 1) rep K.
    for (int k = -(v.d + w.d + 2); k <= v.d + w.d + 2; ++k) {
      TreeVertex shifted = translate(ProjMat(Mat2::diag(p.rpow(-k), 1)), w, p);
      if (orbit.count(shifted)) total += t.coeff * md.xi.measure.vol_Hx / size;
    }
  }
  return total;
}

}  // namespace theta::testing
