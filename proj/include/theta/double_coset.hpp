#pragma once

// Double cosets H_x \ H / K for the three tori H_x, their representatives,
// the support set {gamma : x in gamma L}, and stabilizer volumes.
//
// Representatives:
//   inert     gamma_d = diag(p^d, 1),      d >= 0
//   ramified  gamma_d = diag(p^d, 1),      d >= 1
//   split     delta_d = [[p^d, 1], [0, 1]], d >= 0
//
// The double coset of h is read off the tree: distance from hK to K
// (inert), one plus the distance to the edge {K, diag(p,1)K} (ramified),
// distance to the standard apartment (split).

#include <vector>

#include "theta/bt_tree.hpp"
#include "theta/padic.hpp"
#include "theta/quadspace.hpp"

namespace theta {

struct CosetRep {
  CaseKind kind;
  int d;
  /// Usually the standard representative; left H_x-translates are allowed.
  ProjMat matrix;

  friend bool operator==(const CosetRep&, const CosetRep&) = default;
};

/// Throws InconsistentCase for d out of range (ramified d = 0, negative d).
CosetRep standard_coset_rep(CaseKind kind, int d, const Prime& p);

/// Haar measure normalization on H and H_x. vol_Hx is vol(H_x) for the
/// compact tori and vol(H_x cap K) for the split torus.
struct MeasureSpec {
  Rational vol_K = 1;
  Rational vol_Hx = 1;

  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

std::vector<CosetRep> support_set(const CaseClass& c, const Prime& p);

/// vol(H_x cap gamma K gamma^{-1}) under `measure`:
///   inert     vol_Hx                        (d = 0)
///             vol_Hx / (p^d + p^{d-1})      (d >= 1)
///   ramified  vol_Hx / (2 p^{d-1})          (d >= 1)
///   split     vol_Hx                        (d = 0)
///             vol_Hx / ((p-1) p^{d-1})      (d >= 1)
/// Throws InconsistentCase if rep does not belong to c's case.
Rational stabilizer_volume(const CaseClass& c, const CosetRep& rep, const Prime& p,
                           const MeasureSpec& measure = {});

struct DoubleCosetIndex {
  CaseKind kind;
  int d;

  friend bool operator==(const DoubleCosetIndex&, const DoubleCosetIndex&) = default;
};

/// The unique d with h in H_x gamma_d K. Throws Singular.
DoubleCosetIndex classify_double_coset(const ProjMat& h, const CaseClass& c, const Prime& p);
DoubleCosetIndex classify_double_coset(const TreeVertex& v, const CaseClass& c, const Prime& p);

/// Torus elements a + b x0 (x0 the unit-scale normal form; diag(a, b) for
/// split) with 0 <= a, b <= p^N, nondegenerate, deduplicated modulo scalars
/// and sorted. Throws GuardExceeded when p^N >= 1024.
std::vector<ProjMat> hx_generators_mod(const CaseClass& c, const Prime& p, int N);

/// Same family restricted to H_x cap K (entries with unit determinant).
/// Coincides with hx_generators_mod for the inert torus, which lies in K.
std::vector<ProjMat> hx_cap_k_generators_mod(const CaseClass& c, const Prime& p, int N);

}  // namespace theta
