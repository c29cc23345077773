#pragma once

// Local matching functions xi for phi = 1_L on the traceless-matrix space:
//
//   1_L(h^{-1} x) = integral over H_x of xi(h0 h) dh0.
//
// xi is a finite sum of characteristic functions of cosets gamma K. The
// general recipe puts coefficient 1 / vol(H_x cap gamma K gamma^{-1}) on each
// gamma in the support set; the closed forms are the explicit per-case sums.

#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "theta/double_coset.hpp"
#include "theta/padic.hpp"
#include "theta/quadspace.hpp"

namespace theta {

struct CosetTerm {
  Rational coeff;
  CosetRep rep;

  friend bool operator==(const CosetTerm&, const CosetTerm&) = default;
};

/// xi = sum of coeff * 1_{rep K}; terms have distinct d, nonzero
/// coefficients, and are sorted by d.
struct FormalCosetSum {
  CaseClass case_class;
  Prime p;
  MeasureSpec measure;
  std::vector<CosetTerm> terms;

  friend bool operator==(const FormalCosetSum&, const FormalCosetSum&) = default;
};

/// (phi = 1_L, xi; x).
struct MatchingDatum {
  TracelessMat x;
  CaseClass case_class;
  FormalCosetSum xi;
};

/// True if x = u * standard_rep(c) for a p-adic unit u and some c in the
/// square class of classify(x).
bool in_standard_position(const TracelessMat& x, const Prime& p);

/// Throws NotApplicable if Q(x) = 0 or Q(x) is not p-integral, and
/// NotStandardPosition if x is not a unit multiple of its normal form (the
/// representatives are those of the standard torus).
MatchingDatum build_xi_general(const TracelessMat& x, const Prime& p, const MeasureSpec& measure = {});

/// Datum for standard_rep(c).
MatchingDatum build_datum(const CaseClass& c, const Prime& p, const MeasureSpec& measure = {});

/// The explicit sums, prefactor 1/vol_Hx applied:
///   inert     1_K + sum_{d=1}^{alpha/2} (p^d + p^{d-1}) 1_{gamma_d K}
///   ramified  sum_{d=1}^{(alpha+1)/2} 2 p^{d-1} 1_{gamma_d K}
///   split     1_K + sum_{d=1}^{alpha/2} 1_{delta_d K}
FormalCosetSum build_xi_closed_form(const CaseClass& c, const Prime& p, const MeasureSpec& measure = {});

/// xi(h). Throws Singular.
Rational evaluate_xi(const FormalCosetSum& xi, const ProjMat& h, const Prime& p);

struct MatchingCheck {
  Rational lhs;
  Rational rhs;
  bool holds() const { return lhs == rhs; }
};

/// Both sides of the matching identity at h. The right side is
/// sum over terms with rep in H_x h K of coeff * vol(H_x cap rep K rep^{-1}).
MatchingCheck matching_sides(const MatchingDatum& md, const ProjMat& h, const Prime& p);
bool verify_matching_at(const MatchingDatum& md, const ProjMat& h, const Prime& p);

/// Replaces every representative by delta * rep with delta drawn from
/// `torus`; xi changes but still matches.
FormalCosetSum translate_representatives(const FormalCosetSum& xi, const std::vector<ProjMat>& torus,
                                         std::mt19937_64& rng);

/// Fixed-order JSON:
/// {"p", "case", "alpha", "epsilon", "normalization": {"vol_K", "vol_Hx"},
///  "terms": [{"d", "rep", "coeff"}]}.
nlohmann::ordered_json to_json(const MatchingDatum& md);
/// Inverse of to_json; x is reconstructed as standard_rep(case). Throws ParseError.
MatchingDatum matching_datum_from_json(const nlohmann::json& j);

}  // namespace theta
