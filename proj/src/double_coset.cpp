#include "theta/double_coset.hpp"

#include <algorithm>

#include "theta/errors.hpp"

namespace theta {

CosetRep standard_coset_rep(CaseKind kind, int d, const Prime& p) {
  if (d < 0 || (kind == CaseKind::Ramified && d < 1)) {
    throw InconsistentCase("no " + to_string(kind) + " representative with d = " + std::to_string(d));
  }
  Rational pd(p.pow(d));
  if (kind == CaseKind::Split) return {kind, d, ProjMat(Mat2{pd, 1, 0, 1})};
  return {kind, d, ProjMat(Mat2::diag(pd, 1))};
}

std::vector<CosetRep> support_set(const CaseClass& c, const Prime& p) {
  validate(c, p);
  int lo = c.kind == CaseKind::Ramified ? 1 : 0;
  int hi = c.kind == CaseKind::Ramified ? (c.alpha + 1) / 2 : c.alpha / 2;
  std::vector<CosetRep> out;
  for (int d = lo; d <= hi; ++d) out.push_back(standard_coset_rep(c.kind, d, p));
  return out;
}

Rational stabilizer_volume(const CaseClass& c, const CosetRep& rep, const Prime& p,
                           const MeasureSpec& measure) {
  if (rep.kind != c.kind) throw InconsistentCase("representative belongs to another case");
  if (rep.d < 0 || (c.kind == CaseKind::Ramified && rep.d < 1)) {
    throw InconsistentCase("representative index out of range");
  }
  const int d = rep.d;
  Rational index;
  switch (c.kind) {
    case CaseKind::Inert:
      // H_x fixes K and is transitive on the p^d + p^{d-1} vertices at distance d.
      index = d == 0 ? Integer(1) : Integer(p.pow(d) + p.pow(d - 1));
      break;
    case CaseKind::Ramified:
      // H_x swaps the ends of {K, diag(p,1)K}; 2 p^{d-1} vertices at distance d-1 from it.
      index = 2 * p.pow(d - 1);
      break;
    case CaseKind::Split:
      // H_x cap K = diag(Z_p^x, 1); the stabilizer of delta_d K is diag(1 + p^d Z_p, 1).
      index = d == 0 ? Integer(1) : Integer((p.value() - 1) * p.pow(d - 1));
      break;
  }
  return measure.vol_Hx / index;
}

DoubleCosetIndex classify_double_coset(const TreeVertex& v, const CaseClass& c, const Prime& p) {
  switch (c.kind) {
    case CaseKind::Inert:
      return {c.kind, distance(v, TreeVertex::base(), p)};
    case CaseKind::Ramified: {
      EdgeRef edge(TreeVertex::base(), TreeVertex::upper(1, 0), p);
      return {c.kind, 1 + dist_to_edge(v, edge, p)};
    }
    case CaseKind::Split:
      return {c.kind, dist_to_apartment(v, p)};
  }
  return {c.kind, 0};
}

DoubleCosetIndex classify_double_coset(const ProjMat& h, const CaseClass& c, const Prime& p) {
  return classify_double_coset(canonicalize(h, p), c, p);
}

namespace {

// At most 2^20 candidate pairs (a, b).
constexpr long kMaxTorusSide = 1L << 10;

std::vector<ProjMat> torus_family(const CaseClass& c, const Prime& p, int N, bool only_in_k) {
  validate(c, p);
  if (N < 1) throw InconsistentCase("level N must be >= 1");
  Integer bound_z = p.pow(N);
  if (!bound_z.fits_slong_p()) throw GuardExceeded("level too large");
  const long bound = bound_z.get_si();
  if (bound >= kMaxTorusSide) throw GuardExceeded("torus family too large at this level");
  Rational off;  // upper-right entry of x0
  if (c.kind == CaseKind::Inert) off = c.unit;
  if (c.kind == CaseKind::Ramified) off = Rational(p.value()) * c.unit;

  std::vector<ProjMat> out;
  for (long a = 0; a <= bound; ++a) {
    for (long b = 0; b <= bound; ++b) {
      Mat2 m = c.kind == CaseKind::Split ? Mat2::diag(a, b) : Mat2{a, b * off, b, a};
      if (m.det() == 0) continue;
      if (only_in_k) {
        int minval = std::min({valuation(m.a, p), valuation(m.b, p), valuation(m.c, p), valuation(m.d, p)});
        if (valuation(m.det(), p) != 2 * minval) continue;
      }
      out.emplace_back(m);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<ProjMat> hx_generators_mod(const CaseClass& c, const Prime& p, int N) {
  return torus_family(c, p, N, false);
}

std::vector<ProjMat> hx_cap_k_generators_mod(const CaseClass& c, const Prime& p, int N) {
  return torus_family(c, p, N, true);
}

}  // namespace theta
