#include "theta/bt_tree.hpp"

#include <algorithm>

#include "theta/errors.hpp"

namespace theta {

namespace {

int min_entry_valuation(const Mat2& m, const Prime& p) {
  return std::min({valuation(m.a, p), valuation(m.b, p), valuation(m.c, p), valuation(m.d, p)});
}

std::int64_t to_int64(const Integer& n) {
  if (!n.fits_slong_p()) throw GuardExceeded("vertex label does not fit in 64 bits");
  return n.get_si();
}

}  // namespace

ProjMat TreeVertex::matrix(const Prime& p) const {
  Rational pd(p.pow(d));
  Rational uu(static_cast<long>(u));
  if (form == Form::Upper) return ProjMat(Mat2{pd, uu, 0, 1});
  return ProjMat(Mat2{1, 0, uu, pd});
}

std::string TreeVertex::label() const {
  return std::string(form == Form::Upper ? "U(" : "L(") + std::to_string(d) + "," +
         std::to_string(u) + ")";
}

EdgeRef::EdgeRef(const TreeVertex& a, const TreeVertex& b, const Prime& p) : a_(a), b_(b) {
  if (distance(a, b, p) != 1) throw InconsistentCase("edge endpoints are not adjacent");
}

TreeVertex apartment_vertex(int k, const Prime& p) {
  return canonicalize(ProjMat(Mat2::diag(p.rpow(k), 1)), p);
}

TreeVertex canonicalize(const ProjMat& g, const Prime& p) {
  Mat2 m = g.mat();
  m = p.rpow(-min_entry_valuation(m, p)) * m;
  int d = valuation(m.det(), p);
  if (d == 0) return TreeVertex::base();
  // The column lattice has cyclic quotient Z/p^d in Z_p^2, generated by any
  // primitive column.
  bool first_primitive = std::min(valuation(m.a, p), valuation(m.c, p)) == 0;
  const Rational& x = first_primitive ? m.a : m.b;
  const Rational& y = first_primitive ? m.c : m.d;
  if (y != 0 && valuation(y, p) == 0) {
    return TreeVertex::upper(d, to_int64(residue_mod(Rational(x / y), p, d)));
  }
  return TreeVertex::lower(d, to_int64(residue_mod(Rational(y / x), p, d)));
}

TreeVertex translate(const ProjMat& g, const TreeVertex& v, const Prime& p) {
  return canonicalize(g * v.matrix(p), p);
}

int distance(const TreeVertex& v1, const TreeVertex& v2, const Prime& p) {
  if (v1 == v2) return 0;
  Mat2 m = v1.matrix(p).mat().inverse() * v2.matrix(p).mat();
  return valuation(m.det(), p) - 2 * min_entry_valuation(m, p);
}

std::vector<TreeVertex> neighbors(const TreeVertex& v, const Prime& p) {
  ProjMat g = v.matrix(p);
  std::vector<TreeVertex> out;
  out.reserve(static_cast<std::size_t>(p.value()) + 1);
  Rational pp(p.value());
  for (long t = 0; t < p.value(); ++t) {
    out.push_back(canonicalize(g * ProjMat(Mat2{pp, t, 0, 1}), p));
  }
  out.push_back(canonicalize(g * ProjMat(Mat2{1, 0, 0, pp}), p));
  return out;
}

int dist_to_edge(const TreeVertex& v, const EdgeRef& e, const Prime& p) {
  return std::min(distance(v, e.first(), p), distance(v, e.second(), p));
}

int dist_to_apartment(const TreeVertex& v, const Prime& p) {
  // k -> distance(v, diag(p^k,1)K) is |k - k0| + dist(v, apartment); walk
  // downhill from k = 0.
  auto f = [&](int k) { return distance(v, apartment_vertex(k, p), p); };
  int best = f(0);
  for (int step : {1, -1}) {
    int k = step;
    int val = f(k);
    if (val >= best) continue;
    while (val < best) {
      best = val;
      k += step;
      val = f(k);
    }
    break;
  }
  return best;
}

std::vector<TreeVertex> representatives_within(const Prime& p, int max_d) {
  std::vector<TreeVertex> out;
  for (int d = 0; d <= max_d; ++d) {
    std::int64_t pd = to_int64(p.pow(d));
    for (std::int64_t u = 0; u < pd; ++u) out.push_back(TreeVertex::upper(d, u));
    if (d == 0) continue;
    for (std::int64_t u = 0; u < pd; u += p.value()) out.push_back(TreeVertex::lower(d, u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace theta
