#include "theta/quadspace.hpp"

#include <tuple>

#include "theta/errors.hpp"

namespace theta {

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 operator*(const Rational& s, const Mat2& x) {
  return {s * x.a, s * x.b, s * x.c, s * x.d};
}

Mat2 Mat2::inverse() const {
  Rational dt = det();
  if (dt == 0) throw Singular("inverse of a singular matrix");
  return {d / dt, -b / dt, -c / dt, a / dt};
}

std::string to_string(const Mat2& m) {
  return "[[" + m.a.get_str() + "," + m.b.get_str() + "],[" + m.c.get_str() + "," +
         m.d.get_str() + "]]";
}

ProjMat::ProjMat(const Mat2& m) : m_(m) {
  if (m.det() == 0) throw Singular("projective matrix with zero determinant");
  Rational lead = m.a != 0 ? m.a : m.c != 0 ? m.c : m.b;
  if (lead != 1) {
    m_.a /= lead;
    m_.b /= lead;
    m_.c /= lead;
    m_.d /= lead;
  }
}

ProjMat ProjMat::inverse() const { return ProjMat(m_.inverse()); }

Mat2 ProjMat::primitive() const {
  Integer l = 1;
  for (const Rational* r : {&m_.a, &m_.b, &m_.c, &m_.d}) l = lcm(l, r->get_den());
  Mat2 m = Rational(l) * m_;
  Integer g = 0;
  for (const Rational* r : {&m.a, &m.b, &m.c, &m.d}) g = gcd(g, r->get_num());
  return Rational(1, g) * m;
}

bool operator<(const ProjMat& x, const ProjMat& y) {
  const Mat2& a = x.mat();
  const Mat2& b = y.mat();
  return std::tie(a.a, a.c, a.b, a.d) < std::tie(b.a, b.c, b.b, b.d);
}

TracelessMat TracelessMat::from_matrix(const Mat2& m) {
  if (m.trace() != 0) throw InconsistentCase("matrix is not traceless");
  return {m.a, m.b, m.c};
}

std::string to_string(const TracelessMat& x) { return to_string(x.matrix()); }

Rational q_value(const TracelessMat& x) { return x.a * x.a + x.b * x.c; }

Rational inner(const TracelessMat& x, const TracelessMat& y) {
  // tr([[a,b],[c,-a]] [[a',b'],[c',-a']]) = 2aa' + bc' + cb'
  return 2 * x.a * y.a + x.b * y.c + x.c * y.b;
}

bool in_lattice(const TracelessMat& x, const Prime& p) {
  return is_p_integral(x.a, p) && is_p_integral(x.b, p) && is_p_integral(x.c, p);
}

TracelessMat act(const ProjMat& h, const TracelessMat& x) {
  const Mat2& m = h.mat();
  return TracelessMat::from_matrix(m * x.matrix() * m.inverse());
}

std::string to_string(CaseKind k) {
  switch (k) {
    case CaseKind::Inert: return "inert";
    case CaseKind::Ramified: return "ramified";
    case CaseKind::Split: return "split";
  }
  return "?";
}

CaseKind parse_case_kind(const std::string& s) {
  if (s == "inert") return CaseKind::Inert;
  if (s == "ramified") return CaseKind::Ramified;
  if (s == "split") return CaseKind::Split;
  throw ParseError("unknown case '" + s + "'");
}

void validate(const CaseClass& c, const Prime& p) {
  if (c.alpha < 0) throw InconsistentCase("alpha must be >= 0");
  if (c.unit == 0 || valuation(c.unit, p) != 0) throw InconsistentCase("unit must be a p-adic unit");
  bool square = legendre(c.unit, p) == 1;
  switch (c.kind) {
    case CaseKind::Inert:
      if (c.alpha % 2 != 0 || square) throw InconsistentCase("inert needs even alpha and a nonsquare unit");
      break;
    case CaseKind::Ramified:
      if (c.alpha % 2 != 1) throw InconsistentCase("ramified needs odd alpha");
      break;
    case CaseKind::Split:
      if (c.alpha % 2 != 0 || !square) throw InconsistentCase("split needs even alpha and a square unit");
      break;
  }
}

std::optional<CaseClass> classify(const TracelessMat& x, const Prime& p) {
  Rational q = q_value(x);
  if (q == 0) return std::nullopt;
  int alpha = valuation(q, p);
  if (alpha < 0) return std::nullopt;
  Rational unit = unit_part(q, p);
  if (alpha % 2 == 1) return CaseClass{CaseKind::Ramified, alpha, unit};
  if (legendre(unit, p) == 1) return CaseClass{CaseKind::Split, alpha, unit};
  return CaseClass{CaseKind::Inert, alpha, unit};
}

TracelessMat standard_rep(const CaseClass& c, const Prime& p) {
  validate(c, p);
  switch (c.kind) {
    case CaseKind::Inert:
      return p.rpow(c.alpha / 2) * TracelessMat{0, c.unit, 1};
    case CaseKind::Ramified:
      return p.rpow((c.alpha - 1) / 2) * TracelessMat{0, Rational(p.value()) * c.unit, 1};
    case CaseKind::Split:
      return p.rpow(c.alpha / 2) * TracelessMat{1, 0, 0};
  }
  return {};
}

QuadSpaceDescriptor traceless_space() { return {3, -2}; }

int chi_V(const Rational& t, const QuadSpaceDescriptor& d, const Prime& p) {
  if (t == 0) throw ZeroInput("chi_V(0)");
  int m = d.dim;
  Rational disc = ((m * (m - 1) / 2) % 2 == 0) ? d.det : Rational(-d.det);
  return hilbert(t, disc, p);
}

}  // namespace theta
