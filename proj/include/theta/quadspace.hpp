#pragma once

// The ternary quadratic space V of traceless 2x2 matrices over Q_p with
// Q(x) = -det(x) and (x, y) = tr(xy), the conjugation action of PGL_2, and
// the inert / ramified / split classification of anisotropic-vector orbits.

#include <array>
#include <optional>
#include <string>

#include "theta/padic.hpp"

namespace theta {

/// Plain 2x2 rational matrix [[a, b], [c, d]].
struct Mat2 {
  Rational a, b, c, d;

  static Mat2 identity() { return {1, 0, 0, 1}; }
  static Mat2 diag(const Rational& x, const Rational& y) { return {x, 0, 0, y}; }

  Rational det() const { return a * d - b * c; }
  Rational trace() const { return a + d; }
  /// Throws Singular if det = 0.
  Mat2 inverse() const;

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend Mat2 operator*(const Rational& s, const Mat2& x);
  friend bool operator==(const Mat2& x, const Mat2& y) = default;
};

std::string to_string(const Mat2& m);

/// Element of PGL_2(Q_p) with rational entries. Stored in canonical form:
/// the first nonzero entry in column-major order (a, c, b, d) is 1.
class ProjMat {
 public:
  ProjMat() : m_(Mat2::identity()) {}
  /// Throws Singular if det m = 0.
  explicit ProjMat(const Mat2& m);

  static ProjMat identity() { return ProjMat(); }

  const Mat2& mat() const { return m_; }
  ProjMat inverse() const;
  /// The integral representative with coprime entries and the same sign
  /// pattern as the canonical form.
  Mat2 primitive() const;

  friend ProjMat operator*(const ProjMat& x, const ProjMat& y) { return ProjMat(x.m_ * y.m_); }
  friend bool operator==(const ProjMat& x, const ProjMat& y) = default;
  friend bool operator<(const ProjMat& x, const ProjMat& y);

 private:
  Mat2 m_;
};

/// [[a, b], [c, -a]].
struct TracelessMat {
  Rational a, b, c;

  Mat2 matrix() const { return {a, b, c, -a}; }
  /// Throws InconsistentCase if m has nonzero trace.
  static TracelessMat from_matrix(const Mat2& m);

  friend TracelessMat operator*(const Rational& s, const TracelessMat& x) {
    return {s * x.a, s * x.b, s * x.c};
  }
  friend bool operator==(const TracelessMat&, const TracelessMat&) = default;
};

std::string to_string(const TracelessMat& x);

/// Q(x) = a^2 + bc = -det(x).
Rational q_value(const TracelessMat& x);
/// (x, y) = tr(xy).
Rational inner(const TracelessMat& x, const TracelessMat& y);
/// True iff all three entries are p-integral (x lies in the lattice L).
bool in_lattice(const TracelessMat& x, const Prime& p);
/// h x h^{-1}.
TracelessMat act(const ProjMat& h, const TracelessMat& x);

enum class CaseKind { Inert, Ramified, Split };

std::string to_string(CaseKind k);
/// Accepts "inert", "ramified", "split". Throws ParseError.
CaseKind parse_case_kind(const std::string& s);

/// Orbit type of x with Q(x) = p^alpha * unit, unit a p-adic unit.
struct CaseClass {
  CaseKind kind;
  int alpha;
  Rational unit;

  friend bool operator==(const CaseClass&, const CaseClass&) = default;
};

/// Checks the parity / square-class invariants. Throws InconsistentCase.
void validate(const CaseClass& c, const Prime& p);

/// Returns nullopt when Q(x) = 0 or Q(x) is not p-integral; in that case the
/// function h -> 1_L(h^{-1} x) vanishes identically.
std::optional<CaseClass> classify(const TracelessMat& x, const Prime& p);

/// Normal forms:
///   inert     p^{alpha/2}     [[0, eps], [1, 0]]
///   ramified  p^{(alpha-1)/2} [[0, p eps], [1, 0]]
///   split     p^{alpha/2}     [[1, 0], [0, -1]]   (unit representative 1)
TracelessMat standard_rep(const CaseClass& c, const Prime& p);

/// Dimension and Gram determinant of a quadratic space; enough to evaluate
/// the quadratic character.
struct QuadSpaceDescriptor {
  int dim;
  Rational det;
};

/// V with the basis {diag(1,-1), E12, E21}: Gram matrix [[2,0,0],[0,0,1],[0,1,0]],
/// determinant -2.
QuadSpaceDescriptor traceless_space();

/// chi_V(t) = (t, (-1)^{m(m-1)/2} det V)_p. Throws ZeroInput for t = 0.
int chi_V(const Rational& t, const QuadSpaceDescriptor& d, const Prime& p);

}  // namespace theta
