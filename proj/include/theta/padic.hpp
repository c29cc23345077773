#pragma once

// Exact p-adic arithmetic on rationals: valuations, unit parts, residues,
// square classes, Legendre and Hilbert symbols at an odd prime.
//
// Scalars are GMP rationals (mpq_class), always kept in canonical form
// (gcd(num, den) = 1, den > 0). No floating point is used anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>

namespace theta {

using Rational = mpq_class;
using Integer = mpz_class;

/// Valuation returned for zero.
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

class Prime {
 public:
  /// Odd prime; rejects 2 and composites with InvalidPrime.
  explicit Prime(long p);

  /// Any prime including 2. Only the tree combinatorics accept p = 2;
  /// symbol computations reject it.
  static Prime including_two(long p);

  long value() const { return p_; }
  bool is_odd() const { return p_ != 2; }

  /// p^k for k >= 0.
  Integer pow(int k) const;
  /// p^k as a rational, any sign of k.
  Rational rpow(int k) const;

  /// Smallest positive integer that is a quadratic nonresidue mod p.
  long nonresidue() const { return nonresidue_; }

  friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }

 private:
  Prime(long p, bool allow_two);
  long p_;
  long nonresidue_ = 0;
};

enum class SquareClass { UnitSquare, UnitNonsquare, PTimesSquare, PTimesNonsquare };

std::string to_string(SquareClass c);

/// Parses "a/b" or "a" into a canonical rational. Throws ParseError.
Rational parse_rational(const std::string& s);
/// Always "num/den" with den >= 1.
std::string format_rational(const Rational& r);

/// v_p(r), or kInfiniteValuation for r = 0.
int valuation(const Integer& n, const Prime& p);
int valuation(const Rational& r, const Prime& p);

/// r / p^{v_p(r)}. Throws ZeroInput for r = 0.
Rational unit_part(const Rational& r, const Prime& p);

bool is_p_integral(const Rational& r, const Prime& p);

/// Residue of a p-integral rational in [0, p^k). Throws NotAUnit if r is not
/// p-integral (the denominator must be invertible mod p).
Integer residue_mod(const Rational& r, const Prime& p, int k);

/// Canonical representative of r + p^k Z_p for any integer k: the unique
/// value t * p^e, e = min(v_p(r), k), with 0 <= t < p^{k-e}; 0 if v_p(r) >= k.
Rational reduce_mod(const Rational& r, const Prime& p, int k);

/// p-adic fractional part {r}_p in [0, 1): the element of Z[1/p] with
/// r - {r}_p in Z_p.
Rational fractional_part(const Rational& r, const Prime& p);

/// Legendre symbol of a p-adic unit. Throws NotAUnit if v_p(u) != 0.
int legendre(const Rational& u, const Prime& p);

/// Class of r in Q_p^x / (Q_p^x)^2. Throws ZeroInput for r = 0.
SquareClass square_class(const Rational& r, const Prime& p);

/// Representative in {1, eps, p, p*eps} with eps = p.nonresidue().
Rational square_class_representative(SquareClass c, const Prime& p);

/// Local Hilbert symbol (a, b)_p at odd p:
///   (-1)^{ab(p-1)/2} (u/p)^b (w/p)^a  for a = p^a u, b = p^b w.
int hilbert(const Rational& a, const Rational& b, const Prime& p);

}  // namespace theta
