#include "theta/padic.hpp"

#include "theta/errors.hpp"

namespace theta {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

void require_odd(const Prime& p) {
  if (!p.is_odd()) throw InvalidPrime("symbol computations need an odd prime");
}

}  // namespace

Prime::Prime(long p) : Prime(p, false) {}

Prime::Prime(long p, bool allow_two) : p_(p) {
  if (!is_prime(p)) throw InvalidPrime(std::to_string(p) + " is not prime");
  if (p == 2 && !allow_two) throw InvalidPrime("p = 2 is not supported");
  if (p == 2) return;
  for (long n = 2; n < p; ++n) {
    Integer a(n), m(p);
    if (mpz_legendre(a.get_mpz_t(), m.get_mpz_t()) == -1) {
      nonresidue_ = n;
      break;
    }
  }
}

Prime Prime::including_two(long p) { return Prime(p, true); }

Integer Prime::pow(int k) const {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(k));
  return r;
}

Rational Prime::rpow(int k) const {
  if (k >= 0) return Rational(pow(k));
  Rational r(Integer(1), pow(-k));
  r.canonicalize();
  return r;
}

std::string to_string(SquareClass c) {
  switch (c) {
    case SquareClass::UnitSquare: return "UnitSquare";
    case SquareClass::UnitNonsquare: return "UnitNonsquare";
    case SquareClass::PTimesSquare: return "PTimesSquare";
    case SquareClass::PTimesNonsquare: return "PTimesNonsquare";
  }
  return "?";
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

int valuation(const Integer& n, const Prime& p) {
  if (n == 0) return kInfiniteValuation;
  Integer m = abs(n);
  Integer prime(p.value());
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), prime.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), prime.get_mpz_t());
    ++v;
  }
  return v;
}

int valuation(const Rational& r, const Prime& p) {
  if (r == 0) return kInfiniteValuation;
  return valuation(r.get_num(), p) - valuation(r.get_den(), p);
}

Rational unit_part(const Rational& r, const Prime& p) {
  if (r == 0) throw ZeroInput("unit part of 0");
  Rational u = r / p.rpow(valuation(r, p));
  return u;
}

bool is_p_integral(const Rational& r, const Prime& p) {
  return r == 0 || valuation(r, p) >= 0;
}

Integer residue_mod(const Rational& r, const Prime& p, int k) {
  if (k <= 0) return 0;
  if (!is_p_integral(r, p)) throw NotAUnit("residue of a non-integral rational");
  Integer modulus = p.pow(k);
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), r.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw NotAUnit("denominator not invertible mod p");
  }
  Integer t = r.get_num() * inv;
  mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), modulus.get_mpz_t());
  return t;
}

Rational reduce_mod(const Rational& r, const Prime& p, int k) {
  if (r == 0) return 0;
  // r = n / (p^e d) with p not dividing d; the result is x / p^e with
  // x = n d^{-1} mod p^{k+e}.
  const int e = valuation(r.get_den(), p);
  if (k + e <= 0) return 0;
  const Integer pe = p.pow(e);
  const Integer modulus = p.pow(k + e);
  Integer x;
  if (r.get_den() == pe) {
    x = r.get_num();
  } else {
    Integer d = r.get_den() / pe;
    mpz_invert(x.get_mpz_t(), d.get_mpz_t(), modulus.get_mpz_t());
    x *= r.get_num();
  }
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  Rational out(x, pe);
  out.canonicalize();
  return out;
}

Rational fractional_part(const Rational& r, const Prime& p) {
  int v = valuation(r, p);
  if (v >= 0) return 0;
  // r = p^v s with s a unit; {r} = (s mod p^{-v}) / p^{-v}.
  return reduce_mod(r, p, 0);
}

int legendre(const Rational& u, const Prime& p) {
  require_odd(p);
  if (u == 0 || valuation(u, p) != 0) throw NotAUnit("legendre symbol needs a p-adic unit");
  Integer m(p.value());
  int a = mpz_legendre(u.get_num().get_mpz_t(), m.get_mpz_t());
  int b = mpz_legendre(u.get_den().get_mpz_t(), m.get_mpz_t());
  return a * b;
}

SquareClass square_class(const Rational& r, const Prime& p) {
  require_odd(p);
  if (r == 0) throw ZeroInput("square class of 0");
  bool odd_val = (valuation(r, p) % 2) != 0;
  bool square = legendre(unit_part(r, p), p) == 1;
  if (!odd_val) return square ? SquareClass::UnitSquare : SquareClass::UnitNonsquare;
  return square ? SquareClass::PTimesSquare : SquareClass::PTimesNonsquare;
}

Rational square_class_representative(SquareClass c, const Prime& p) {
  require_odd(p);
  Rational eps(p.nonresidue());
  Rational pp(p.value());
  switch (c) {
    case SquareClass::UnitSquare: return 1;
    case SquareClass::UnitNonsquare: return eps;
    case SquareClass::PTimesSquare: return pp;
    case SquareClass::PTimesNonsquare: return pp * eps;
  }
  return 1;
}

int hilbert(const Rational& a, const Rational& b, const Prime& p) {
  require_odd(p);
  if (a == 0 || b == 0) throw ZeroInput("hilbert symbol with a zero argument");
  int va = valuation(a, p);
  int vb = valuation(b, p);
  int sign = 1;
  // (-1)^{va vb (p-1)/2}
  if ((va & 1) && (vb & 1) && ((p.value() - 1) / 2) % 2 == 1) sign = -sign;
  if (vb & 1) sign *= legendre(unit_part(a, p), p);
  if (va & 1) sign *= legendre(unit_part(b, p), p);
  return sign;
}

}  // namespace theta
