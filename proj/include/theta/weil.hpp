#pragma once

// Locally constant, compactly supported functions on (Q_p^m)^n as exact
// finite sums, and the Weil representation on them for the Siegel parabolic
// and the orthogonal group:
//
//   omega(h)    f(v) = f(h^{-1} v)
//   omega(m(a)) f(v) = chi_V(det a) |det a|_p^{m/2} f(v a)
//   omega(n(b)) f(v) = psi(tr(b Q[v])) f(v),   Q[v] = 1/2 ((v_i, v_j))_{ij}
//
// psi(t) = exp(2 pi i {t}_p) has conductor exactly Z_p. Values are monomials
// c * p^{h/2} * exp(2 pi i t) with c rational, h an integer and t in Q/Z, so
// every computation is exact.
//
// A vector v = (v_1, ..., v_n) is flattened column-major into Q_p^{mn}.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "theta/padic.hpp"
#include "theta/quadspace.hpp"

namespace theta::weil {

/// Dense rational matrix, row-major.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}
  RMatrix(int rows, int cols, std::vector<Rational> data);

  static RMatrix identity(int n);
  static RMatrix scalar(int n, const Rational& s);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  RMatrix transpose() const;
  Rational det() const;
  /// Throws Singular.
  RMatrix inverse() const;
  bool is_symmetric() const;

  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  friend RMatrix operator*(const RMatrix& a, const RMatrix& b);
  friend RMatrix operator+(const RMatrix& a, const RMatrix& b);
  friend RMatrix operator*(const Rational& s, const RMatrix& a);
  friend bool operator==(const RMatrix&, const RMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

RMatrix kronecker(const RMatrix& a, const RMatrix& b);

/// Element of Q/Z stored as a rational in [0, 1).
class Phase {
 public:
  Phase() = default;
  explicit Phase(const Rational& t);
  const Rational& value() const { return t_; }
  friend Phase operator+(const Phase& a, const Phase& b) { return Phase(a.t_ + b.t_); }
  friend bool operator==(const Phase&, const Phase&) = default;

 private:
  Rational t_ = 0;
};

/// coeff * p^{half_power/2} * exp(2 pi i phase), normalized so that
/// coeff > 0 and half_power in {0, 1} (zero is coeff = 0, half_power = 0,
/// phase = 0). Normal forms are unique, so == is value equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Rational& coeff, int half_power, const Phase& phase, const Prime& p);

  const Rational& coeff() const { return coeff_; }
  int half_power() const { return half_power_; }
  const Phase& phase() const { return phase_; }
  bool is_zero() const { return coeff_ == 0; }

  Scalar times(const Rational& c, int half_power, const Phase& phase, const Prime& p) const;

  std::string to_string() const;
  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  Rational coeff_ = 0;
  int half_power_ = 0;
  Phase phase_;
};

/// center + basis * Z_p^N. canonical() puts the basis in lower-triangular
/// Hermite form at p (diagonal p^{k_i}, off-diagonal entries reduced) and
/// reduces the center modulo the lattice.
struct LatticeCoset {
  std::vector<Rational> center;
  RMatrix basis;

  int dim() const { return basis.rows(); }
  LatticeCoset canonical(const Prime& p) const;
  bool contains(const std::vector<Rational>& v, const Prime& p) const;
  /// The standard cube c + p^k Z_p^N.
  static LatticeCoset cube(std::vector<Rational> center, int level, const Prime& p);

  friend bool operator==(const LatticeCoset&, const LatticeCoset&) = default;
};

/// V = Q_p^m with (x, y) = x^T gram y and Q(x) = (x, x) / 2; n vector arguments.
struct WeilSpace {
  RMatrix gram;
  int n = 1;

  int m() const { return gram.rows(); }
  int dim() const { return m() * n; }
  QuadSpaceDescriptor descriptor() const { return {m(), gram.det()}; }

  friend bool operator==(const WeilSpace&, const WeilSpace&) = default;
};

/// Q(v) = v1 v2 on Q_p^2.
WeilSpace hyperbolic_plane(int n = 1);
/// Traceless 2x2 matrices in the basis {diag(1,-1), E12, E21}.
WeilSpace traceless_weil_space(int n = 1);

struct SchwartzTerm {
  Scalar value;
  LatticeCoset support;

  friend bool operator==(const SchwartzTerm&, const SchwartzTerm&) = default;
};

class SchwartzSum {
 public:
  SchwartzSum(WeilSpace space, std::vector<SchwartzTerm> terms = {});

  /// value * 1_{support}.
  static SchwartzSum indicator(WeilSpace space, const LatticeCoset& support, const Scalar& value);

  const WeilSpace& space() const { return space_; }
  const std::vector<SchwartzTerm>& terms() const { return terms_; }

  /// Unique normal form: the maximal standard cubes c + p^k Z_p^N on which
  /// the function is constant and nonzero, sorted by (k, c). Two sums are
  /// the same function iff their canonical forms are equal. Throws
  /// GuardExceeded when a support splits into too many cubes.
  SchwartzSum canonical(const Prime& p) const;

  /// Value at v (zero outside the support).
  Scalar evaluate(const std::vector<Rational>& v, const Prime& p) const;

  /// Structural equality of the stored terms; compare canonical forms to
  /// test equality of functions.
  friend bool operator==(const SchwartzSum& a, const SchwartzSum& b);

 private:
  WeilSpace space_;
  std::vector<SchwartzTerm> terms_;
};

/// tr(b Q[v]).
Rational trace_bq(const RMatrix& b, const WeilSpace& space, const std::vector<Rational>& v);

/// omega(m(a)). Throws Singular.
SchwartzSum act_levi(const RMatrix& a, const SchwartzSum& f, const Prime& p);
/// omega(n(b)). Throws InconsistentCase if b is not symmetric.
SchwartzSum act_unipotent(const RMatrix& b, const SchwartzSum& f, const Prime& p);
/// omega(h) for h in O(V). Throws Singular or NotIsometry.
SchwartzSum act_orth(const RMatrix& h, const SchwartzSum& f, const Prime& p);

/// One letter of an operator word: "m" (Levi, parameter a), "n"
/// (unipotent, parameter b) or "h" (orthogonal, parameter h).
struct WeilOp {
  std::string kind;
  RMatrix param;
};

/// omega(w_1 w_2 ... w_k) f: the last letter acts first.
SchwartzSum apply_word(const std::vector<WeilOp>& word, const SchwartzSum& f, const Prime& p);

nlohmann::ordered_json to_json(const SchwartzSum& f, const Prime& p);
/// {"p", "gram", "n", "terms": [{"coeff", "half_power", "phase", "center", "basis"}]}.
SchwartzSum schwartz_sum_from_json(const nlohmann::json& j);
RMatrix rmatrix_from_json(const nlohmann::json& j);
std::vector<WeilOp> word_from_json(const nlohmann::json& j);

}  // namespace theta::weil
