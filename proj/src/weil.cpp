#include "theta/weil.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "theta/errors.hpp"

namespace theta::weil {

// ---------------------------------------------------------------- RMatrix

RMatrix::RMatrix(int rows, int cols, std::vector<Rational> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != static_cast<std::size_t>(rows * cols)) {
    throw std::invalid_argument("RMatrix: data size does not match shape");
  }
}

RMatrix RMatrix::identity(int n) { return scalar(n, 1); }

RMatrix RMatrix::scalar(int n, const Rational& s) {
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Rational RMatrix::det() const {
  if (rows_ != cols_) throw std::invalid_argument("det of a non-square matrix");
  RMatrix m = *this;
  Rational det = 1;
  const int n = rows_;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

RMatrix RMatrix::inverse() const {
  if (rows_ != cols_) throw Singular("inverse of a non-square matrix");
  const int n = rows_;
  RMatrix m = *this;
  RMatrix inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) throw Singular("matrix is not invertible");
    for (int j = 0; j < n; ++j) {
      std::swap(m(piv, j), m(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    Rational s = m(c, c);
    for (int j = 0; j < n; ++j) {
      m(c, j) /= s;
      inv(c, j) /= s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

bool RMatrix::is_symmetric() const { return rows_ == cols_ && *this == transpose(); }

std::vector<Rational> RMatrix::apply(const std::vector<Rational>& v) const {
  std::vector<Rational> out(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("RMatrix: shape mismatch in product");
  RMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RMatrix operator+(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("RMatrix: shape mismatch in sum");
  RMatrix c = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

RMatrix operator*(const Rational& s, const RMatrix& a) {
  RMatrix c = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

RMatrix kronecker(const RMatrix& a, const RMatrix& b) {
  RMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int r = 0; r < b.rows(); ++r)
        for (int s = 0; s < b.cols(); ++s) k(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
  return k;
}

// ---------------------------------------------------------------- scalars

Phase::Phase(const Rational& t) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  t_ = t - Rational(fl);
  t_.canonicalize();
}

Scalar::Scalar(const Rational& coeff, int half_power, const Phase& phase, const Prime& p) {
  if (coeff == 0) return;
  coeff_ = coeff;
  coeff_.canonicalize();
  phase_ = phase;
  if (coeff_ < 0) {
    coeff_ = -coeff_;
    phase_ = phase_ + Phase(Rational(1, 2));
  }
  int q = half_power >= 0 ? half_power / 2 : -((1 - half_power) / 2);
  half_power_ = half_power - 2 * q;
  coeff_ *= p.rpow(q);
}

Scalar Scalar::times(const Rational& c, int half_power, const Phase& phase, const Prime& p) const {
  return Scalar(coeff_ * c, half_power_ + half_power, phase_ + phase, p);
}

std::string Scalar::to_string() const {
  return format_rational(coeff_) + " * p^(" + std::to_string(half_power_) + "/2) * e(" +
         format_rational(phase_.value()) + ")";
}

// ---------------------------------------------------------------- lattices

namespace {

int min_valuation(const RMatrix& m, const Prime& p) {
  int mv = kInfiniteValuation;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) mv = std::min(mv, valuation(m(i, j), p));
  return mv;
}

void column_axpy(RMatrix& b, int dst, const Rational& f, int src) {
  for (int r = 0; r < b.rows(); ++r) b(r, dst) -= f * b(r, src);
}

}  // namespace

LatticeCoset LatticeCoset::canonical(const Prime& p) const {
  const int n = dim();
  if (basis.cols() != n || static_cast<int>(center.size()) != n) {
    throw std::invalid_argument("LatticeCoset: inconsistent dimensions");
  }
  RMatrix b = basis;
  std::vector<int> k(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int piv = -1;
    int best = kInfiniteValuation;
    for (int j = i; j < n; ++j) {
      int v = valuation(b(i, j), p);
      if (v < best) {
        best = v;
        piv = j;
      }
    }
    if (piv < 0) throw Singular("lattice basis is not of full rank");
    if (piv != i)
      for (int r = 0; r < n; ++r) std::swap(b(r, piv), b(r, i));
    for (int j = i + 1; j < n; ++j) {
      if (b(i, j) != 0) column_axpy(b, j, b(i, j) / b(i, i), i);
    }
    Rational unit = p.rpow(best) / b(i, i);
    for (int r = i; r < n; ++r) b(r, i) *= unit;
    k[i] = best;
  }
  for (int i = 1; i < n; ++i) {
    Rational pk = p.rpow(k[i]);
    for (int j = 0; j < i; ++j) {
      Rational rep = reduce_mod(b(i, j), p, k[i]);
      if (rep != b(i, j)) column_axpy(b, j, (b(i, j) - rep) / pk, i);
    }
  }
  std::vector<Rational> c = center;
  for (int i = 0; i < n; ++i) {
    Rational rep = reduce_mod(c[i], p, k[i]);
    if (rep == c[i]) continue;
    Rational f = (c[i] - rep) / p.rpow(k[i]);
    for (int r = i; r < n; ++r) c[r] -= f * b(r, i);
  }
  return {std::move(c), std::move(b)};
}

bool LatticeCoset::contains(const std::vector<Rational>& v, const Prime& p) const {
  std::vector<Rational> diff(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - center[i];
  for (const Rational& t : basis.inverse().apply(diff)) {
    if (!is_p_integral(t, p)) return false;
  }
  return true;
}

LatticeCoset LatticeCoset::cube(std::vector<Rational> center, int level, const Prime& p) {
  for (Rational& c : center) c = reduce_mod(c, p, level);
  const int n = static_cast<int>(center.size());
  return {std::move(center), RMatrix::scalar(n, p.rpow(level))};
}

// ---------------------------------------------------------------- spaces

WeilSpace hyperbolic_plane(int n) { return {RMatrix(2, 2, {0, 1, 1, 0}), n}; }

WeilSpace traceless_weil_space(int n) { return {RMatrix(3, 3, {2, 0, 0, 0, 0, 1, 0, 1, 0}), n}; }

// ---------------------------------------------------------------- sums

namespace {

constexpr long kMaxCubes = 1L << 20;

using CubeMap = std::map<std::vector<Rational>, Scalar>;

long checked_pow(long p, long e) {
  long r = 1;
  for (long i = 0; i < e; ++i) {
    if (r > kMaxCubes / p) throw GuardExceeded("support splits into too many cubes");
    r *= p;
  }
  return r;
}

// Decomposes a canonical coset into standard cubes of the smallest level
// contained in its lattice.
void add_cubes(const LatticeCoset& lc, const Scalar& value, const Prime& p, std::map<int, CubeMap>& levels) {
  const int n = lc.dim();
  const int level = -min_valuation(lc.basis.inverse(), p);
  std::vector<long> range(static_cast<std::size_t>(n));
  long total = 1;
  for (int i = 0; i < n; ++i) {
    range[i] = checked_pow(p.value(), level - valuation(lc.basis(i, i), p));
    total *= range[i];
    if (total > kMaxCubes) throw GuardExceeded("support splits into too many cubes");
  }
  // Reduced entries lie in p^{-e} Z; enumerate in integers scaled by p^e.
  std::vector<Rational> center(static_cast<std::size_t>(n));
  RMatrix basis(n, n);
  int e = std::max(0, -level);
  for (int r = 0; r < n; ++r) {
    center[r] = reduce_mod(lc.center[r], p, level);
    e = std::max(e, valuation(center[r].get_den(), p));
    for (int j = 0; j <= r; ++j) {
      basis(r, j) = reduce_mod(lc.basis(r, j), p, level);
      e = std::max(e, valuation(basis(r, j).get_den(), p));
    }
  }
  const Integer scale = p.pow(e);
  const Integer modulus = p.pow(level + e);
  auto scaled = [&](const Rational& x) { return Integer(x * scale); };
  std::vector<Integer> c0(static_cast<std::size_t>(n));
  std::vector<std::vector<Integer>> cols(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n)));
  for (int r = 0; r < n; ++r) {
    c0[r] = scaled(center[r]);
    for (int j = 0; j <= r; ++j) cols[j][r] = scaled(basis(r, j));
  }
  std::vector<long> t(static_cast<std::size_t>(n), 0);
  CubeMap& cubes = levels[level];
  Integer x;
  for (long idx = 0; idx < total; ++idx) {
    std::vector<Rational> point(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      x = c0[r];
      for (int j = 0; j <= r; ++j) {
        if (t[j] != 0) x += t[j] * cols[j][r];
      }
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
      point[r] = Rational(x, scale);
      point[r].canonicalize();
    }
    if (!cubes.emplace(std::move(point), value).second) {
      throw InconsistentCase("Schwartz sum has overlapping supports");
    }
    for (int j = n - 1; j >= 0; --j) {
      if (++t[j] < range[j]) break;
      t[j] = 0;
    }
  }
}

}  // namespace

SchwartzSum::SchwartzSum(WeilSpace space, std::vector<SchwartzTerm> terms)
    : space_(std::move(space)), terms_(std::move(terms)) {
  for (const SchwartzTerm& t : terms_) {
    if (t.support.dim() != space_.dim()) throw std::invalid_argument("support dimension does not match space");
  }
}

SchwartzSum SchwartzSum::indicator(WeilSpace space, const LatticeCoset& support, const Scalar& value) {
  return SchwartzSum(std::move(space), {{value, support}});
}

bool operator==(const SchwartzSum& a, const SchwartzSum& b) {
  return a.space_ == b.space_ && a.terms_ == b.terms_;
}

SchwartzSum SchwartzSum::canonical(const Prime& p) const {
  const int n = space_.dim();
  std::map<int, CubeMap> levels;
  for (const SchwartzTerm& t : terms_) {
    if (t.value.is_zero()) continue;
    add_cubes(t.support.canonical(p), t.value, p, levels);
  }
  // Merge complete sibling families with equal values, finest level first.
  const long children = checked_pow(p.value(), n);
  for (int level = levels.empty() ? 0 : levels.rbegin()->first; !levels.empty(); --level) {
    bool merged = false;
    if (auto it = levels.find(level); it != levels.end()) {
      CubeMap& cubes = it->second;
      std::map<std::vector<Rational>, std::vector<CubeMap::iterator>> families;
      for (auto c = cubes.begin(); c != cubes.end(); ++c) {
        std::vector<Rational> parent = c->first;
        for (Rational& x : parent) x = reduce_mod(x, p, level - 1);
        families[std::move(parent)].push_back(c);
      }
      for (auto& [parent, kids] : families) {
        if (static_cast<long>(kids.size()) != children) continue;
        const Scalar v = kids.front()->second;
        if (!std::all_of(kids.begin(), kids.end(), [&](auto k) { return k->second == v; })) continue;
        for (auto k : kids) cubes.erase(k);
        if (!levels[level - 1].emplace(parent, v).second) {
          throw InconsistentCase("Schwartz sum has overlapping supports");
        }
        merged = true;
      }
    }
    if (!merged && levels.begin()->first >= level) break;
  }
  for (const auto& [level, cubes] : levels) {
    for (const auto& [coarse, outer] : levels) {
      if (coarse >= level) break;
      for (const auto& [center, value] : cubes) {
        std::vector<Rational> parent = center;
        for (Rational& x : parent) x = reduce_mod(x, p, coarse);
        if (outer.count(parent)) throw InconsistentCase("Schwartz sum has overlapping supports");
      }
    }
  }
  std::vector<SchwartzTerm> out;
  for (const auto& [level, cubes] : levels) {
    const RMatrix basis = RMatrix::scalar(n, p.rpow(level));
    for (const auto& [center, value] : cubes) out.push_back({value, {center, basis}});
  }
  return SchwartzSum(space_, std::move(out));
}

Scalar SchwartzSum::evaluate(const std::vector<Rational>& v, const Prime& p) const {
  for (const SchwartzTerm& t : terms_) {
    if (!t.value.is_zero() && t.support.contains(v, p)) return t.value;
  }
  return {};
}

// ---------------------------------------------------------------- actions

namespace {

SchwartzSum transform_supports(const SchwartzSum& f, const RMatrix& map, const Rational& coeff, int half_power,
                               const Phase& phase, const Prime& p) {
  std::vector<SchwartzTerm> terms;
  terms.reserve(f.terms().size());
  for (const SchwartzTerm& t : f.terms()) {
    terms.push_back({t.value.times(coeff, half_power, phase, p),
                     {map.apply(t.support.center), map * t.support.basis}});
  }
  return SchwartzSum(f.space(), std::move(terms)).canonical(p);
}

RMatrix form_matrix(const RMatrix& b, const WeilSpace& space) { return kronecker(b, space.gram); }

Rational bilinear(const RMatrix& m, const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational s = 0;
  for (int i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < m.cols(); ++j) s += x[i] * m(i, j) * y[j];
  }
  return s;
}

std::vector<Rational> column(const RMatrix& b, int j) {
  std::vector<Rational> c(static_cast<std::size_t>(b.rows()));
  for (int r = 0; r < b.rows(); ++r) c[r] = b(r, j);
  return c;
}

// Smallest valuation among q(e_i), B(e_i, e_j), B(c, e_i); the phase
// function is constant mod Z_p on the coset iff it is >= 0 (p odd).
int phase_obstruction(const RMatrix& m, const LatticeCoset& lc, const Prime& p) {
  const int n = lc.dim();
  std::vector<std::vector<Rational>> cols;
  for (int j = 0; j < n; ++j) cols.push_back(column(lc.basis, j));
  int mv = kInfiniteValuation;
  for (int i = 0; i < n; ++i) {
    mv = std::min(mv, valuation(Rational(bilinear(m, cols[i], cols[i]) / 2), p));
    mv = std::min(mv, valuation(bilinear(m, lc.center, cols[i]), p));
    for (int j = i + 1; j < n; ++j) mv = std::min(mv, valuation(bilinear(m, cols[i], cols[j]), p));
  }
  return mv;
}

void refine(const RMatrix& m, const LatticeCoset& lc, const Scalar& value, int depth, int max_depth,
            const Prime& p, std::vector<SchwartzTerm>& out) {
  if (phase_obstruction(m, lc, p) >= 0) {
    Phase shift(fractional_part(bilinear(m, lc.center, lc.center) / 2, p));
    out.push_back({value.times(1, 0, shift, p), lc});
    return;
  }
  if (depth >= max_depth) throw std::logic_error("unipotent refinement exceeded its depth bound");
  const int n = lc.dim();
  RMatrix finer = Rational(p.value()) * lc.basis;
  std::vector<long> t(static_cast<std::size_t>(n), 0);
  const long total = checked_pow(p.value(), n);
  for (long idx = 0; idx < total; ++idx) {
    std::vector<Rational> c = lc.center;
    for (int j = 0; j < n; ++j) {
      if (t[j] == 0) continue;
      for (int r = 0; r < n; ++r) c[r] += t[j] * lc.basis(r, j);
    }
    refine(m, {std::move(c), finer}, value, depth + 1, max_depth, p, out);
    for (int j = n - 1; j >= 0; --j) {
      if (++t[j] < p.value()) break;
      t[j] = 0;
    }
  }
}

}  // namespace

Rational trace_bq(const RMatrix& b, const WeilSpace& space, const std::vector<Rational>& v) {
  return bilinear(form_matrix(b, space), v, v) / 2;
}

SchwartzSum act_levi(const RMatrix& a, const SchwartzSum& f, const Prime& p) {
  const WeilSpace& sp = f.space();
  if (a.rows() != sp.n || a.cols() != sp.n) throw std::invalid_argument("act_levi: a must be n x n");
  Rational det = a.det();
  if (det == 0) throw Singular("act_levi: a is not invertible");
  int chi = chi_V(det, sp.descriptor(), p);
  int half_power = -sp.m() * valuation(det, p);
  // {v : v a in S} = S a^{-1}; vec(v a^{-1}) = (a^{-T} kron I_m) vec(v).
  RMatrix map = kronecker(a.inverse().transpose(), RMatrix::identity(sp.m()));
  return transform_supports(f, map, 1, half_power, Phase(chi == 1 ? Rational(0) : Rational(1, 2)), p);
}

SchwartzSum act_unipotent(const RMatrix& b, const SchwartzSum& f, const Prime& p) {
  const WeilSpace& sp = f.space();
  if (b.rows() != sp.n || b.cols() != sp.n) throw std::invalid_argument("act_unipotent: b must be n x n");
  if (!b.is_symmetric()) throw InconsistentCase("act_unipotent: b must be symmetric");
  RMatrix m = form_matrix(b, sp);
  std::vector<SchwartzTerm> out;
  const SchwartzSum cubes = f.canonical(p);
  for (const SchwartzTerm& t : cubes.terms()) {
    int max_depth = std::max(0, -phase_obstruction(m, t.support, p));
    refine(m, t.support, t.value, 0, max_depth, p, out);
  }
  return SchwartzSum(sp, std::move(out)).canonical(p);
}

SchwartzSum act_orth(const RMatrix& h, const SchwartzSum& f, const Prime& p) {
  const WeilSpace& sp = f.space();
  if (h.rows() != sp.m() || h.cols() != sp.m()) throw std::invalid_argument("act_orth: h must be m x m");
  if (h.det() == 0) throw Singular("act_orth: h is not invertible");
  if (h.transpose() * sp.gram * h != sp.gram) throw NotIsometry("act_orth: h does not preserve Q");
  RMatrix map = kronecker(RMatrix::identity(sp.n), h);
  return transform_supports(f, map, 1, 0, Phase(), p);
}

SchwartzSum apply_word(const std::vector<WeilOp>& word, const SchwartzSum& f, const Prime& p) {
  SchwartzSum g = f.canonical(p);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->kind == "m") {
      g = act_levi(it->param, g, p);
    } else if (it->kind == "n") {
      g = act_unipotent(it->param, g, p);
    } else if (it->kind == "h") {
      g = act_orth(it->param, g, p);
    } else {
      throw ParseError("unknown operator letter '" + it->kind + "'");
    }
  }
  return g;
}

// ---------------------------------------------------------------- JSON

namespace {

Rational json_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational, got " + j.dump());
}

nlohmann::ordered_json matrix_json(const RMatrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

RMatrix rmatrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) return RMatrix(1, 1, {json_rational(j)});
  const int rows = static_cast<int>(j.size());
  if (rows == 0) throw ParseError("empty matrix");
  const int cols = static_cast<int>(j.at(0).size());
  std::vector<Rational> data;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != cols) throw ParseError("ragged matrix");
    for (const auto& x : row) data.push_back(json_rational(x));
  }
  return RMatrix(rows, cols, std::move(data));
}

nlohmann::ordered_json to_json(const SchwartzSum& f, const Prime& p) {
  nlohmann::ordered_json j;
  j["p"] = p.value();
  j["gram"] = matrix_json(f.space().gram);
  j["n"] = f.space().n;
  j["terms"] = nlohmann::ordered_json::array();
  for (const SchwartzTerm& t : f.terms()) {
    nlohmann::ordered_json term;
    term["coeff"] = format_rational(t.value.coeff());
    term["half_power"] = t.value.half_power();
    term["phase"] = format_rational(t.value.phase().value());
    nlohmann::ordered_json center = nlohmann::ordered_json::array();
    for (const Rational& c : t.support.center) center.push_back(format_rational(c));
    term["center"] = center;
    term["basis"] = matrix_json(t.support.basis);
    j["terms"].push_back(term);
  }
  return j;
}

SchwartzSum schwartz_sum_from_json(const nlohmann::json& j) {
  try {
    Prime p(j.at("p").get<long>());
    WeilSpace space{rmatrix_from_json(j.at("gram")), j.value("n", 1)};
    if (!space.gram.is_symmetric() || space.gram.det() == 0) throw ParseError("gram must be symmetric and nondegenerate");
    std::vector<SchwartzTerm> terms;
    for (const auto& t : j.at("terms")) {
      Scalar value(json_rational(t.at("coeff")), t.value("half_power", 0),
                   Phase(t.contains("phase") ? json_rational(t.at("phase")) : Rational(0)), p);
      std::vector<Rational> center;
      for (const auto& c : t.at("center")) center.push_back(json_rational(c));
      terms.push_back({value, {std::move(center), rmatrix_from_json(t.at("basis"))}});
    }
    return SchwartzSum(std::move(space), std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<WeilOp> word_from_json(const nlohmann::json& j) {
  std::vector<WeilOp> word;
  try {
    for (const auto& letter : j) {
      std::string kind = letter.at("op").get<std::string>();
      const char* key = kind == "m" ? "a" : kind == "n" ? "b" : kind == "h" ? "h" : nullptr;
      if (key == nullptr) throw ParseError("unknown operator letter '" + kind + "'");
      word.push_back({kind, rmatrix_from_json(letter.at(key))});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  return word;
}

}  // namespace theta::weil
