#include "theta/matching.hpp"

#include "theta/errors.hpp"

namespace theta {

namespace {

Rational coefficient_from_general_recipe(const CaseClass& c, const CosetRep& rep, const Prime& p,
                                         const MeasureSpec& measure) {
  // phi(gamma^{-1} x) = 1 on the support set, and K fixes phi.
  return Rational(1) / stabilizer_volume(c, rep, p, measure);
}

nlohmann::ordered_json measure_value(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return format_rational(r);
}

Rational parse_json_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational, got " + j.dump());
}

}  // namespace

bool in_standard_position(const TracelessMat& x, const Prime& p) {
  auto c = classify(x, p);
  if (!c) return false;
  const Rational pk = p.rpow(c->kind == CaseKind::Ramified ? (c->alpha - 1) / 2 : c->alpha / 2);
  const Rational scale = (c->kind == CaseKind::Split ? x.a : x.c) / pk;
  if (scale == 0 || valuation(scale, p) != 0) return false;
  CaseClass unscaled = *c;
  unscaled.unit = c->unit / (scale * scale);
  return scale * standard_rep(unscaled, p) == x;
}

MatchingDatum build_xi_general(const TracelessMat& x, const Prime& p, const MeasureSpec& measure) {
  auto c = classify(x, p);
  if (!c) throw NotApplicable("Q(x) is zero or not p-integral; 1_L(h^{-1}x) vanishes identically");
  if (!in_standard_position(x, p)) {
    throw NotStandardPosition("x must be a unit multiple of " + to_string(standard_rep(*c, p)));
  }
  FormalCosetSum xi{*c, p, measure, {}};
  for (const CosetRep& rep : support_set(*c, p)) {
    xi.terms.push_back({coefficient_from_general_recipe(*c, rep, p, measure), rep});
  }
  return {x, *c, std::move(xi)};
}

MatchingDatum build_datum(const CaseClass& c, const Prime& p, const MeasureSpec& measure) {
  return build_xi_general(standard_rep(c, p), p, measure);
}

FormalCosetSum build_xi_closed_form(const CaseClass& c, const Prime& p, const MeasureSpec& measure) {
  validate(c, p);
  FormalCosetSum xi{c, p, measure, {}};
  const Rational prefactor = Rational(1) / measure.vol_Hx;
  auto add = [&](int d, const Rational& coeff) {
    xi.terms.push_back({prefactor * coeff, standard_coset_rep(c.kind, d, p)});
  };
  switch (c.kind) {
    case CaseKind::Inert:
      add(0, 1);
      for (int d = 1; d <= c.alpha / 2; ++d) add(d, Rational(p.pow(d) + p.pow(d - 1)));
      break;
    case CaseKind::Ramified:
      for (int d = 1; d <= (c.alpha + 1) / 2; ++d) add(d, Rational(2 * p.pow(d - 1)));
      break;
    case CaseKind::Split:
      add(0, 1);
      for (int d = 1; d <= c.alpha / 2; ++d) add(d, 1);
      break;
  }
  return xi;
}

Rational evaluate_xi(const FormalCosetSum& xi, const ProjMat& h, const Prime& p) {
  Rational total = 0;
  for (const CosetTerm& t : xi.terms) {
    if (canonicalize(t.rep.matrix.inverse() * h, p) == TreeVertex::base()) total += t.coeff;
  }
  return total;
}

MatchingCheck matching_sides(const MatchingDatum& md, const ProjMat& h, const Prime& p) {
  MatchingCheck out{in_lattice(act(h.inverse(), md.x), p) ? 1 : 0, 0};
  // integral_{H_x} 1_{gamma K}(h0 h) dh0 = vol(H_x cap gamma K gamma^{-1}) if h in H_x gamma K, else 0.
  const DoubleCosetIndex target = classify_double_coset(h, md.case_class, p);
  for (const CosetTerm& t : md.xi.terms) {
    if (classify_double_coset(t.rep.matrix, md.case_class, p) != target) continue;
    out.rhs += t.coeff * stabilizer_volume(md.case_class, t.rep, p, md.xi.measure);
  }
  return out;
}

bool verify_matching_at(const MatchingDatum& md, const ProjMat& h, const Prime& p) {
  return matching_sides(md, h, p).holds();
}

FormalCosetSum translate_representatives(const FormalCosetSum& xi, const std::vector<ProjMat>& torus,
                                         std::mt19937_64& rng) {
  FormalCosetSum out = xi;
  if (torus.empty()) return out;
  std::uniform_int_distribution<std::size_t> pick(0, torus.size() - 1);
  for (CosetTerm& t : out.terms) t.rep.matrix = torus[pick(rng)] * t.rep.matrix;
  return out;
}

nlohmann::ordered_json to_json(const MatchingDatum& md) {
  const FormalCosetSum& xi = md.xi;
  nlohmann::ordered_json j;
  j["p"] = xi.p.value();
  j["case"] = to_string(md.case_class.kind);
  j["alpha"] = md.case_class.alpha;
  j["epsilon"] = format_rational(md.case_class.unit);
  j["normalization"] = {{"vol_K", measure_value(xi.measure.vol_K)},
                        {"vol_Hx", measure_value(xi.measure.vol_Hx)}};
  j["terms"] = nlohmann::ordered_json::array();
  for (const CosetTerm& t : xi.terms) {
    const Mat2 m = t.rep.matrix.primitive();
    nlohmann::ordered_json term;
    term["d"] = t.rep.d;
    term["rep"] = nlohmann::ordered_json::array({nlohmann::ordered_json::array({format_rational(m.a), format_rational(m.b)}),
                                                 nlohmann::ordered_json::array({format_rational(m.c), format_rational(m.d)})});
    term["coeff"] = format_rational(t.coeff);
    j["terms"].push_back(term);
  }
  return j;
}

MatchingDatum matching_datum_from_json(const nlohmann::json& j) {
  try {
    Prime p(j.at("p").get<long>());
    CaseClass c{parse_case_kind(j.at("case").get<std::string>()), j.at("alpha").get<int>(),
                parse_json_rational(j.at("epsilon"))};
    validate(c, p);
    MeasureSpec measure;
    if (j.contains("normalization")) {
      const auto& n = j.at("normalization");
      measure.vol_K = parse_json_rational(n.at("vol_K"));
      measure.vol_Hx = parse_json_rational(n.at("vol_Hx"));
    }
    FormalCosetSum xi{c, p, measure, {}};
    for (const auto& t : j.at("terms")) {
      const auto& r = t.at("rep");
      Mat2 m{parse_json_rational(r.at(0).at(0)), parse_json_rational(r.at(0).at(1)),
             parse_json_rational(r.at(1).at(0)), parse_json_rational(r.at(1).at(1))};
      CosetRep rep{c.kind, t.at("d").get<int>(), ProjMat(m)};
      if (classify_double_coset(rep.matrix, c, p).d != rep.d) {
        throw ParseError("representative " + to_string(m) + " is not in double coset d = " +
                         std::to_string(rep.d));
      }
      xi.terms.push_back({parse_json_rational(t.at("coeff")), rep});
    }
    return {standard_rep(c, p), c, std::move(xi)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace theta
