#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "theta/errors.hpp"
#include "theta/matching.hpp"

namespace theta {
namespace {

const Prime p3(3), p5(5), p7(7);

CaseClass inert(int alpha, const Prime& p) { return {CaseKind::Inert, alpha, p.nonresidue()}; }
CaseClass ramified(int alpha, const Prime& p) { return {CaseKind::Ramified, alpha, p.nonresidue()}; }
CaseClass split(int alpha) { return {CaseKind::Split, alpha, 1}; }

std::vector<std::pair<int, Rational>> summary(const FormalCosetSum& xi) {
  std::vector<std::pair<int, Rational>> out;
  for (const CosetTerm& t : xi.terms) out.emplace_back(t.rep.d, t.coeff);
  return out;
}

using Terms = std::vector<std::pair<int, Rational>>;

std::vector<CaseClass> cases_up_to(int max_alpha, const Prime& p) {
  std::vector<CaseClass> out;
  for (int a = 0; a <= max_alpha; ++a) {
    if (a % 2 == 0) {
      out.push_back(inert(a, p));
      out.push_back(split(a));
    } else {
      out.push_back(ramified(a, p));
      out.push_back({CaseKind::Ramified, a, 1});
    }
  }
  return out;
}

TEST(BuildXiGeneral, Examples) {
  EXPECT_EQ(summary(build_datum(inert(2, p3), p3).xi), (Terms{{0, 1}, {1, 4}}));
  EXPECT_EQ(summary(build_datum(ramified(1, p3), p3).xi), (Terms{{1, 2}}));
  EXPECT_EQ(summary(build_datum(split(2), p5).xi), (Terms{{0, 1}, {1, 4}}));
  EXPECT_EQ(summary(build_datum(split(4), p3).xi), (Terms{{0, 1}, {1, 2}, {2, 6}}));
}

TEST(BuildXiGeneral, AcceptsUnitMultiplesOnly) {
  TracelessMat x = standard_rep(inert(2, p3), p3);
  EXPECT_EQ(summary(build_xi_general(Rational(5, 7) * x, p3).xi), (Terms{{0, 1}, {1, 4}}));
  EXPECT_THROW(build_xi_general({0, 1, 0}, p3), NotApplicable);
  EXPECT_THROW(build_xi_general({0, Rational(2, 9), 1}, p3), NotApplicable);
  EXPECT_THROW(build_xi_general({1, 1, 1}, p3), NotStandardPosition);
  EXPECT_THROW(build_xi_general({0, 18, 1}, p3), NotStandardPosition);
  EXPECT_FALSE(in_standard_position({1, 1, 1}, p3));
}

TEST(BuildXiClosedForm, Examples) {
  EXPECT_EQ(summary(build_xi_closed_form(inert(2, p3), p3)), (Terms{{0, 1}, {1, 4}}));
  EXPECT_EQ(summary(build_xi_closed_form(ramified(3, p3), p3)), (Terms{{1, 2}, {2, 6}}));
  EXPECT_EQ(summary(build_xi_closed_form(split(4), p5)), (Terms{{0, 1}, {1, 1}, {2, 1}}));
  MeasureSpec twice{1, 2};
  EXPECT_EQ(summary(build_xi_closed_form(inert(2, p3), p3, twice)), (Terms{{0, Rational(1, 2)}, {1, 2}}));
}

TEST(BuildXi, CompactCasesAgreeWithClosedForm) {
  for (const Prime& p : {p3, p5, p7}) {
    for (const CaseClass& c : cases_up_to(5, p)) {
      if (c.kind == CaseKind::Split) continue;
      EXPECT_EQ(build_datum(c, p).xi, build_xi_closed_form(c, p));
    }
    EXPECT_EQ(build_datum(split(0), p).xi, build_xi_closed_form(split(0), p));
  }
}

// For the split torus the closed form puts 1 on every delta_d K; the matching
// identity needs the index (p - 1) p^{d-1} of the stabilizer of delta_d K.
TEST(BuildXi, SplitCoefficientsCarryTorusIndex) {
  for (const Prime& p : {p3, p5, p7}) {
    for (int alpha : {2, 4}) {
      const FormalCosetSum general = build_datum(split(alpha), p).xi;
      const FormalCosetSum closed = build_xi_closed_form(split(alpha), p);
      ASSERT_EQ(general.terms.size(), closed.terms.size());
      for (std::size_t i = 0; i < closed.terms.size(); ++i) {
        const int d = closed.terms[i].rep.d;
        const Rational index = d == 0 ? 1 : (p.value() - 1) * testing::ipow(p.value(), d - 1);
        EXPECT_EQ(general.terms[i].coeff, closed.terms[i].coeff * index);
      }
      MatchingDatum literal{standard_rep(split(alpha), p), split(alpha), closed};
      EXPECT_FALSE(verify_matching_at(literal, standard_coset_rep(CaseKind::Split, 1, p).matrix, p));
    }
  }
}

TEST(EvaluateXi, Examples) {
  FormalCosetSum xi = build_datum(inert(2, p3), p3).xi;
  EXPECT_EQ(evaluate_xi(xi, ProjMat(), p3), 1);
  EXPECT_EQ(evaluate_xi(xi, ProjMat(Mat2::diag(3, 1)), p3), 4);
  EXPECT_EQ(evaluate_xi(xi, ProjMat(Mat2::diag(9, 1)), p3), 0);
  EXPECT_EQ(evaluate_xi(xi, ProjMat(Mat2{3, 1, 0, 1}), p3), 0);
  FormalCosetSum sp = build_datum(split(0), p5).xi;
  EXPECT_EQ(evaluate_xi(sp, ProjMat(Mat2{5, 1, 0, 1}), p5), 0);
}

TEST(EvaluateXi, RightKInvariant) {
  std::mt19937_64 rng(31);
  for (const Prime& p : {p3, p5}) {
    for (const CaseClass& c : cases_up_to(4, p)) {
      FormalCosetSum xi = build_datum(c, p).xi;
      for (const CosetTerm& t : xi.terms) {
        for (int i = 0; i < 10; ++i) {
          ProjMat k(testing::random_unimodular(rng, p));
          EXPECT_EQ(evaluate_xi(xi, t.rep.matrix * k, p), t.coeff);
        }
      }
    }
  }
}

TEST(VerifyMatching, Examples) {
  MatchingDatum in = build_datum(inert(2, p3), p3);
  MatchingCheck a = matching_sides(in, ProjMat(Mat2::diag(3, 1)), p3);
  EXPECT_EQ(a.lhs, 1);
  EXPECT_EQ(a.rhs, 1);
  MatchingCheck b = matching_sides(in, ProjMat(Mat2::diag(9, 1)), p3);
  EXPECT_EQ(b.lhs, 0);
  EXPECT_EQ(b.rhs, 0);
  MatchingDatum sp = build_datum(split(0), p5);
  MatchingCheck c = matching_sides(sp, ProjMat(Mat2{5, 1, 0, 1}), p5);
  EXPECT_EQ(c.lhs, 0);
  EXPECT_EQ(c.rhs, 0);
}

TEST(VerifyMatching, ExhaustiveNearBase) {
  for (const Prime& p : {p3, p5}) {
    auto reps = representatives_within(p, 4);
    for (const CaseClass& c : cases_up_to(4, p)) {
      MatchingDatum md = build_datum(c, p);
      for (const TreeVertex& v : reps) {
        ASSERT_TRUE(verify_matching_at(md, v.matrix(p), p)) << to_string(c.kind) << " " << c.alpha << " "
                                                              << v.label();
      }
    }
  }
}

// The right side recomputed from torus orbits alone, with no stabilizer
// volume formulas.
TEST(VerifyMatching, RightSideAgreesWithOrbitOracle) {
  for (const CaseClass& c : cases_up_to(4, p3)) {
    MatchingDatum md = build_datum(c, p3);
    for (const TreeVertex& v : representatives_within(p3, 2)) {
      ProjMat h = v.matrix(p3);
      EXPECT_EQ(matching_sides(md, h, p3).rhs, testing::matching_rhs_by_orbits(md, h, p3, v.d + 1))
          << to_string(c.kind) << " " << c.alpha << " " << v.label();
    }
  }
}

TEST(VerifyMatching, LeftTorusTranslationInvariant) {
  std::mt19937_64 rng(41);
  for (const CaseClass& c : cases_up_to(4, p3)) {
    MatchingDatum md = build_datum(c, p3);
    auto torus = hx_generators_mod(c, p3, 2);
    auto reps = representatives_within(p3, 3);
    for (int i = 0; i < 50; ++i) {
      ProjMat h = reps[std::uniform_int_distribution<std::size_t>(0, reps.size() - 1)(rng)].matrix(p3);
      const ProjMat& t = torus[std::uniform_int_distribution<std::size_t>(0, torus.size() - 1)(rng)];
      MatchingCheck a = matching_sides(md, h, p3), b = matching_sides(md, t * h, p3);
      EXPECT_TRUE(a.holds());
      EXPECT_TRUE(b.holds());
      EXPECT_EQ(a.lhs, b.lhs);
    }
  }
}

TEST(VerifyMatching, MeasureScaling) {
  MeasureSpec twice{1, 2};
  for (const CaseClass& c : cases_up_to(4, p5)) {
    MatchingDatum base = build_datum(c, p5);
    MatchingDatum scaled = build_datum(c, p5, twice);
    for (std::size_t i = 0; i < base.xi.terms.size(); ++i) {
      EXPECT_EQ(scaled.xi.terms[i].coeff * 2, base.xi.terms[i].coeff);
    }
    for (const TreeVertex& v : representatives_within(p5, 3)) {
      EXPECT_TRUE(verify_matching_at(scaled, v.matrix(p5), p5));
    }
  }
}

TEST(VerifyMatching, AlternativeRepresentatives) {
  std::mt19937_64 rng(43);
  for (const CaseClass& c : cases_up_to(4, p3)) {
    MatchingDatum md = build_datum(c, p3);
    md.xi = translate_representatives(md.xi, hx_generators_mod(c, p3, 2), rng);
    for (const TreeVertex& v : representatives_within(p3, 4)) {
      EXPECT_TRUE(verify_matching_at(md, v.matrix(p3), p3)) << v.label();
    }
  }
}

TEST(Json, FixedLayout) {
  MatchingDatum md = build_datum(inert(2, p3), p3);
  auto j = to_json(md);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"p", "case", "alpha", "epsilon", "normalization", "terms"}));
  EXPECT_EQ(j["case"], "inert");
  EXPECT_EQ(j["epsilon"], "2/1");
  EXPECT_EQ(j["terms"][1]["rep"], nlohmann::ordered_json::parse(R"([["3/1","0/1"],["0/1","1/1"]])"));
  EXPECT_EQ(j["terms"][1]["coeff"], "4/1");
  EXPECT_EQ(j["normalization"]["vol_Hx"], 1);
}

TEST(Json, RoundTrip) {
  for (const Prime& p : {p3, p5}) {
    for (const CaseClass& c : cases_up_to(5, p)) {
      MatchingDatum md = build_datum(c, p, MeasureSpec{1, Rational(3, 2)});
      MatchingDatum back = matching_datum_from_json(nlohmann::json::parse(to_json(md).dump()));
      EXPECT_EQ(back.xi, md.xi);
      EXPECT_EQ(back.case_class, md.case_class);
      EXPECT_EQ(back.x, md.x);
    }
  }
}

TEST(Json, RejectsBadDocuments) {
  auto j = nlohmann::json::parse(to_json(build_datum(inert(2, p3), p3)).dump());
  auto wrong_d = j;
  wrong_d["terms"][1]["d"] = 2;
  EXPECT_THROW(matching_datum_from_json(wrong_d), ParseError);
  auto missing = j;
  missing.erase("terms");
  EXPECT_THROW(matching_datum_from_json(missing), ParseError);
  auto bad_case = j;
  bad_case["alpha"] = 3;
  EXPECT_THROW(matching_datum_from_json(bad_case), InconsistentCase);
}

}  // namespace
}  // namespace theta
