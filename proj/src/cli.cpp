#include "theta/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "theta/bt_tree.hpp"
#include "theta/double_coset.hpp"
#include "theta/errors.hpp"
#include "theta/oracle.hpp"
#include "theta/weil.hpp"

namespace theta::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<int> ramified_units(const Prime& p) { return {1, static_cast<int>(p.nonresidue())}; }

// Default unit for --epsilon: the canonical nonresidue, except for the
// split case whose unit must be a square.
Rational default_unit(CaseKind kind, const Prime& p) {
  return kind == CaseKind::Split ? Rational(1) : Rational(p.nonresidue());
}

std::string matrix_string(const Mat2& m) {
  return "[[" + m.a.get_str() + "," + m.b.get_str() + "],[" + m.c.get_str() + "," + m.d.get_str() + "]]";
}

std::string range_condition(CaseKind kind, int alpha, int d) {
  std::string a = "α = " + std::to_string(alpha);
  switch (kind) {
    case CaseKind::Inert:
    case CaseKind::Split:
      return d == 0 ? a + ": always" : a + ": 1 ≤ d ≤ α/2";
    case CaseKind::Ramified:
      return a + ": 1 ≤ d ≤ (α+1)/2";
  }
  return a;
}

// ------------------------------------------------------------------ output

void emit_sweep(const std::vector<SweepItem>& items, bool as_json, std::ostream& out) {
  long checks = 0;
  long failures = 0;
  for (const SweepItem& it : items) {
    checks += it.checks;
    failures += static_cast<long>(it.failures.size());
  }
  if (as_json) {
    ordered_json j;
    j["results"] = ordered_json::array();
    for (const SweepItem& it : items) {
      ordered_json r;
      r["p"] = it.p;
      r["case"] = to_string(it.case_class.kind);
      r["alpha"] = it.case_class.alpha;
      r["epsilon"] = format_rational(it.case_class.unit);
      r["checks"] = it.checks;
      r["failures"] = it.failures;
      j["results"].push_back(r);
    }
    j["checks"] = checks;
    j["failures"] = failures;
    out << j.dump(2) << "\n";
    return;
  }
  out << "| p | case | α | ε | checks | failures |\n";
  out << "|---|------|---|---|--------|----------|\n";
  for (const SweepItem& it : items) {
    out << "| " << it.p << " | " << to_string(it.case_class.kind) << " | " << it.case_class.alpha << " | "
        << it.case_class.unit.get_str() << " | " << it.checks << " | " << it.failures.size() << " |\n";
  }
  for (const SweepItem& it : items) {
    for (const std::string& f : it.failures) out << "FAIL " << f << "\n";
  }
  out << checks << " checks, " << failures << " failures\n";
}

void emit_table(const std::vector<long>& primes, const std::vector<int>& alphas,
                const std::vector<CaseKind>& cases, std::ostream& out) {
  out << "| p | case | α range condition | d | representative | closed-form coeff | general coeff |\n";
  out << "|---|------|-------------------|---|----------------|-------------------|---------------|\n";
  for (long pv : primes) {
    Prime p(pv);
    for (CaseKind kind : cases) {
      for (int alpha : alphas) {
        if ((alpha % 2 == 1) != (kind == CaseKind::Ramified)) continue;
        CaseClass c{kind, alpha, default_unit(kind, p)};
        FormalCosetSum closed = build_xi_closed_form(c, p);
        FormalCosetSum general = build_datum(c, p).xi;
        for (std::size_t i = 0; i < closed.terms.size(); ++i) {
          const CosetTerm& t = closed.terms[i];
          std::string gen = i < general.terms.size() && general.terms[i].rep.d == t.rep.d
                                ? format_rational(general.terms[i].coeff)
                                : "-";
          out << "| " << pv << " | " << to_string(kind) << " | " << range_condition(kind, alpha, t.rep.d) << " | "
              << t.rep.d << " | " << matrix_string(t.rep.matrix.primitive()) << " | " << format_rational(t.coeff)
              << " | " << gen << " |\n";
        }
      }
    }
  }
}

ordered_json tree_json(const Prime& p, int radius, bool with_matrix) {
  auto ball = oracle::bfs_ball(p, radius);
  ordered_json j;
  j["p"] = p.value();
  j["radius"] = radius;
  std::vector<long> sizes(static_cast<std::size_t>(radius + 1), 0);
  for (const auto& [v, d] : ball) ++sizes[static_cast<std::size_t>(d)];
  j["sphere_sizes"] = sizes;
  j["vertices"] = ordered_json::array();
  for (const auto& [v, d] : ball) j["vertices"].push_back(v.label());
  if (with_matrix) {
    if (ball.size() > 2000) throw GuardExceeded("distance matrix limited to 2000 vertices");
    ordered_json rows = ordered_json::array();
    for (const auto& [v, dv] : ball) {
      std::vector<int> row;
      row.reserve(ball.size());
      for (const auto& [w, dw] : ball) row.push_back(distance(v, w, p));
      rows.push_back(row);
    }
    j["distance_matrix"] = rows;
  }
  return j;
}

ordered_json oracle_json(const CaseClass& c, const Prime& p, int radius, int level) {
  ordered_json j;
  j["p"] = p.value();
  j["case"] = to_string(c.kind);
  j["alpha"] = c.alpha;
  j["epsilon"] = format_rational(c.unit);
  j["level"] = level;
  j["ball_radius"] = radius;
  const auto gens = hx_generators_mod(c, p, level);
  const auto index_gens = c.kind == CaseKind::Split ? hx_cap_k_generators_mod(c, p, level) : gens;
  j["reports"] = ordered_json::array();
  for (int d = c.kind == CaseKind::Ramified ? 1 : 0; d <= radius; ++d) {
    CosetRep rep = standard_coset_rep(c.kind, d, p);
    TreeVertex start = canonicalize(rep.matrix, p);
    oracle::OrbitReport r = oracle::orbit_closure(gens, start, radius, p);
    ordered_json e;
    e["d"] = d;
    e["start"] = start.label();
    e["orbit_size"] = r.orbit.size();
    e["orbit"] = ordered_json::array();
    for (const TreeVertex& v : r.orbit) e["orbit"].push_back(v.label());
    e["generator_count"] = r.generator_count;
    e["closure_rounds"] = r.closure_rounds;
    e["stabilizer_index"] = oracle::stabilizer_index(index_gens, start, p);
    e["expected_index"] = format_rational(Rational(1) / stabilizer_volume(c, rep, p));
    j["reports"].push_back(e);
  }
  return j;
}

// Flags shared by the subcommands that take a single (p, case, alpha).
struct CaseFlags {
  long p = 3;
  std::string kind;
  int alpha = 0;
  std::optional<long> epsilon;

  void add_to(CLI::App* app, bool case_required) {
    app->add_option("--p", p, "odd prime")->required();
    auto* k = app->add_option("--case", kind, "inert, ramified or split")
                  ->check(CLI::IsMember({"inert", "ramified", "split"}));
    auto* a = app->add_option("--alpha", alpha, "valuation of Q(x)")->check(CLI::NonNegativeNumber);
    if (case_required) {
      k->required();
      a->required();
    }
    app->add_option("--epsilon", epsilon, "integer representative of the unit class");
  }

  CaseClass resolve(const Prime& prime) const {
    CaseKind k = parse_case_kind(kind);
    CaseClass c{k, alpha, epsilon ? Rational(*epsilon) : default_unit(k, prime)};
    validate(c, prime);
    return c;
  }
};

}  // namespace

// ------------------------------------------------------------------ library

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig c;
  try {
    if (j.contains("primes")) c.primes = j.at("primes").get<std::vector<long>>();
    if (j.contains("alphas")) c.alphas = j.at("alphas").get<std::vector<int>>();
    if (j.contains("cases")) {
      c.cases.clear();
      for (const auto& k : j.at("cases")) c.cases.push_back(parse_case_kind(k.get<std::string>()));
    }
    if (j.contains("max_vertex_distance")) c.max_vertex_distance = j.at("max_vertex_distance").get<int>();
    if (j.contains("emit")) c.emit = j.at("emit").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("sweep config: ") + e.what());
  }
  for (long p : c.primes) Prime{p};
  for (int a : c.alphas) {
    if (a < 0) throw ParseError("sweep config: negative alpha");
  }
  if (c.max_vertex_distance < 0 || c.max_vertex_distance > oracle::kMaxBallRadius) {
    throw RadiusTooLarge("max_vertex_distance must lie in [0, " + std::to_string(oracle::kMaxBallRadius) + "]");
  }
  if (c.emit != "json" && c.emit != "markdown") throw ParseError("emit must be json or markdown");
  return c;
}

SweepItem verify_datum(const MatchingDatum& md, const Prime& p, int max_distance) {
  SweepItem item{p.value(), md.case_class, 0, {}};
  for (const TreeVertex& v : representatives_within(p, max_distance)) {
    ++item.checks;
    MatchingCheck m = matching_sides(md, v.matrix(p), p);
    if (!m.holds()) {
      item.failures.push_back("p=" + std::to_string(p.value()) + " " + to_string(md.case_class.kind) +
                              " alpha=" + std::to_string(md.case_class.alpha) + " h=" + v.label() +
                              " lhs=" + format_rational(m.lhs) + " rhs=" + format_rational(m.rhs));
    }
  }
  return item;
}

std::vector<SweepItem> run_sweep(const SweepConfig& config) {
  struct Job {
    Prime p;
    CaseClass c;
  };
  std::vector<Job> jobs;
  for (long pv : config.primes) {
    Prime p(pv);
    for (CaseKind kind : config.cases) {
      for (int alpha : config.alphas) {
        if ((alpha % 2 == 1) != (kind == CaseKind::Ramified)) continue;
        if (kind == CaseKind::Ramified) {
          for (int u : ramified_units(p)) jobs.push_back({p, {kind, alpha, u}});
        } else {
          jobs.push_back({p, {kind, alpha, default_unit(kind, p)}});
        }
      }
    }
  }
  std::vector<std::future<SweepItem>> futures;
  futures.reserve(jobs.size());
  for (const Job& job : jobs) {
    futures.push_back(std::async(std::launch::async, [&config, job] {
      return verify_datum(build_datum(job.c, job.p), job.p, config.max_vertex_distance);
    }));
  }
  std::vector<SweepItem> items;
  items.reserve(futures.size());
  for (auto& f : futures) items.push_back(f.get());
  return items;
}

// ------------------------------------------------------------------ run

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local theta-correspondence matching functions for PGL_2(Q_p)", "thetamatch"};
  app.require_subcommand(1);

  CaseFlags xi_flags;
  std::string xi_vol_hx = "1";
  auto* xi = app.add_subcommand("xi", "print the matching datum as JSON");
  xi_flags.add_to(xi, true);
  xi->add_option("--vol-hx", xi_vol_hx, "vol(H_x), or vol(H_x cap K) for split");
  xi->add_flag("--json", "JSON output (the default for this command)");

  CaseFlags verify_flags;
  std::string verify_config;
  std::string verify_file;
  int verify_distance = 4;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "exhaustive matching sweep");
  verify->add_option("--p", verify_flags.p, "odd prime");
  verify->add_option("--case", verify_flags.kind)->check(CLI::IsMember({"inert", "ramified", "split"}));
  verify->add_option("--alpha", verify_flags.alpha)->check(CLI::NonNegativeNumber);
  verify->add_option("--epsilon", verify_flags.epsilon);
  verify->add_option("--max-distance", verify_distance)->check(CLI::Range(0, oracle::kMaxBallRadius));
  verify->add_option("--config", verify_config, "SweepConfig JSON file");
  verify->add_option("--from-file", verify_file, "MatchingDatum JSON written by xi");
  verify->add_flag("--json", verify_json);

  std::string table_config;
  std::vector<long> table_primes;
  int table_alpha = 4;
  auto* table = app.add_subcommand("table", "closed-form versus general coefficients");
  table->add_option("--p", table_primes, "odd primes");
  table->add_option("--alpha", table_alpha, "largest alpha")->check(CLI::NonNegativeNumber);
  table->add_option("--config", table_config, "SweepConfig JSON file");

  long tree_p = 3;
  std::optional<int> tree_sphere;
  int tree_distance = 2;
  bool tree_json_flag = false;
  bool tree_no_matrix = false;
  auto* tree = app.add_subcommand("tree", "Bruhat-Tits tree balls and spheres");
  tree->add_option("--p", tree_p, "prime (2 allowed)")->required();
  tree->add_option("--sphere", tree_sphere, "report the sphere of this radius");
  tree->add_option("--max-distance", tree_distance, "ball radius");
  tree->add_flag("--json", tree_json_flag);
  tree->add_flag("--no-matrix", tree_no_matrix, "omit the distance matrix");

  CaseFlags oracle_flags;
  int oracle_distance = 2;
  std::optional<int> oracle_level;
  auto* orc = app.add_subcommand("oracle", "orbit closures and stabilizer indices");
  oracle_flags.add_to(orc, true);
  orc->add_option("--max-distance", oracle_distance, "ball radius")->check(CLI::Range(0, oracle::kMaxBallRadius));
  orc->add_option("--level", oracle_level, "torus elements a + b x0 with 0 <= a, b <= p^level");
  orc->add_flag("--json", "JSON output (the default for this command)");

  std::string weil_file;
  auto* weil_cmd = app.add_subcommand("weil", "apply an operator word to a Schwartz function");
  weil_cmd->add_option("--from-file", weil_file, "{\"function\": ..., \"word\": [...]}")->required();
  weil_cmd->add_flag("--json", "JSON output (the default for this command)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*xi) {
      Prime p(xi_flags.p);
      MeasureSpec measure{1, parse_rational(xi_vol_hx)};
      if (measure.vol_Hx <= 0) throw ParseError("--vol-hx must be positive");
      MatchingDatum md = build_datum(xi_flags.resolve(p), p, measure);
      out << to_json(md).dump(2) << "\n";
      return 0;
    }
    if (*verify) {
      std::vector<SweepItem> items;
      bool as_json = verify_json;
      if (!verify_file.empty()) {
        MatchingDatum md = matching_datum_from_json(read_json_file(verify_file));
        items.push_back(verify_datum(md, md.xi.p, verify_distance));
      } else if (!verify_config.empty()) {
        SweepConfig config = sweep_config_from_json(read_json_file(verify_config));
        as_json = as_json || config.emit == "json";
        items = run_sweep(config);
      } else if (!verify_flags.kind.empty()) {
        Prime p(verify_flags.p);
        items.push_back(verify_datum(build_datum(verify_flags.resolve(p), p), p, verify_distance));
      } else {
        SweepConfig config;
        config.max_vertex_distance = verify_distance;
        items = run_sweep(config);
      }
      emit_sweep(items, as_json, out);
      bool ok = std::all_of(items.begin(), items.end(), [](const SweepItem& it) { return it.failures.empty(); });
      return ok ? 0 : 1;
    }
    if (*table) {
      SweepConfig config;
      if (!table_config.empty()) config = sweep_config_from_json(read_json_file(table_config));
      if (!table_primes.empty()) config.primes = table_primes;
      if (table->count("--alpha") > 0 || table_config.empty()) {
        config.alphas.clear();
        for (int a = 0; a <= table_alpha; ++a) config.alphas.push_back(a);
      }
      emit_table(config.primes, config.alphas, config.cases, out);
      return 0;
    }
    if (*tree) {
      Prime p = Prime::including_two(tree_p);
      if (tree_sphere) {
        auto ball = oracle::bfs_ball(p, *tree_sphere);
        std::vector<std::string> labels;
        for (const auto& [v, d] : ball) {
          if (d == *tree_sphere) labels.push_back(v.label());
        }
        if (tree_json_flag) {
          ordered_json j;
          j["p"] = tree_p;
          j["sphere"] = *tree_sphere;
          j["count"] = labels.size();
          j["vertices"] = labels;
          out << j.dump(2) << "\n";
        } else {
          out << "sphere " << *tree_sphere << " at p = " << tree_p << ": " << labels.size() << " vertices\n";
        }
        return 0;
      }
      out << tree_json(p, tree_distance, !tree_no_matrix).dump(2) << "\n";
      return 0;
    }
    if (*orc) {
      Prime p(oracle_flags.p);
      CaseClass c = oracle_flags.resolve(p);
      out << oracle_json(c, p, oracle_distance, oracle_level.value_or(oracle_distance + 1)).dump(2) << "\n";
      return 0;
    }
    if (*weil_cmd) {
      json doc = read_json_file(weil_file);
      try {
        const json& fj = doc.at("function");
        Prime p(fj.at("p").get<long>());
        weil::SchwartzSum f = weil::schwartz_sum_from_json(fj);
        std::vector<weil::WeilOp> word = weil::word_from_json(doc.at("word"));
        out << weil::to_json(weil::apply_word(word, f, p), p).dump(2) << "\n";
      } catch (const json::exception& e) {
        throw ParseError(e.what());
      }
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace theta::cli
