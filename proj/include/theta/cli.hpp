#pragma once

// Command-line front end. Subcommands:
//
//   xi      print the matching datum for one (p, case, alpha) as JSON
//   verify  exhaustive matching sweep over tree vertices near K
//   table   Markdown table of closed-form and general-recipe coefficients
//   tree    sphere sizes, vertex lists and distance matrices
//   oracle  orbit closures and stabilizer indices as JSON
//   weil    apply an operator word to a Schwartz function read from JSON
//
// Exit status: 0 on success, 1 if a verification fails, 2 on bad input.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "theta/matching.hpp"
#include "theta/quadspace.hpp"

namespace theta::cli {

struct SweepConfig {
  std::vector<long> primes{3, 5};
  std::vector<int> alphas{0, 1, 2, 3, 4};
  std::vector<CaseKind> cases{CaseKind::Inert, CaseKind::Ramified, CaseKind::Split};
  int max_vertex_distance = 4;
  std::string emit = "markdown";
};

/// Throws ParseError on malformed documents, InvalidPrime for bad primes and
/// RadiusTooLarge when max_vertex_distance exceeds 6.
SweepConfig sweep_config_from_json(const nlohmann::json& j);

struct SweepItem {
  long p = 0;
  CaseClass case_class;
  int checks = 0;
  /// One line per failing vertex.
  std::vector<std::string> failures;
};

/// Checks md at every canonical vertex within max_distance of K.
SweepItem verify_datum(const MatchingDatum& md, const Prime& p, int max_distance);

/// Every (p, case, alpha) compatible with the case parity; ramified runs
/// both unit classes 1 and eps. Jobs run on worker threads; results come
/// back in job order.
std::vector<SweepItem> run_sweep(const SweepConfig& config);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace theta::cli
