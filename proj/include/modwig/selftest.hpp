#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "modwig/types.hpp"

namespace modwig::selftest {

struct Config {
  Index d = 2;
  Index n = 3;
  int trials = 50;
  std::uint64_t seed = 7;
  double tol = kDefaultTol;
};

struct GroupResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  bool skipped = false;
  double worst = 0.0;  // largest deviation seen across the group's cases
  std::string detail;  // first failure description, empty on pass

  bool pass() const { return failures == 0; }
};

struct Report {
  std::vector<GroupResult> groups;

  bool all_pass() const;
};

/// Runs every property group at the given shape: module axioms, the
/// projection and expansion lemmas, rank-one factor extraction, conjugation
/// isometry recovery, the commutant dimension, the obstruction witness,
/// preservation checking, decompose round trips, and the measure pipeline.
/// Groups requiring d >= 2 report skipped when d = 1; trials = 0 yields
/// vacuous passes with zero counts.
///
/// Throws SizeLimit unless d <= 6, n <= 8, d * n <= 32.
Report run(const Config& config);

/// One line per group: "group=<name> cases=<k> worst=<dev> status=pass|fail".
void print(const Report& report, std::ostream& out);

}  // namespace modwig::selftest
