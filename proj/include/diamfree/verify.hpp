#pragma once

#include <string>
#include <vector>

#include "diamfree/solver.hpp"

namespace diamfree::verify {

struct Check {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
  bool timed_out = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;

  bool all_pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
  bool any_timeout() const {
    for (const Check& c : checks)
      if (c.timed_out) return true;
    return false;
  }
  std::size_t failed() const {
    std::size_t n = 0;
    for (const Check& c : checks) n += c.pass ? 0 : 1;
    return n;
  }
};

/// Closed-form cross-checks on every solved signature with n <= max_n,
/// the structured-family size/independence checks, the two exceptional
/// 11-point families, and the complete 11-point classification.
SuiteResult props_suite(const SolveOptions& opts, int max_n = 6);

/// Independence numbers, maximum-set classification (k <= 3), the three
/// reconstructed case matchings, and the zero-column averaging property on
/// enumerated maximum sets (k = 4, 5). k = 6 only runs when slow is set.
SuiteResult main_theorem_suite(int kmin, int kmax, bool slow, const SolveOptions& opts);

/// The four-distance application: pools, isometry, bounds, tail capacities
/// and the three 258-point extremal sets.
SuiteResult johnson_suite(const SolveOptions& opts);

/// Recursive constructions, the general size formula and the general
/// averaging inequality.
SuiteResult section4_suite(const SolveOptions& opts);

}  // namespace diamfree::verify
