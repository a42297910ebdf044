// Named property suites over a corpus of periods. Each suite reports whether
// every case held and its worst residual.
#ifndef SUDLER_VERIFY_HPP
#define SUDLER_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sudler/cfrac.hpp"

namespace sudler {

struct VerifyOptions {
  std::uint64_t seed = 20210614;
  int max_ell = 4;             // exhaustive corpus: l <= max_ell ...
  long max_digit = 8;          // ... and digits <= max_digit, up to rotation
  int random_periods = 30;     // extra seeded periods with larger digits
  long random_digit_max = 30;
  double tol = 1e-8;           // limit-function tolerance
  long precision_bits = 128;
  long decomposition_q_max = 10000;
  int workers = 0;
  /// When non-empty, every suite runs on these periods instead of its default corpus.
  std::vector<std::vector<long>> periods;
};

/// Worst residual semantics: equality suites report the largest absolute
/// difference; inequality suites report the largest (lhs - rhs) in the violating
/// direction, so a value <= 0 means every case held with room to spare.
struct SuiteResult {
  std::string name;
  bool pass = true;
  double worst_residual = 0.0;
  std::int64_t cases = 0;
  std::string first_failure;
};

std::vector<std::string> suite_names();

/// Throws std::invalid_argument for an unknown name or an invalid period.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);

/// Runs the named suites (all when `names` is empty), validating periods first.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const VerifyOptions& opts);

/// Exhaustive rotation-free tuples plus the seeded random ones.
std::vector<std::vector<long>> exact_corpus(const VerifyOptions& opts);

}  // namespace sudler

#endif  // SUDLER_VERIFY_HPP
