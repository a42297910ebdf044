// Analytic bounds on G(x) and C_k, the auxiliary inequalities they rest on,
// and the digit-space scan that classifies C_k < 1.
#ifndef SUDLER_BOUNDS_HPP
#define SUDLER_BOUNDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sudler/cfrac.hpp"
#include "sudler/limitfn.hpp"

namespace sudler {

/// 13.7/a + 1/(20 log a) + 1/100 + 2/a^2; throws std::invalid_argument for a <= 1.
double f_of(long a_k);
/// 3.3/a + 1/(80 log a) + 1/400 + 2/a^2; throws std::invalid_argument for a <= 1.
double g_of(long a_k);

enum class Branch { small_x, m_equals_1, large_x };
std::string to_string(Branch b);

struct SandwichResult {
  double x = 0.0;
  std::int64_t m_of_x = 0;
  double dist_to_U = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double g_value = 0.0;  // |G(x)|
  double g_error = 0.0;  // error estimate of g_value
  Branch branch = Branch::small_x;

  bool contained() const { return lower <= g_value + g_error && g_value - g_error <= upper; }
};

/// Bounds on |G(x)| for the maximal-digit index k of `spec`, next to the
/// evaluated |G(x)|. Throws std::invalid_argument when a_k is not the maximal
/// digit or a_k < 2.
SandwichResult sandwich(const SpectralData& spec, double x, const LimitOptions& opts = {});

/// Which of the three C_k bounds applies.
enum class BoundKind { even, even_q1, odd };
BoundKind bound_kind(const SpectralData& spec);

/// Upper bound on C_k. Needs a_k = max digit >= 6 (std::invalid_argument).
double ck_upper(const SpectralData& spec);

/// The bounds above with c and q_l eliminated in terms of a_k alone.
double reduced_bound_odd(long a_k);
double reduced_bound_even(long a_k);
double reduced_bound_q1(long a_k);

/// Slack of an inequality: positive when it holds.
struct Check {
  double slack = 0.0;
  bool pass = true;
};

/// Lower bound on prod_{t<q_l} ||R_t|| (even l) or ||R_t + b|| (odd l),
/// the product computed exactly in the field and compared at `precision_bits`.
Check rt_product_check(const SpectralData& spec, long precision_bits = 128);

/// For even l: i/q_l - 1/q_{l+1} <= R_t <= i/q_l - a_k/((a_k+1) q_l q_{l+1}) for a
/// one-to-one t -> i. All comparisons exact. Returns the number of violations.
std::int64_t rt_bracket_violations(const SpectralData& spec);

/// |sum_{t=n+1}^{n+N} delta_t| against min{N, log N (a/(4 log a) + 12) + a/4 + 23/2}
/// with a the maximal digit; the sum is exact.
Check discrepancy_check(const SpectralData& spec, std::int64_t n, std::int64_t N);

/// a_k < 1/|c_k e_k| < a_k + 2 and the closed formula for 1/|c_k e_k|, exactly.
bool ckek_bracket_holds(const SpectralData& spec);
bool ckek_formula_holds(const SpectralData& spec);

enum class Verdict { certified_lt_1, lt_1_numeric, ge_1_numeric };
std::string to_string(Verdict v);

struct ScanRecord {
  std::vector<long> digits;
  int k_max = 1;
  std::string q_ell;
  std::vector<double> C_k;  // k = 1..l
  double upper_bound = 0.0; // NaN unless the bound applies
  Verdict verdict = Verdict::ge_1_numeric;
  bool inconclusive = false;
};

/// Verdict on one C value with its upper bound (NaN when unavailable).
Verdict classify(double C, double upper_bound, double tol, bool& inconclusive);

/// All tuples in {1..digit_max}^l up to cyclic rotation, lexicographic order.
std::vector<std::vector<long>> scan_tuples(int ell, long digit_max);

ScanRecord scan_one(const std::vector<long>& digits, double tol);

/// Scans every tuple; records come back in lexicographic order whatever the
/// worker count.
std::vector<ScanRecord> scan(int ell, long digit_max, double tol, int workers = 0);

}  // namespace sudler

#endif  // SUDLER_BOUNDS_HPP
