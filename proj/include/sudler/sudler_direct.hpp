// Brute-force Sudler products P_N(alpha), the perturbed products at
// convergent denominators, and their three-factor decomposition.
#ifndef SUDLER_SUDLER_DIRECT_HPP
#define SUDLER_SUDLER_DIRECT_HPP

#include <cstdint>
#include <vector>

#include "sudler/cfrac.hpp"
#include "sudler/real.hpp"

namespace sudler {

struct ProductValue {
  Real log_value;
  Real value;
  std::int64_t n_terms = 0;
  double est_error = 0.0;  // bound on accumulated rounding in log_value
};

/// Execution controls shared by the direct evaluators.
struct KernelOptions {
  long precision_bits = kDefaultPrecisionBits;
  int workers = 0;        // <= 0: OpenMP default
  bool parallel = true;   // false selects the serial reference loop
};

/// prod_{r=1}^N |2 sin(pi r alpha)|.
ProductValue sudler(const PeriodSpec& period, std::int64_t N, const KernelOptions& opts = {});

/// prod_{r=1}^{q_n} |2 sin(pi (r alpha + (-1)^{n+1} eps / q_n))|.
ProductValue perturbed(const PeriodSpec& period, long n, double eps, const KernelOptions& opts = {});

struct Decomposition {
  Real A_n;
  Real B_n;
  Real C_n;
  Real s0;                     // s_n(0, eps)
  std::vector<double> s_samples;  // s_n(t) for the first few t
  Real product() const { return A_n * B_n * C_n; }
};

/// A_n, B_n, C_n evaluated independently of perturbed().
Decomposition decompose(const PeriodSpec& period, long n, double eps, long precision_bits = kDefaultPrecisionBits);

/// q_n for the period, exactly.
BigInt denominator(const PeriodSpec& period, long n);

/// Largest m >= 1 with q_{m l + k} <= q_max, or 0 when none qualifies.
long largest_m(const PeriodSpec& period, const BigInt& q_max);

}  // namespace sudler

#endif  // SUDLER_SUDLER_DIRECT_HPP
