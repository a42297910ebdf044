// Log-space sine product kernels over a Kronecker orbit: a serial reference
// loop and an OpenMP version with a deterministic chunked reduction.
#ifndef SUDLER_KERNELS_HPP
#define SUDLER_KERNELS_HPP

#include <cstdint>

#include "sudler/orbit.hpp"
#include "sudler/real.hpp"

namespace sudler {

/// sum_{r=first}^{last} log|2 sin pi (r beta + shift)|.
struct LogSum {
  Real sum;
  double abs_sum = 0.0;  // sum of |terms|, sizes the rounding estimate
  std::int64_t n_terms = 0;
};

/// Fixed chunk length of the parallel reduction; partials are combined in
/// chunk order, so the result does not depend on the number of workers.
inline constexpr std::int64_t kChunkSize = 8192;

/// Single pass in index order. precision_bits <= 53 selects binary64.
LogSum log_sine_sum_serial(const KroneckerOrbit& orbit, std::int64_t first, std::int64_t last, const Real& shift,
                           long precision_bits);

/// OpenMP over fixed chunks; workers <= 0 uses the runtime default.
LogSum log_sine_sum_parallel(const KroneckerOrbit& orbit, std::int64_t first, std::int64_t last, const Real& shift,
                             long precision_bits, int workers);

/// Rounding estimate for a log-sum at the given precision.
double log_sum_error(const LogSum& s, long precision_bits);

}  // namespace sudler

#endif  // SUDLER_KERNELS_HPP
