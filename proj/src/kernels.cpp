#include "sudler/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <vector>

namespace sudler {

namespace {

// Neumaier compensated accumulator in binary64.
struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Neumaier accumulator on MPFR values; all temporaries live for the whole range.
class MpfrAccumulator {
 public:
  explicit MpfrAccumulator(mpfr_prec_t prec) {
    mpfr_inits2(prec, sum_, comp_, t_, d_, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(sum_, 1);
    mpfr_set_zero(comp_, 1);
  }
  ~MpfrAccumulator() { mpfr_clears(sum_, comp_, t_, d_, static_cast<mpfr_ptr>(nullptr)); }
  MpfrAccumulator(const MpfrAccumulator&) = delete;
  MpfrAccumulator& operator=(const MpfrAccumulator&) = delete;

  void add(mpfr_srcptr x) {
    mpfr_add(t_, sum_, x, MPFR_RNDN);
    if (mpfr_cmpabs(sum_, x) >= 0) {
      mpfr_sub(d_, sum_, t_, MPFR_RNDN);
      mpfr_add(d_, d_, x, MPFR_RNDN);
    } else {
      mpfr_sub(d_, x, t_, MPFR_RNDN);
      mpfr_add(d_, d_, sum_, MPFR_RNDN);
    }
    mpfr_add(comp_, comp_, d_, MPFR_RNDN);
    mpfr_swap(sum_, t_);
  }
  void value(mpfr_ptr out) const { mpfr_add(out, sum_, comp_, MPFR_RNDN); }

 private:
  mpfr_t sum_, comp_, t_, d_;
};

[[noreturn]] void zero_factor(std::int64_t r) {
  throw std::domain_error("sine factor vanishes at r=" + std::to_string(r) + "; rotation is not irrational");
}

LogSum chunk_double(const KroneckerOrbit& orbit, std::int64_t lo, std::int64_t hi, const Real& shift) {
  Neumaier acc;
  double abs_sum = 0.0;
  const double sh = shift.to_double();
  for (std::int64_t r = lo; r <= hi; ++r) {
    double z = orbit.offset(r) + sh;
    z -= std::nearbyint(z);
    if (z == 0.0) zero_factor(r);
    const double term = std::log(2.0 * std::fabs(std::sin(M_PI * z)));
    acc.add(term);
    abs_sum += std::fabs(term);
  }
  LogSum out{Real(acc.value(), 53), abs_sum, hi - lo + 1};
  return out;
}

LogSum chunk_mpfr(const KroneckerOrbit& orbit, std::int64_t lo, std::int64_t hi, const Real& shift, long prec) {
  const auto p = static_cast<mpfr_prec_t>(prec + 16);
  mpfr_t sqrt_d, z, tmp, pi, sh;
  mpfr_inits2(p, sqrt_d, z, tmp, pi, sh, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(sqrt_d, orbit.D(), MPFR_RNDN);
  mpfr_sqrt(sqrt_d, sqrt_d, MPFR_RNDN);
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_set(sh, shift.get(), MPFR_RNDN);
  const bool shifted = !shift.is_zero();
  MpfrAccumulator acc(p);
  double abs_sum = 0.0;
  for (std::int64_t r = lo; r <= hi; ++r) {
    orbit.offset(r, z, sqrt_d, tmp);
    if (shifted) {
      mpfr_add(z, z, sh, MPFR_RNDN);
      mpfr_round(tmp, z);
      mpfr_sub(z, z, tmp, MPFR_RNDN);
    }
    if (mpfr_zero_p(z)) zero_factor(r);
    mpfr_mul(z, z, pi, MPFR_RNDN);
    mpfr_sin(z, z, MPFR_RNDN);
    mpfr_abs(z, z, MPFR_RNDN);
    mpfr_mul_2ui(z, z, 1, MPFR_RNDN);
    mpfr_log(z, z, MPFR_RNDN);
    acc.add(z);
    abs_sum += std::fabs(mpfr_get_d(z, MPFR_RNDN));
  }
  LogSum out{Real(static_cast<long>(p)), abs_sum, hi - lo + 1};
  acc.value(out.sum.get());
  mpfr_clears(sqrt_d, z, tmp, pi, sh, static_cast<mpfr_ptr>(nullptr));
  return out;
}

LogSum chunk(const KroneckerOrbit& orbit, std::int64_t lo, std::int64_t hi, const Real& shift, long prec) {
  if (prec <= 53) return chunk_double(orbit, lo, hi, shift);
  return chunk_mpfr(orbit, lo, hi, shift, prec);
}

void check_range(std::int64_t first, std::int64_t last) {
  if (first < 1) throw std::invalid_argument("log-sum range must start at r >= 1");
  if (last < first - 1) throw std::invalid_argument("log-sum range is reversed");
}

LogSum empty_sum(long prec) { return LogSum{Real(0L, prec <= 53 ? 53 : prec + 16), 0.0, 0}; }

}  // namespace

LogSum log_sine_sum_serial(const KroneckerOrbit& orbit, std::int64_t first, std::int64_t last, const Real& shift,
                           long precision_bits) {
  check_range(first, last);
  if (last < first) return empty_sum(precision_bits);
  return chunk(orbit, first, last, shift, precision_bits);
}

LogSum log_sine_sum_parallel(const KroneckerOrbit& orbit, std::int64_t first, std::int64_t last, const Real& shift,
                             long precision_bits, int workers) {
  check_range(first, last);
  if (last < first) return empty_sum(precision_bits);
  const std::int64_t n = last - first + 1;
  const std::int64_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<LogSum> partial(static_cast<size_t>(chunks), empty_sum(precision_bits));
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t lo = first + c * kChunkSize;
    const std::int64_t hi = std::min(last, lo + kChunkSize - 1);
    try {
      partial[static_cast<size_t>(c)] = chunk(orbit, lo, hi, shift, precision_bits);
    } catch (...) {
#pragma omp critical(sudler_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  // Ordered reduction over chunk partials.
  LogSum out = empty_sum(precision_bits);
  if (precision_bits <= 53) {
    Neumaier acc;
    for (const LogSum& s : partial) {
      acc.add(s.sum.to_double());
      out.abs_sum += s.abs_sum;
      out.n_terms += s.n_terms;
    }
    out.sum = Real(acc.value(), 53);
    return out;
  }
  MpfrAccumulator acc(static_cast<mpfr_prec_t>(precision_bits + 16));
  for (const LogSum& s : partial) {
    acc.add(s.sum.get());
    out.abs_sum += s.abs_sum;
    out.n_terms += s.n_terms;
  }
  acc.value(out.sum.get());
  return out;
}

double log_sum_error(const LogSum& s, long precision_bits) {
  const int bits = precision_bits <= 53 ? 53 : static_cast<int>(precision_bits + 16);
  // A few ulps per term relative to its own size, plus one ulp of 1 per term
  // from the argument reduction.
  return std::ldexp(4.0 * (s.abs_sum + static_cast<double>(s.n_terms)), -bits + 1);
}

}  // namespace sudler
