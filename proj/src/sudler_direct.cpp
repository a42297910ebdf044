#include "sudler/sudler_direct.hpp"

#include <stdexcept>

#include "sudler/kernels.hpp"
#include "sudler/orbit.hpp"

namespace sudler {

namespace {

std::int64_t to_index(const BigInt& q) {
  if (!q.fits_slong_p()) throw std::overflow_error("q_n too large for direct evaluation");
  return q.get_si();
}

ProductValue finish(LogSum s, long precision_bits) {
  ProductValue out;
  out.est_error = log_sum_error(s, precision_bits);
  out.n_terms = s.n_terms;
  out.log_value = s.sum;
  out.value = exp(s.sum);
  return out;
}

LogSum run(const KroneckerOrbit& orbit, std::int64_t N, const Real& shift, const KernelOptions& opts) {
  if (opts.parallel) return log_sine_sum_parallel(orbit, 1, N, shift, opts.precision_bits, opts.workers);
  return log_sine_sum_serial(orbit, 1, N, shift, opts.precision_bits);
}

}  // namespace

BigInt denominator(const PeriodSpec& period, long n) {
  if (n < 0) throw std::invalid_argument("convergent index must be >= 0");
  if (n < 2) return n == 1 ? 1 : 0;
  return convergents(period, n).q[static_cast<size_t>(n)];
}

long largest_m(const PeriodSpec& period, const BigInt& q_max) {
  long m = 0;
  while (denominator(period, (m + 1) * period.ell() + period.k) <= q_max) ++m;
  return m;
}

ProductValue sudler(const PeriodSpec& period, std::int64_t N, const KernelOptions& opts) {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  period.validate();
  const KroneckerOrbit orbit(fixed_point(period.digits));
  return finish(run(orbit, N, Real(0L, 53), opts), opts.precision_bits);
}

ProductValue perturbed(const PeriodSpec& period, long n, double eps, const KernelOptions& opts) {
  if (n < 2) throw std::invalid_argument("perturbed product needs n >= 2");
  period.validate();
  const BigInt q = denominator(period, n);
  const long work = opts.precision_bits + 16;
  Real shift(eps, work);
  shift /= Real(q, work);
  if (n % 2 == 0) shift = -shift;  // (-1)^{n+1}
  const KroneckerOrbit orbit(fixed_point(period.digits));
  return finish(run(orbit, to_index(q), shift, opts), opts.precision_bits);
}

Decomposition decompose(const PeriodSpec& period, long n, double eps, long precision_bits) {
  if (n < 2) throw std::invalid_argument("decomposition needs n >= 2");
  period.validate();
  const long work = precision_bits + 32;
  const Convergents t = convergents(period, n);
  const BigInt& qn = t.q[static_cast<size_t>(n)];
  const BigInt& qprev = t.q[static_cast<size_t>(n - 1)];
  const QuadExt alpha = fixed_point(period.digits);
  const QuadExt lambda = alpha * qn - t.p[static_cast<size_t>(n)];
  const Real lam = lambda.to_real(work);
  const Real abs_lam = abs(lam);
  Real shift(eps, work);
  shift /= Real(qn, work);
  if (n % 2 == 0) shift = -shift;

  Decomposition out;
  const Real q_real(qn, work);
  out.A_n = abs(sin_pi(lam + shift)) * q_real * Real(2L, work);
  Real half_lam = lam;
  half_lam /= 2L;
  out.s0 = sin_pi(half_lam + shift) * Real(2L, work);

  const std::int64_t q = to_index(qn);
  const std::int64_t qp = to_index(qprev);
  const Real s0_sq = out.s0 * out.s0;
  Real log_b(0L, work);
  Real log_c(0L, work);
  const Real one(1L, work);
  for (std::int64_t i = 1; i < q; ++i) {
    // {i q_{n-1} / q_n} - 1/2 as an exact rational, then the sine argument.
    const std::int64_t rem = static_cast<std::int64_t>((static_cast<__int128>(i) * qp) % q);
    Real frac(static_cast<long>(2 * rem - q), work);
    frac /= Real(static_cast<long>(2 * q), work);
    Real arg(static_cast<long>(i), work);
    arg /= q_real;
    arg -= abs_lam * frac;
    const Real s = sin_pi(arg) * Real(2L, work);
    if (s.is_zero()) throw std::domain_error("s_n(t) vanishes at t=" + std::to_string(i));
    if (out.s_samples.size() < 8) out.s_samples.push_back(s.to_double());
    log_b += log(abs(s));
    log_c += log(abs(one - s0_sq / (s * s)));
  }
  log_b -= log(q_real);
  log_c /= 2L;
  out.B_n = exp(log_b);
  out.C_n = exp(log_c);
  for (Real* r : {&out.A_n, &out.B_n, &out.C_n, &out.s0}) r->set_precision(precision_bits);
  return out;
}

}  // namespace sudler
