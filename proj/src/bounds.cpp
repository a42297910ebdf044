#include "sudler/bounds.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "sudler/orbit.hpp"
#include "sudler/real.hpp"

namespace sudler {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_log_defined(long a_k) {
  if (a_k <= 1) throw std::invalid_argument("f and g need a_k >= 2, got " + std::to_string(a_k));
}

void require_maximal(const SpectralData& spec) {
  if (spec.a_k != spec.period.max_digit())
    throw std::invalid_argument("k=" + std::to_string(spec.period.k) + " is not the index of a maximal digit of " +
                                spec.period.to_string());
}

}  // namespace

double f_of(long a_k) {
  require_log_defined(a_k);
  const double a = static_cast<double>(a_k);
  return 13.7 / a + 1.0 / (20.0 * std::log(a)) + 0.01 + 2.0 / (a * a);
}

double g_of(long a_k) {
  require_log_defined(a_k);
  const double a = static_cast<double>(a_k);
  return 3.3 / a + 1.0 / (80.0 * std::log(a)) + 0.0025 + 2.0 / (a * a);
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::small_x:
      return "small_x";
    case Branch::m_equals_1:
      return "m_equals_1";
    case Branch::large_x:
      return "large_x";
  }
  return "?";
}

SandwichResult sandwich(const SpectralData& spec, double x, const LimitOptions& opts) {
  require_maximal(spec);
  require_log_defined(spec.a_k);
  const double A = spec.A.to_double();
  const double ax = std::fabs(x);
  SandwichResult out;
  out.x = x;
  out.m_of_x = std::max<std::int64_t>(1, std::llround(ax / A));

  // u_k(t) = A t + delta_t with |delta_t| < 1, so the nearest zero sits next to t = m.
  double dist = std::numeric_limits<double>::infinity();
  for (std::int64_t t = std::max<std::int64_t>(1, out.m_of_x - 2); t <= out.m_of_x + 2; ++t)
    dist = std::min(dist, std::fabs(ax - u_of_t(spec, t).to_double()));
  out.dist_to_U = dist;

  const double Am = A * static_cast<double>(out.m_of_x);
  if (2.0 * ax < A) {
    out.branch = Branch::small_x;
    out.lower = 2.0 / M_PI * std::exp(-g_of(spec.a_k));
    out.upper = 1.0;
  } else {
    out.branch = out.m_of_x == 1 ? Branch::m_equals_1 : Branch::large_x;
    const double h = out.branch == Branch::m_equals_1 ? g_of(spec.a_k) : f_of(spec.a_k);
    out.lower = 2.0 / M_PI * std::exp(-h) * (1.0 - 2.0 / (3.0 * Am)) * std::pow(1.0 - 1.0 / Am, 2) * dist / ax;
    out.upper = 14.0 * A / 9.0 * std::exp(h) / ax;
  }
  const TruncatedProduct g = g_of_x(spec, x, opts);
  out.g_value = g.value;
  out.g_error = g.error_estimate;
  return out;
}

BoundKind bound_kind(const SpectralData& spec) {
  if (!spec.even()) return BoundKind::odd;
  return spec.q_ell_sigma == 1 ? BoundKind::even_q1 : BoundKind::even;
}

double ck_upper(const SpectralData& spec) {
  require_maximal(spec);
  if (spec.a_k < 6) throw std::invalid_argument("C_k bounds need a_k = max digit >= 6");
  const double a = static_cast<double>(spec.a_k);
  const double c = spec.c.get_d();
  const double q = spec.q_ell_sigma.get_d();
  double L = 0.0;
  switch (bound_kind(spec)) {
    case BoundKind::odd:
      L = std::log(M_PI / (2.0 * a)) + 1.0 + f_of(spec.a_k) + (std::log(40.0) + 1.5 * std::log(c)) / c +
          std::log(2.0) / q + 2.5 * std::log(a) / a;
      return std::exp(L);
    case BoundKind::even:
      L = std::log(M_PI / (2.0 * a)) + 1.0 + f_of(spec.a_k) + (std::log(200.0) + 2.4 + 2.0 * std::log(c)) / c +
          std::log(2.0) / q + (2.5 * std::log(a) - 1.0) / a;
      break;
    case BoundKind::even_q1:
      L = std::log(M_PI / a) + 1.0 + g_of(spec.a_k) + (std::log(6.2) + 4.0 * std::log(a + 2.0)) / (a + 2.0);
      break;
  }
  // The even-l statements bound C_k^{(c-2)/c}.
  return std::exp(L * c / (c - 2.0));
}

double reduced_bound_odd(long a_k) {
  const double a = static_cast<double>(a_k);
  return M_PI / (std::sqrt(2.0) * a) * std::exp(1.0 + f_of(a_k)) *
         std::exp((std::log(160.0) + 6.5 * std::log(a)) / (2.0 * a));
}

double reduced_bound_even(long a_k) {
  const double a = static_cast<double>(a_k);
  return M_PI / (std::sqrt(2.0) * a) * std::exp(1.0 + f_of(a_k)) *
         std::exp((std::log(200.0) + 2.4 + 7.0 * std::log(a)) / (2.0 * a));
}

double reduced_bound_q1(long a_k) {
  const double a = static_cast<double>(a_k);
  return M_PI / a * std::exp(1.0 + g_of(a_k)) * std::exp((std::log(6.2) + 4.0 * std::log(a + 2.0)) / (a + 2.0));
}

Check rt_product_check(const SpectralData& spec, long precision_bits) {
  if (!spec.q_ell().fits_slong_p()) throw std::overflow_error("q_l too large for the R_t product");
  const long q = spec.q_ell().get_si();
  Real log_prod(0L, precision_bits);
  for (long t = 1; t < q; ++t) {
    const RValue r = r_of_t(spec, t);
    const QuadExt& d = spec.even() ? r.dist : r.dist_plus;
    if (d.sign() == 0) return {-std::numeric_limits<double>::infinity(), false};
    log_prod += log(d.to_real(precision_bits));
  }
  const double qd = static_cast<double>(q);
  const double log_two_e = std::log(2.0) + 1.0;
  const double log_bound = spec.even() ? 0.5 * std::log(qd) - std::log(2.0) - (qd + 1.0) * log_two_e
                                       : std::log(4.0 * M_PI) - 3.0 - qd * log_two_e;
  const double slack = log_prod.to_double() - log_bound;
  return {slack, slack >= 0.0};
}

std::int64_t rt_bracket_violations(const SpectralData& spec) {
  if (!spec.even()) throw std::invalid_argument("the R_t bracket is stated for even l");
  const BigInt& q = spec.q_ell_sigma;
  const BigInt& q1 = spec.q_ell1_sigma;
  const long qi = q.get_si();
  const BigInt& D = spec.alpha.D();
  const QuadExt inner_gap = QuadExt::rational(BigInt(spec.a_k), BigInt(spec.a_k + 1) * q * q1, D);
  const QuadExt outer_gap = QuadExt::rational(BigInt(1), q1, D);
  std::vector<char> seen(static_cast<size_t>(qi), 0);
  std::int64_t bad = 0;
  for (long t = 1; t < qi; ++t) {
    const BigInt i = (BigInt(t) * spec.p_ell_tau) % q;
    const QuadExt base = QuadExt::rational(i, q, D);
    const QuadExt R = r_of_t(spec, t).R;
    if (i == 0 || R < base - outer_gap || R > base - inner_gap) ++bad;
    char& s = seen[static_cast<size_t>(i.get_si())];
    if (s) ++bad;
    s = 1;
  }
  return bad;
}

Check discrepancy_check(const SpectralData& spec, std::int64_t n, std::int64_t N) {
  if (n < 0 || N < 1) throw std::invalid_argument("discrepancy window needs n >= 0, N >= 1");
  const KroneckerOrbit orbit(spec.alpha_sigma_k);
  BigInt floors = 0;
  for (std::int64_t t = n + 1; t <= n + N; ++t) floors += static_cast<long>(orbit.floor_at(t));
  // sum t over the window, then sum delta_t = N - 2 (alpha sum t - sum floor(t alpha)).
  const BigInt sum_t = BigInt(static_cast<long>(N)) * (2 * BigInt(static_cast<long>(n)) + N + 1) / 2;
  const QuadExt total = (spec.alpha_sigma_k * sum_t - floors) * -2L + BigInt(static_cast<long>(N));
  const double lhs = abs(total).to_double();
  double rhs = static_cast<double>(N);
  const long a = spec.period.max_digit();
  if (a >= 2) {
    const double ad = static_cast<double>(a);
    rhs = std::min(rhs, std::log(static_cast<double>(N)) * (ad / (4.0 * std::log(ad)) + 12.0) + ad / 4.0 + 11.5);
  }
  return {rhs - lhs, lhs <= rhs};
}

bool ckek_bracket_holds(const SpectralData& spec) {
  return (spec.inv_ckek - spec.a_k).sign() > 0 && (spec.inv_ckek - (spec.a_k + 2)).sign() < 0;
}

bool ckek_formula_holds(const SpectralData& spec) {
  const BigInt& D = spec.alpha.D();
  const QuadExt rhs = QuadExt::integer(BigInt(spec.a_k), D) + QuadExt::rational(spec.p_ell_sigma, spec.q_ell_sigma, D) +
                      QuadExt::rational(spec.p_ell_tau, spec.q_ell_tau, D) - spec.b * 2L / spec.q_ell_tau;
  return rhs == spec.inv_ckek;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_lt_1:
      return "certified_lt_1";
    case Verdict::lt_1_numeric:
      return "lt_1_numeric";
    case Verdict::ge_1_numeric:
      return "ge_1_numeric";
  }
  return "?";
}

Verdict classify(double C, double upper_bound, double tol, bool& inconclusive) {
  inconclusive = false;
  if (std::isfinite(upper_bound) && upper_bound < 1.0) return Verdict::certified_lt_1;
  if (C + 10.0 * tol < 1.0) return Verdict::lt_1_numeric;
  inconclusive = std::fabs(C - 1.0) < 10.0 * tol;
  return Verdict::ge_1_numeric;
}

std::vector<std::vector<long>> scan_tuples(int ell, long digit_max) {
  if (ell < 1) throw std::invalid_argument("scan needs l >= 1");
  if (digit_max < 1) throw std::invalid_argument("scan needs a digit cap >= 1");
  std::vector<std::vector<long>> out;
  std::vector<long> d(static_cast<size_t>(ell), 1);
  // Odometer in lexicographic order; keep the canonical representative only.
  while (true) {
    if (canonical_rotation(d) == d) out.push_back(d);
    int i = ell - 1;
    while (i >= 0 && d[static_cast<size_t>(i)] == digit_max) d[static_cast<size_t>(i--)] = 1;
    if (i < 0) break;
    ++d[static_cast<size_t>(i)];
  }
  return out;
}

ScanRecord scan_one(const std::vector<long>& digits, double tol) {
  PeriodSpec period{digits, 1};
  period.validate();
  ScanRecord rec;
  rec.digits = digits;
  rec.k_max = period.argmax_digit();
  LimitOptions opts;
  opts.tol = tol;
  opts.parallel = false;
  for (int k = 1; k <= period.ell(); ++k) {
    period.k = k;
    rec.C_k.push_back(c_k_closed(spectral(period), opts).value);
  }
  period.k = rec.k_max;
  const SpectralData spec = spectral(period);
  rec.q_ell = spec.q_ell().get_str();
  rec.upper_bound = spec.a_k >= 6 ? ck_upper(spec) : kNaN;
  rec.verdict = classify(rec.C_k[static_cast<size_t>(rec.k_max - 1)], rec.upper_bound, tol, rec.inconclusive);
  return rec;
}

std::vector<ScanRecord> scan(int ell, long digit_max, double tol, int workers) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const std::vector<std::vector<long>> tuples = scan_tuples(ell, digit_max);
  std::vector<ScanRecord> out(tuples.size());
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(tuples.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<size_t>(i)] = scan_one(tuples[static_cast<size_t>(i)], tol);
    } catch (...) {
#pragma omp critical(sudler_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace sudler
