#include "sudler/limitfn.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "sudler/orbit.hpp"

namespace sudler {

namespace {

constexpr int kMoments = 24;
constexpr double kSeriesRatio = 3.0;      // series regime once u >= 3 xmax
constexpr std::int64_t kDirectLoop = 64;  // larger families go through lgamma
constexpr std::int64_t kChunk = 4096;

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct Partial {
  double sum = 0.0;
  double comp = 0.0;
  double abs_sum = 0.0;
  std::int64_t negatives = 0;
  bool zero = false;
};

bool vanishes(double u, double x) {
  const double d = std::fabs(u - std::fabs(x));
  return d <= 4.0 * std::numeric_limits<double>::epsilon() * u;
}

// Grouped log-factor of one t, plus parity of negative factors of weight 1.
class TermEvaluator {
 public:
  TermEvaluator(const FactorSet& fs, double A) : fs_(fs) {
    xmax_ = fs.xmax();
    if (xmax_ > 0.0) {
      moments_.assign(kMoments + 1, 0.0);
      for (const FactorFamily& f : fs.families) {
        for (std::int64_t s = 0; s < f.count; ++s) {
          const double y = (f.x0 + f.step * static_cast<double>(s)) / xmax_;
          const double y2 = y * y;
          double p = 1.0;
          for (int j = 1; j <= kMoments; ++j) {
            p *= y2;
            moments_[j] += f.weight * p;
          }
        }
      }
    }
    series_from_ = kSeriesRatio * xmax_;
    A_ = A;
  }

  double xmax() const { return xmax_; }
  double moment(int j) const { return xmax_ > 0.0 ? moments_[j] : 0.0; }
  // First moment M_1 = sum w x^2.
  double kappa() const { return xmax_ > 0.0 ? moments_[1] * xmax_ * xmax_ : 0.0; }

  // Returns false when a factor vanishes.
  bool term(double u, double& out, std::int64_t& negatives) const {
    if (xmax_ == 0.0) {
      out = 0.0;
      return true;
    }
    if (u >= series_from_) {
      const double r2 = (xmax_ / u) * (xmax_ / u);
      double p = 1.0;
      double acc = 0.0;
      for (int j = 1; j <= kMoments; ++j) {
        p *= r2;
        const double inc = moments_[j] * p / j;
        acc += inc;
        if (std::fabs(inc) < 1e-19 * std::fabs(acc)) break;
      }
      out = -acc;
      return true;
    }
    double acc = 0.0;
    for (const FactorFamily& f : fs_.families) {
      double part = 0.0;
      if (f.count <= kDirectLoop || f.step != 2.0) {
        for (std::int64_t s = 0; s < f.count; ++s) {
          const double x = f.x0 + f.step * static_cast<double>(s);
          if (vanishes(u, x)) return false;
          const double fac = (u - x) * (u + x) / (u * u);
          if (fac < 0.0 && f.weight == 1.0) ++negatives;
          part += std::log(std::fabs(fac));
        }
      } else {
        if (!family_lgamma(f, u, part)) return false;
      }
      acc += f.weight * part;
    }
    out = acc;
    return true;
  }

 private:
  // sum_s log|1 - x_s^2/u^2| for x_s = x0 + 2s, through
  // prod_s (z - s) = Gamma(z+1)/Gamma(z-n+1) and prod_s (w + s) = Gamma(w+n)/Gamma(w).
  static bool family_lgamma(const FactorFamily& f, double u, double& out) {
    const long double n = static_cast<long double>(f.count);
    const long double z = (static_cast<long double>(u) - f.x0) / 2.0L;
    const long double w = (static_cast<long double>(u) + f.x0) / 2.0L;
    const long double near = std::nearbyint(z);
    if (near >= 0.0L && near <= n - 1.0L && vanishes(u, f.x0 + 2.0 * static_cast<double>(near))) return false;
    const long double wn = std::nearbyint(-w);
    if (wn >= 0.0L && wn <= n - 1.0L && vanishes(u, -(f.x0 + 2.0 * static_cast<double>(wn)))) return false;
    const long double minus = std::lgamma(z + 1.0L) - std::lgamma(z - n + 1.0L);
    const long double plus = std::lgamma(w + n) - std::lgamma(w);
    const long double total = 2.0L * n * std::log(2.0L) + minus + plus - 2.0L * n * std::log(static_cast<long double>(u));
    out = static_cast<double>(total);
    return true;
  }

  const FactorSet& fs_;
  std::vector<double> moments_;
  double xmax_ = 0.0;
  double series_from_ = 0.0;
  double A_ = 0.0;
};

// sum_{t > T} t^{-p}, midpoint integral plus its first Euler-Maclaurin correction.
double zeta_tail(int p, double T) {
  const double h = T + 0.5;
  return std::pow(h, 1.0 - p) / (p - 1) - p * std::pow(h, -p - 1.0) / 24.0;
}

// Log-tail beyond T for u = A t + delta with mean delta 0 and mean delta^2 1/3.
double tail_log(const TermEvaluator& ev, double A, double T) {
  if (ev.xmax() == 0.0) return 0.0;
  const double r = ev.xmax() / A;
  double acc = 0.0;
  for (int j = 1; j <= kMoments; ++j) {
    const double rj = std::pow(r, 2.0 * j);
    const double z = zeta_tail(2 * j, T) + j * (2.0 * j + 1.0) / (3.0 * A * A) * zeta_tail(2 * j + 2, T);
    const double inc = ev.moment(j) / j * rj * z;
    acc += inc;
    if (std::fabs(inc) < 1e-20 * std::fabs(acc)) break;
  }
  return -acc;
}

double discrepancy_constant(long a_k) {
  const double a = static_cast<double>(std::max(a_k, 2L));
  return a / (4.0 * std::log(a)) + 12.0;
}

Partial chunk_sum(const KroneckerOrbit& orbit, const TermEvaluator& ev, double A, std::int64_t lo,
                  std::int64_t hi) {
  Partial out;
  Neumaier acc;
  for (std::int64_t t = lo; t <= hi; ++t) {
    const double z = orbit.offset(t);
    const double delta = z >= 0.0 ? 1.0 - 2.0 * z : -1.0 - 2.0 * z;
    const double u = A * static_cast<double>(t) + delta;
    double term = 0.0;
    if (!ev.term(u, term, out.negatives)) {
      out.zero = true;
      return out;
    }
    acc.add(term);
    out.abs_sum += std::fabs(term);
  }
  out.sum = acc.sum;
  out.comp = acc.comp;
  return out;
}

struct RangeSum {
  double sum = 0.0;
  double abs_sum = 0.0;
  std::int64_t negatives = 0;
  bool zero = false;
};

RangeSum range_sum(const KroneckerOrbit& orbit, const TermEvaluator& ev, double A, std::int64_t first,
                   std::int64_t last, const LimitOptions& opts) {
  RangeSum out;
  if (last < first) return out;
  const std::int64_t n = last - first + 1;
  const std::int64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Partial> parts(static_cast<size_t>(chunks));
  std::exception_ptr failure = nullptr;
  const int threads = opts.parallel ? (opts.workers > 0 ? opts.workers : omp_get_max_threads()) : 1;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t lo = first + c * kChunk;
    const std::int64_t hi = std::min(last, lo + kChunk - 1);
    try {
      parts[static_cast<size_t>(c)] = chunk_sum(orbit, ev, A, lo, hi);
    } catch (...) {
#pragma omp critical(sudler_limit_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Neumaier acc;
  for (const Partial& p : parts) {
    acc.add(p.sum);
    acc.add(p.comp);
    out.abs_sum += p.abs_sum;
    out.negatives += p.negatives;
    out.zero = out.zero || p.zero;
  }
  out.sum = acc.value();
  return out;
}

TruncatedProduct zero_product(std::int64_t T) {
  TruncatedProduct out;
  out.value = 0.0;
  out.raw_value = 0.0;
  out.log_abs = -std::numeric_limits<double>::infinity();
  out.T = T;
  out.zero_factor = true;
  return out;
}

double log_abs_sum_sa(long c, double b) {
  // sum_{s=1}^{c} log|s - a| with s - a = (s - c) + b
  double acc = 0.0;
  for (long s = 1; s <= c; ++s) acc += std::log(std::fabs(static_cast<double>(s - c) + b));
  return acc;
}

double lgamma_int(long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

void check_tol(const LimitOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
}

}  // namespace

double FactorSet::xmax() const {
  double m = 0.0;
  for (const FactorFamily& f : families) {
    if (f.count <= 0) continue;
    m = std::max(m, std::fabs(f.x0));
    m = std::max(m, std::fabs(f.x0 + f.step * static_cast<double>(f.count - 1)));
  }
  return m;
}

TruncatedProduct evaluate_product(const SpectralData& spec, const FactorSet& factors, const LimitOptions& opts) {
  check_tol(opts);
  if (factors.zero_prefactor) return zero_product(0);
  const double A = spec.A.to_double();
  const TermEvaluator ev(factors, A);
  const KroneckerOrbit orbit(spec.alpha_sigma_k);
  const double K = discrepancy_constant(spec.a_k);
  const double kappa = ev.kappa();

  auto estimate = [&](std::int64_t T, double abs_sum) {
    const double Td = static_cast<double>(T);
    const double disc = K * std::log(Td) + static_cast<double>(spec.a_k) / 4.0 + 11.5;
    return 4.0 * std::fabs(kappa) * disc / (A * A * A * Td * Td * Td) +
           4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  };

  // The tail correction is only valid once every factor is in the series regime.
  const double t_series = std::ceil(4.0 * ev.xmax() / A);
  if (t_series > static_cast<double>(opts.t_max))
    throw std::range_error("limit product needs T >= " + std::to_string(t_series) + ", above t_max = " +
                           std::to_string(opts.t_max));
  std::int64_t T = std::max<std::int64_t>(opts.t_min, static_cast<std::int64_t>(t_series));
  T = std::min(T, opts.t_max);
  Neumaier total;
  double abs_sum = 0.0;
  std::int64_t negatives = 0;
  std::int64_t done = 0;
  for (;;) {
    const RangeSum r = range_sum(orbit, ev, A, done + 1, T, opts);
    if (r.zero) return zero_product(T);
    total.add(r.sum);
    abs_sum += r.abs_sum;
    negatives += r.negatives;
    done = T;
    if (estimate(T, abs_sum) <= 0.25 * opts.tol || T >= opts.t_max) break;
    T = std::min(2 * T, opts.t_max);
  }

  TruncatedProduct out;
  const double raw_log = factors.log_prefactor + total.value();
  const double tail = tail_log(ev, A, static_cast<double>(T));
  out.T = T;
  out.kappa = kappa;
  out.tail_bound = std::fabs(tail);
  out.error_estimate = estimate(T, abs_sum);
  out.raw_value = std::exp(raw_log);
  out.log_abs = raw_log + tail;
  out.value = std::exp(out.log_abs);
  out.sign = negatives % 2 == 0 ? 1 : -1;
  return out;
}

TruncatedProduct g_of_x(const SpectralData& spec, double x, const LimitOptions& opts) {
  FactorSet fs;
  if (x != 0.0) fs.families.push_back(FactorFamily{std::fabs(x), 2.0, 1, 1.0});
  return evaluate_product(spec, fs, opts);
}

FactorSet limit_factors(const SpectralData& spec, double eps) {
  const long c = spec.c.get_si();
  const double ce = spec.ckek.to_double();
  const double b = spec.b.to_double();
  const double a = static_cast<double>(c) - b;
  FactorSet fs;
  const double lead = 1.0 + eps / ce;
  // Within a few ulps of -|c_k e_k| the prefactor counts as vanishing.
  if (std::fabs(lead) <= 4.0 * std::numeric_limits<double>::epsilon()) {
    fs.zero_prefactor = true;
    return fs;
  }
  const double X = 1.0 + 2.0 * eps / ce;
  fs.families.push_back(FactorFamily{std::fabs(X), 2.0, 1, 1.0});
  if (spec.even()) {
    const double w = 1.0 / static_cast<double>(c - 2);
    fs.log_prefactor = std::log(std::fabs(lead)) + (std::log1p(a * a) - lgamma_int(c)) * w;
    fs.families.push_back(FactorFamily{1.0 + 2.0 * a * a, 2.0, 1, w});
    fs.families.push_back(FactorFamily{3.0, 2.0, c - 1, -w});
  } else {
    const double w = 1.0 / static_cast<double>(c);
    fs.log_prefactor = std::log(std::fabs(lead)) - log_abs_sum_sa(c, b) * w;
    // 1 + 2s - 2a = 1 + 2(s - c) + 2b
    fs.families.push_back(FactorFamily{1.0 - 2.0 * static_cast<double>(c) + 2.0 * b, 2.0, c, -w});
  }
  return fs;
}

FactorSet constant_factors(const SpectralData& spec) {
  const long c = spec.c.get_si();
  const double b = spec.b.to_double();
  const double a = static_cast<double>(c) - b;
  FactorSet fs;
  fs.families.push_back(FactorFamily{1.0, 2.0, 1, 1.0});
  if (spec.even()) {
    const double w = 1.0 / static_cast<double>(c - 2);
    fs.log_prefactor = (std::log1p(a * a) - lgamma_int(c)) * w;
    fs.families.push_back(FactorFamily{1.0 + 2.0 * a * a, 2.0, 1, w});
    fs.families.push_back(FactorFamily{3.0, 2.0, c - 1, -w});
  } else {
    const double w = 1.0 / static_cast<double>(c);
    fs.log_prefactor = -log_abs_sum_sa(c, b) * w;
    fs.families.push_back(FactorFamily{1.0 - 2.0 * static_cast<double>(c) + 2.0 * b, 2.0, c, -w});
  }
  return fs;
}

TruncatedProduct g_limit(const SpectralData& spec, double eps, const LimitOptions& opts) {
  return evaluate_product(spec, limit_factors(spec, eps), opts);
}

TruncatedProduct c_k_closed(const SpectralData& spec, const LimitOptions& opts) {
  return evaluate_product(spec, constant_factors(spec), opts);
}

Residual functional_residual(const SpectralData& spec, const LimitOptions& opts) {
  const long c = spec.c.get_si();
  const double ce = spec.ckek.to_double();
  Residual out;
  double lhs = 0.0;
  double rhs = 0.0;
  auto add = [&](double& side, double eps) {
    const TruncatedProduct g = g_limit(spec, eps, opts);
    if (g.zero_factor) out.undefined = true;
    side += g.log_abs;
  };
  if (spec.even()) {
    for (long s = 0; s < c; ++s) add(lhs, static_cast<double>(s) * ce);
    const double a = static_cast<double>(c) - spec.b.to_double();
    add(rhs, 0.0);
    add(rhs, ce * a * a);  // |c_k e_k| / b^2
  } else {
    const double b = spec.b.to_double();
    for (long s = 0; s < c; ++s) add(lhs, ce * (static_cast<double>(s - c) + b));  // |c_k e_k| (s - a)
  }
  if (out.undefined) return out;
  out.value = std::fabs(std::expm1(lhs - rhs));
  return out;
}

double gauss_invariance_residual(const PeriodSpec& period, double eps, const LimitOptions& opts) {
  period.validate();
  const int ell = period.ell();
  PeriodSpec alpha = period;
  alpha.k = period.k % ell + 1;
  PeriodSpec beta = permute(period, Permutation::tau, 1);
  beta.k = period.k;
  const TruncatedProduct ga = g_limit(spectral(alpha), eps, opts);
  const TruncatedProduct gb = g_limit(spectral(beta), eps, opts);
  return std::fabs(ga.value - gb.value);
}

}  // namespace sudler
