#include "sudler/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <stdexcept>

#include "sudler/bounds.hpp"
#include "sudler/limitfn.hpp"
#include "sudler/sudler_direct.hpp"

namespace sudler {

namespace {

using Digits = std::vector<long>;

struct Outcome {
  double residual = 0.0;
  bool ok = true;
  bool skipped = false;
  std::string label;
};

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); r_.worst_residual = -INFINITY; }

  void add(const Outcome& o) {
    if (o.skipped) return;
    ++r_.cases;
    r_.worst_residual = std::max(r_.worst_residual, o.residual);
    if (!o.ok && r_.pass) {
      r_.pass = false;
      r_.first_failure = o.label;
    }
  }

  SuiteResult done() {
    if (r_.cases == 0) r_.worst_residual = 0.0;
    return r_;
  }

 private:
  SuiteResult r_;
};

std::string label_of(const Digits& d, int k) { return PeriodSpec{d, k}.to_string() + " k=" + std::to_string(k); }

// Evaluates fn(i) for i < n across workers; outcomes are merged in index order.
SuiteResult gather(const std::string& name, std::int64_t n, int workers,
                   const std::function<std::vector<Outcome>(std::int64_t)>& fn) {
  std::vector<std::vector<Outcome>> parts(static_cast<size_t>(n));
  std::exception_ptr failure;
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      parts[static_cast<size_t>(i)] = fn(i);
    } catch (...) {
#pragma omp critical(sudler_verify_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Tally t(name);
  for (const auto& p : parts)
    for (const Outcome& o : p) t.add(o);
  return t.done();
}

// Exact comparison: residual 0 when equal, else |lhs - rhs| (at least 1 for integers).
Outcome exact(const BigInt& lhs, const BigInt& rhs, std::string label) {
  const double diff = lhs == rhs ? 0.0 : std::max(1.0, std::fabs(BigInt(lhs - rhs).get_d()));
  return {diff, diff == 0.0, false, std::move(label)};
}

Outcome exact(const QuadExt& lhs, const QuadExt& rhs, std::string label) {
  const bool eq = lhs == rhs;
  const double diff = eq ? 0.0 : std::max(std::fabs((lhs - rhs).to_double()), 1e-300);
  return {diff, eq, false, std::move(label)};
}

// lhs < rhs exactly; residual (lhs - rhs) in binary64.
Outcome less(const QuadExt& lhs, const QuadExt& rhs, std::string label) {
  return {(lhs - rhs).to_double(), lhs < rhs, false, std::move(label)};
}

std::vector<Digits> random_periods(std::uint64_t seed, int count, int ell_lo, int ell_hi, long digit_max,
                                   long force_max = 0) {
  std::mt19937_64 rng(seed);
  std::vector<Digits> out;
  for (int i = 0; i < count; ++i) {
    Digits d(static_cast<size_t>(std::uniform_int_distribution<int>(ell_lo, ell_hi)(rng)));
    for (long& x : d) x = std::uniform_int_distribution<long>(1, digit_max)(rng);
    if (force_max > 0) {
      const auto j = std::uniform_int_distribution<size_t>(0, d.size() - 1)(rng);
      d[j] = std::max(d[j], force_max);
    }
    out.push_back(d);
  }
  return out;
}

std::vector<Digits> chosen(const VerifyOptions& opts, std::vector<Digits> fallback) {
  return opts.periods.empty() ? std::move(fallback) : opts.periods;
}

const std::vector<Digits> kSandwichCorpus{{1, 7}, {2, 6}, {1, 1, 6}, {6, 2, 1, 3}, {7, 3}};
const std::vector<Digits> kDecompositionCorpus{{1}, {1, 2}, {2, 3}, {1, 1, 2}, {1, 4}};
const std::vector<Digits> kFunctionalEven{{1, 2}, {2, 3}, {1, 4}, {2, 5}, {3, 4},
                                          {1, 7}, {2, 6}, {1, 2, 1, 3}, {2, 1, 1, 5}, {3, 1, 2, 2}};
const std::vector<Digits> kFunctionalOdd{{1}, {2}, {3}, {5}, {7}, {1, 1, 2}, {1, 2, 3}, {3, 1, 4}, {2, 1, 6}, {1, 2, 1, 1, 3}};

struct GaussCase {
  Digits digits;
  int k;
  double eps;
};
const std::vector<GaussCase> kGaussCases{{{1, 2}, 1, 0.0},       {{1, 2}, 2, 0.3},      {{2, 5}, 2, -0.45},
                                         {{1, 1, 2}, 3, 0.1},    {{3, 1, 4, 1}, 2, 0.6}, {{1, 4}, 1, -0.2},
                                         {{2, 3, 1}, 1, 0.25},   {{1, 7}, 2, 0.9},      {{5, 1, 2}, 3, -0.7},
                                         {{1, 2, 3, 4}, 4, 0.15}};

LimitOptions limit_options(const VerifyOptions& opts) {
  LimitOptions o;
  o.tol = opts.tol;
  o.parallel = false;  // suites parallelize over cases
  return o;
}

std::int64_t count(const std::vector<Digits>& v) { return static_cast<std::int64_t>(v.size()); }

// --- exact suites ---------------------------------------------------------

SuiteResult suite_qnrel(const VerifyOptions& opts) {
  const auto corpus = exact_corpus(opts);
  return gather("qnrel", count(corpus), opts.workers, [&](std::int64_t i) {
    const Digits& d = corpus[static_cast<size_t>(i)];
    const long ell = static_cast<long>(d.size());
    const Convergents t = convergents(PeriodSpec{d, 1}, 3 * ell + 2);
    const BigInt c = t.q[static_cast<size_t>(ell + 1)] + t.p[static_cast<size_t>(ell)];
    const long sign = ell % 2 == 1 ? 1 : -1;
    std::vector<Outcome> out;
    for (long n = 2 * ell; n + ell <= 3 * ell + 2; ++n) {
      const auto at = [](const std::vector<BigInt>& v, long j) { return v[static_cast<size_t>(j)]; };
      const std::string where = PeriodSpec{d, 1}.to_string() + " n=" + std::to_string(n);
      out.push_back(exact(at(t.q, n + ell), c * at(t.q, n) + sign * at(t.q, n - ell), "q " + where));
      out.push_back(exact(at(t.p, n + ell), c * at(t.p, n) + sign * at(t.p, n - ell), "p " + where));
    }
    return out;
  });
}

SuiteResult suite_identities(const VerifyOptions& opts) {
  const auto corpus = exact_corpus(opts);
  return gather("identities", count(corpus), opts.workers, [&](std::int64_t i) {
    const Digits& d = corpus[static_cast<size_t>(i)];
    const int ell = static_cast<int>(d.size());
    std::vector<Outcome> out;
    for (int k = 1; k <= ell; ++k) {
      const SpectralData s = spectral(PeriodSpec{d, k});
      const std::string lab = label_of(d, k);
      const Convergents ct = convergents(permute(s.period, Permutation::tau, k), ell + 1);
      const Convergents cs = convergents(permute(s.period, Permutation::sigma, k), ell + 1);
      const auto L = static_cast<size_t>(ell);
      out.push_back(exact(ct.q[L + 1] + ct.p[L], s.c, "c(tau) " + lab));
      out.push_back(exact(cs.q[L + 1] + cs.p[L], s.c, "c(sigma) " + lab));
      out.push_back(exact(ct.q[L], cs.q[L], "q_l " + lab));
      out.push_back(exact(ct.p[L], cs.q[L - 1], "p_l(tau) " + lab));
      out.push_back(exact(cs.p[L], ct.q[L - 1], "p_l(sigma) " + lab));
      // q_{l+1}(tau) q_l(sigma) = a_k q_l(tau) q_l(sigma) + p_l(sigma) q_l(tau)
      out.push_back(exact(ct.q[L + 1] * cs.q[L], s.a_k * ct.q[L] * cs.q[L] + cs.p[L] * ct.q[L], "ratio " + lab));
      out.push_back(exact(s.ckek, QuadExt::integer(ct.q[L], s.b.D()) / (s.b * -2L + s.c), "|c_k e_k| " + lab));
      out.push_back({s.c_k.sign() > 0 ? 0.0 : 1.0, s.c_k.sign() > 0, false, "c_k > 0 " + lab});
      const long k0 = s.period.k_mod();
      QuadExt bm = s.b;
      for (long m = 1; m <= 3; ++m, bm *= s.b) {
        const long n = m * ell + k0;
        const QuadExt lam = lambda_n(s, n);
        out.push_back(exact(lam, s.e_k * bm, "Lambda_" + std::to_string(n) + " " + lab));
        const int want = (n + 1) % 2 == 0 ? 1 : -1;
        out.push_back({lam.sign() == want ? 0.0 : 1.0, lam.sign() == want, false, "sign Lambda " + lab});
      }
    }
    return out;
  });
}

SuiteResult suite_interleaving(const VerifyOptions& opts) {
  const auto corpus = exact_corpus(opts);
  return gather("interleaving", count(corpus), opts.workers, [&](std::int64_t i) {
    const Digits& d = corpus[static_cast<size_t>(i)];
    const long ell = static_cast<long>(d.size());
    const QuadExt alpha = fixed_point(d);
    const BigInt& D = alpha.D();
    const Convergents t = convergents(PeriodSpec{d, 1}, 3 * ell + 2);
    std::vector<Outcome> out;
    for (long n = 1; n <= 3 * ell + 1; ++n) {
      const BigInt& q = t.q[static_cast<size_t>(n)];
      const BigInt& q1 = t.q[static_cast<size_t>(n + 1)];
      const QuadExt err = abs(alpha - QuadExt::rational(t.p[static_cast<size_t>(n)], q, D));
      const std::string lab = PeriodSpec{d, 1}.to_string() + " n=" + std::to_string(n);
      out.push_back(less(QuadExt::rational(1, 2 * q1 * q, D), err, "lower " + lab));
      out.push_back(less(err, QuadExt::rational(1, q1 * q, D), "upper " + lab));
    }
    return out;
  });
}

SuiteResult suite_ckek(const VerifyOptions& opts) {
  const auto corpus = exact_corpus(opts);
  return gather("ckek", count(corpus), opts.workers, [&](std::int64_t i) {
    const Digits& d = corpus[static_cast<size_t>(i)];
    std::vector<Outcome> out;
    for (int k = 1; k <= static_cast<int>(d.size()); ++k) {
      const SpectralData s = spectral(PeriodSpec{d, k});
      const std::string lab = label_of(d, k);
      const QuadExt& x = s.inv_ckek;
      out.push_back(less(x * 0L + s.a_k, x, "a_k < 1/|c_k e_k| " + lab));
      out.push_back(less(x, x * 0L + (s.a_k + 2), "1/|c_k e_k| < a_k + 2 " + lab));
      const bool f = ckek_formula_holds(s);
      out.push_back({f ? 0.0 : 1.0, f, false, "formula " + lab});
    }
    return out;
  });
}

SuiteResult suite_rt_products(const VerifyOptions& opts) {
  const auto corpus = exact_corpus(opts);
  return gather("rt_products", count(corpus), opts.workers, [&](std::int64_t i) {
    const Digits& d = corpus[static_cast<size_t>(i)];
    PeriodSpec p{d, 1};
    p.k = p.argmax_digit();
    std::vector<Outcome> out;
    const SpectralData s = spectral(p);
    const std::string lab = label_of(d, p.k);
    if (s.q_ell() > 20000) return out;
    if (s.a_k >= 6) {
      const Check c = rt_product_check(s, opts.precision_bits);
      out.push_back({-c.slack, c.pass, false, "product " + lab});
    }
    if (s.even()) {
      const auto bad = rt_bracket_violations(s);
      out.push_back({static_cast<double>(bad), bad == 0, false, "bracket " + lab});
    }
    return out;
  });
}

SuiteResult suite_discrepancy(const VerifyOptions& opts) {
  const auto corpus = exact_corpus(opts);
  return gather("discrepancy", count(corpus), opts.workers, [&](std::int64_t i) {
    const Digits& d = corpus[static_cast<size_t>(i)];
    PeriodSpec p{d, 1};
    p.k = p.argmax_digit();
    const SpectralData s = spectral(p);
    std::vector<Outcome> out;
    for (std::int64_t n : {0, 37, 1000}) {
      for (std::int64_t N : {1, 10, 61, 500, 2000}) {
        const Check c = discrepancy_check(s, n, N);
        out.push_back({-c.slack, c.pass, false,
                       label_of(d, p.k) + " n=" + std::to_string(n) + " N=" + std::to_string(N)});
      }
    }
    return out;
  });
}

// --- numeric suites -------------------------------------------------------

SuiteResult suite_decomposition(const VerifyOptions& opts) {
  const auto corpus = chosen(opts, kDecompositionCorpus);
  struct Job {
    Digits d;
    long n;
    double eps;
  };
  std::vector<Job> jobs;
  for (const Digits& d : corpus) {
    const PeriodSpec p{d, 1};
    for (long n = 2; denominator(p, n) <= opts.decomposition_q_max; ++n)
      for (double eps : {0.0, 0.25, -0.25}) jobs.push_back({d, n, eps});
  }
  return gather("decomposition", static_cast<std::int64_t>(jobs.size()), opts.workers, [&](std::int64_t i) {
    const Job& j = jobs[static_cast<size_t>(i)];
    const PeriodSpec p{j.d, 1};
    const Decomposition dec = decompose(p, j.n, j.eps, opts.precision_bits);
    const ProductValue direct = perturbed(p, j.n, j.eps, {opts.precision_bits, 1, false});
    const double rel = std::fabs(std::expm1((log(dec.product()) - direct.log_value).to_double()));
    return std::vector<Outcome>{
        {rel, rel < 1e-9, false, p.to_string() + " n=" + std::to_string(j.n) + " eps=" + std::to_string(j.eps)}};
  });
}

SuiteResult suite_functional(const VerifyOptions& opts) {
  std::vector<Digits> corpus = kFunctionalEven;
  corpus.insert(corpus.end(), kFunctionalOdd.begin(), kFunctionalOdd.end());
  corpus = chosen(opts, corpus);
  const LimitOptions lo = limit_options(opts);
  return gather("functional", count(corpus), opts.workers, [&](std::int64_t i) {
    const Digits& d = corpus[static_cast<size_t>(i)];
    std::vector<Outcome> out;
    for (int k = 1; k <= static_cast<int>(d.size()); ++k) {
      const Residual r = functional_residual(spectral(PeriodSpec{d, k}), lo);
      out.push_back({r.value, !r.undefined && r.value < 1e-6, false,
                     label_of(d, k) + (r.undefined ? " (vanishing factor)" : "")});
    }
    return out;
  });
}

SuiteResult suite_sandwich(const VerifyOptions& opts) {
  const auto corpus = chosen(opts, kSandwichCorpus);
  const LimitOptions lo = limit_options(opts);
  return gather("sandwich", count(corpus), opts.workers, [&](std::int64_t i) {
    const Digits& d = corpus[static_cast<size_t>(i)];
    PeriodSpec p{d, 1};
    p.k = p.argmax_digit();
    std::vector<Outcome> out;
    if (p.max_digit() < 6) return out;
    const SpectralData s = spectral(p);
    const double A = s.A.to_double();
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(i));
    std::vector<double> xs{0.0, A, 5.0 * A};
    std::uniform_real_distribution<double> small(0.0, 0.5 * A), mid(0.5 * A, 1.5 * A), large(1.5 * A, 20.0 * A);
    while (xs.size() < 30) xs.push_back(small(rng));
    while (xs.size() < 60) xs.push_back(mid(rng));
    while (xs.size() < 100) xs.push_back(large(rng));
    for (double x : xs) {
      const SandwichResult r = sandwich(s, x, lo);
      const double res = std::max(r.lower - r.g_value - r.g_error, r.g_value - r.g_error - r.upper);
      out.push_back({res, r.contained(), false, label_of(d, p.k) + " x=" + std::to_string(x)});
    }
    return out;
  });
}

SuiteResult suite_bound_validity(const VerifyOptions& opts) {
  std::vector<Digits> corpus = kSandwichCorpus;
  if (opts.periods.empty()) {
    for (int ell = 1; ell <= 2; ++ell)
      for (const Digits& d : scan_tuples(ell, 8))
        if (*std::max_element(d.begin(), d.end()) >= 6) corpus.push_back(d);
    const auto extra = random_periods(opts.seed ^ 0xb0u, opts.random_periods, 1, 3, opts.random_digit_max, 6);
    corpus.insert(corpus.end(), extra.begin(), extra.end());
  } else {
    corpus = opts.periods;
  }
  const LimitOptions lo = limit_options(opts);
  return gather("bound_validity", count(corpus), opts.workers, [&](std::int64_t i) {
    const Digits& d = corpus[static_cast<size_t>(i)];
    PeriodSpec p{d, 1};
    p.k = p.argmax_digit();
    if (p.max_digit() < 6) return std::vector<Outcome>{{0.0, true, true, ""}};
    const SpectralData s = spectral(p);
    const TruncatedProduct C = c_k_closed(s, lo);
    const double U = ck_upper(s);
    return std::vector<Outcome>{{C.value + C.error_estimate - U, C.value + C.error_estimate <= U, false, label_of(d, p.k)}};
  });
}

SuiteResult suite_gauss(const VerifyOptions& opts) {
  std::vector<GaussCase> cases = kGaussCases;
  if (!opts.periods.empty()) {
    cases.clear();
    for (const Digits& d : opts.periods)
      for (int k = 1; k <= static_cast<int>(d.size()); ++k) cases.push_back({d, k, 0.25});
  }
  const LimitOptions lo = limit_options(opts);
  return gather("gauss", static_cast<std::int64_t>(cases.size()), opts.workers, [&](std::int64_t i) {
    const GaussCase& g = cases[static_cast<size_t>(i)];
    const double r = gauss_invariance_residual(PeriodSpec{g.digits, g.k}, g.eps, lo);
    return std::vector<Outcome>{{r, r < 1e-6, false, label_of(g.digits, g.k) + " eps=" + std::to_string(g.eps)}};
  });
}

using SuiteFn = SuiteResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"qnrel", suite_qnrel},
      {"identities", suite_identities},
      {"interleaving", suite_interleaving},
      {"ckek", suite_ckek},
      {"rt_products", suite_rt_products},
      {"discrepancy", suite_discrepancy},
      {"decomposition", suite_decomposition},
      {"functional", suite_functional},
      {"sandwich", suite_sandwich},
      {"bound_validity", suite_bound_validity},
      {"gauss", suite_gauss},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

std::vector<std::vector<long>> exact_corpus(const VerifyOptions& opts) {
  if (!opts.periods.empty()) return opts.periods;
  std::vector<Digits> out;
  for (int ell = 1; ell <= opts.max_ell; ++ell) {
    const auto t = scan_tuples(ell, opts.max_digit);
    out.insert(out.end(), t.begin(), t.end());
  }
  const auto extra = random_periods(opts.seed, opts.random_periods, 1, 3, opts.random_digit_max);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  for (const auto& [n, fn] : registry())
    if (n == name) return fn(opts);
  throw std::invalid_argument("unknown suite: " + name);
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const VerifyOptions& opts) {
  for (const Digits& d : opts.periods) PeriodSpec{d, 1}.validate();
  const std::vector<std::string> all = suite_names();
  for (const std::string& n : names)
    if (std::find(all.begin(), all.end(), n) == all.end()) throw std::invalid_argument("unknown suite: " + n);
  std::vector<SuiteResult> out;
  for (const std::string& n : names.empty() ? all : names) out.push_back(run_suite(n, opts));
  return out;
}

}  // namespace sudler
