#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sudler/bounds.hpp"
#include "sudler/kernels.hpp"
#include "sudler/limitfn.hpp"
#include "sudler/orbit.hpp"
#include "sudler/sudler_direct.hpp"
#include "sudler/verify.hpp"

using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kVerifyFailed = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string period;
  int k = 1;
  std::string eps = "0";
  double tol = 1e-8;
  long precision_bits = 128;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 20210614;
  int workers = 0;
  // constants
  long q_max = 1000000;
  // scan
  int ell = 1;
  long max_digit = 6;
  // sudler
  std::string n_range;
  std::string m_range;
  bool subseq = false;
  // verify
  std::vector<std::string> suites;
  std::vector<std::string> periods;
  long decomposition_q_max = 10000;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string real_num(const sudler::Real& v) {
  const double d = v.to_double();
  return std::isfinite(d) ? num(d) : v.to_string(17);
}

json json_num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) throw UsageError(std::string("bad number in ") + what + ": '" + s + "'");
  return v;
}

long to_long(const std::string& s, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(std::string("bad integer in ") + what + ": '" + s + "'");
  return v;
}

// "min:max:step" or a single value.
std::vector<double> eps_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {to_double(parts[0], "--eps")};
  if (parts.size() != 3) throw UsageError("--eps expects min:max:step");
  const double lo = to_double(parts[0], "--eps");
  const double hi = to_double(parts[1], "--eps");
  const double step = to_double(parts[2], "--eps");
  if (!(step > 0.0)) throw UsageError("--eps step must be > 0");
  if (lo > hi) throw UsageError("--eps min must be <= max");
  // Slack absorbs rounding in (max - min) / step so max itself stays on the grid.
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

// "a:b" or a single value; both ends inclusive.
std::pair<long, long> int_range(const std::string& text, const char* what, long min_value) {
  const auto parts = split(text, ':');
  if (parts.empty() || parts.size() > 2) throw UsageError(std::string(what) + " expects a:b");
  const long a = to_long(parts[0], what);
  const long b = parts.size() == 2 ? to_long(parts[1], what) : a;
  if (a < min_value) throw UsageError(std::string(what) + " start must be >= " + std::to_string(min_value));
  if (a > b) throw UsageError(std::string(what) + " start must be <= end");
  return {a, b};
}

sudler::PeriodSpec period_of(const RunConfig& cfg) {
  if (cfg.period.empty()) throw UsageError("--period is required");
  sudler::PeriodSpec p{sudler::parse_digits(cfg.period), cfg.k};
  p.validate();
  return p;
}

void check_common(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw UsageError("--tol must be > 0");
  if (cfg.precision_bits < 53) throw UsageError("--precision-bits must be >= 53");
}

sudler::LimitOptions limit_options(const RunConfig& cfg) {
  sudler::LimitOptions o;
  o.tol = cfg.tol;
  o.workers = cfg.workers;
  return o;
}

sudler::KernelOptions kernel_options(const RunConfig& cfg) {
  return {cfg.precision_bits, cfg.workers, true};
}

std::string header(const std::string& columns) { return "# schema=1\n" + columns + "\n"; }

std::string cmd_limit_fn(const RunConfig& cfg) {
  const auto p = period_of(cfg);
  const auto grid = eps_grid(cfg.eps);
  const auto spec = sudler::spectral(p);
  const auto opts = limit_options(cfg);
  std::ostringstream csv;
  json rows = json::array();
  csv << header("eps,value,T,tail_bound,flags");
  for (double eps : grid) {
    const auto g = sudler::g_limit(spec, eps, opts);
    const std::string flags = g.zero_factor ? "zero" : "";
    csv << num(eps) << ',' << num(g.value) << ',' << g.T << ',' << num(g.tail_bound) << ',' << flags << '\n';
    rows.push_back({{"eps", eps}, {"value", json_num(g.value)}, {"T", g.T}, {"tail_bound", json_num(g.tail_bound)},
                    {"flags", flags}});
  }
  if (cfg.format == "json") return json{{"schema", 1}, {"rows", rows}}.dump(2) + "\n";
  return csv.str();
}

std::string cmd_constants(const RunConfig& cfg) {
  auto p = period_of(cfg);
  if (cfg.q_max < 1) throw UsageError("--q-max must be >= 1");
  const auto opts = limit_options(cfg);
  std::ostringstream csv;
  json rows = json::array();
  csv << header("k,C_closed,C_empirical,gap,q_n_used");
  for (int k = 1; k <= p.ell(); ++k) {
    p.k = k;
    const double closed = sudler::c_k_closed(sudler::spectral(p), opts).value;
    const long n = sudler::largest_m(p, sudler::BigInt(cfg.q_max)) * p.ell() + k;
    const sudler::BigInt q = sudler::denominator(p, n);
    double empirical = std::nan("");
    if (q <= cfg.q_max) empirical = sudler::sudler(p, q.get_si(), kernel_options(cfg)).value.to_double();
    const double gap = std::fabs(closed - empirical);
    csv << k << ',' << num(closed) << ',' << num(empirical) << ',' << num(gap) << ',' << q.get_str() << '\n';
    rows.push_back({{"k", k},
                    {"C_closed", json_num(closed)},
                    {"C_empirical", json_num(empirical)},
                    {"gap", json_num(gap)},
                    {"q_n_used", q.get_str()}});
  }
  if (cfg.format == "json") return json{{"schema", 1}, {"rows", rows}}.dump(2) + "\n";
  return csv.str();
}

std::string cmd_scan(const RunConfig& cfg) {
  if (cfg.ell < 1) throw UsageError("--ell must be >= 1");
  if (cfg.max_digit < 1) throw UsageError("--max-digit must be >= 1");
  const auto records = sudler::scan(cfg.ell, cfg.max_digit, cfg.tol, cfg.workers);
  long counts[3] = {0, 0, 0};
  long inconclusive = 0;
  std::ostringstream csv;
  json rows = json::array();
  csv << header("digits,k_max,q_ell,C_kmax,upper_bound,verdict");
  for (const auto& r : records) {
    std::string digits;
    for (std::size_t i = 0; i < r.digits.size(); ++i) digits += (i ? " " : "") + std::to_string(r.digits[i]);
    std::string verdict = sudler::to_string(r.verdict);
    if (r.inconclusive) verdict += ";inconclusive";
    ++counts[static_cast<int>(r.verdict)];
    inconclusive += r.inconclusive ? 1 : 0;
    const double c = r.C_k[static_cast<std::size_t>(r.k_max - 1)];
    csv << digits << ',' << r.k_max << ',' << r.q_ell << ',' << num(c) << ',' << num(r.upper_bound) << ',' << verdict
        << '\n';
    rows.push_back({{"digits", r.digits},
                    {"k_max", r.k_max},
                    {"q_ell", r.q_ell},
                    {"C_kmax", json_num(c)},
                    {"upper_bound", json_num(r.upper_bound)},
                    {"verdict", verdict}});
  }
  json summary = {{"certified_lt_1", counts[0]},
                  {"lt_1_numeric", counts[1]},
                  {"ge_1_numeric", counts[2]},
                  {"inconclusive", inconclusive}};
  if (cfg.format == "json") return json{{"schema", 1}, {"rows", rows}, {"summary", summary}}.dump(2) + "\n";
  csv << "# summary certified_lt_1=" << counts[0] << " lt_1_numeric=" << counts[1] << " ge_1_numeric=" << counts[2]
      << " inconclusive=" << inconclusive << '\n';
  return csv.str();
}

std::string cmd_sudler(const RunConfig& cfg) {
  auto p = period_of(cfg);
  std::ostringstream csv;
  json rows = json::array();
  if (cfg.subseq) {
    if (cfg.m_range.empty()) throw UsageError("--subseq needs --m a:b");
    const auto [m0, m1] = int_range(cfg.m_range, "--m", 0);
    csv << header("m,q_n,P,logP");
    for (long m = m0; m <= m1; ++m) {
      const sudler::BigInt q = sudler::denominator(p, m * p.ell() + p.k);
      if (!q.fits_slong_p()) throw UsageError("q_n exceeds the direct evaluation range at m=" + std::to_string(m));
      const auto v = sudler::sudler(p, q.get_si(), kernel_options(cfg));
      csv << m << ',' << q.get_str() << ',' << real_num(v.value) << ',' << real_num(v.log_value) << '\n';
      rows.push_back({{"m", m}, {"q_n", q.get_str()}, {"P", real_num(v.value)}, {"logP", real_num(v.log_value)}});
    }
  } else {
    if (cfg.n_range.empty()) throw UsageError("sudler needs --N a:b or --subseq");
    const auto [n0, n1] = int_range(cfg.n_range, "--N", 0);
    const sudler::KroneckerOrbit orbit(sudler::fixed_point(p.digits));
    const sudler::Real zero(0L, 53);
    csv << header("N,P,logP");
    // Prefix up to n0 in parallel, then one factor per row.
    sudler::Real log_p(0L, cfg.precision_bits);
    if (n0 > 0) log_p = sudler::log_sine_sum_parallel(orbit, 1, n0, zero, cfg.precision_bits, cfg.workers).sum;
    for (long n = n0; n <= n1; ++n) {
      if (n > n0) log_p += sudler::log_sine_sum_serial(orbit, n, n, zero, cfg.precision_bits).sum;
      const sudler::Real value = sudler::exp(log_p);
      csv << n << ',' << real_num(value) << ',' << real_num(log_p) << '\n';
      rows.push_back({{"N", n}, {"P", real_num(value)}, {"logP", real_num(log_p)}});
    }
  }
  if (cfg.format == "json") return json{{"schema", 1}, {"rows", rows}}.dump(2) + "\n";
  return csv.str();
}

int cmd_verify(const RunConfig& cfg, std::string& text) {
  sudler::VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.tol = cfg.tol;
  opts.precision_bits = cfg.precision_bits;
  opts.workers = cfg.workers;
  opts.decomposition_q_max = cfg.decomposition_q_max;
  for (const auto& s : cfg.periods) opts.periods.push_back(sudler::parse_digits(s));
  const auto results = sudler::run_suites(cfg.suites, opts);
  json report = json::object();
  int code = kOk;
  for (const auto& r : results) {
    json entry = {{"pass", r.pass}, {"worst_residual", json_num(r.worst_residual)}, {"cases", r.cases}};
    if (!r.pass) {
      entry["first_failure"] = r.first_failure;
      std::cerr << "verify: suite '" << r.name << "' failed: " << r.first_failure << '\n';
      code = kVerifyFailed;
    }
    report[r.name] = entry;
  }
  text = report.dump(2) + "\n";
  return code;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tol", cfg.tol, "limit-function tolerance")->capture_default_str();
  cmd->add_option("--precision-bits", cfg.precision_bits, "MPFR precision of the direct kernels")
      ->capture_default_str();
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out, "output file (default stdout)");
  cmd->add_option("--seed", cfg.seed, "seed for randomized corpora")->capture_default_str();
  cmd->add_option("--workers", cfg.workers, "OpenMP threads (0: runtime default)")->capture_default_str();
}

void add_period(CLI::App* cmd, RunConfig& cfg, bool with_k) {
  cmd->add_option("--period", cfg.period, "digits a_1,...,a_l")->required();
  if (with_k) cmd->add_option("--k", cfg.k, "subsequence index 1..l")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sudler products for periodic quadratic irrationals"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* limit_fn = app.add_subcommand("limit-fn", "G_k(alpha, eps) over an eps grid");
  add_period(limit_fn, cfg, true);
  limit_fn->add_option("--eps", cfg.eps, "min:max:step or a single value")->capture_default_str();
  add_common(limit_fn, cfg);

  auto* constants = app.add_subcommand("constants", "closed-form and empirical C_k for every k");
  add_period(constants, cfg, false);
  constants->add_option("--q-max", cfg.q_max, "largest q_n used for the empirical column")->capture_default_str();
  add_common(constants, cfg);

  auto* scan = app.add_subcommand("scan", "classify C_k < 1 over digit tuples");
  scan->add_option("--ell", cfg.ell, "period length")->required();
  scan->add_option("--max-digit", cfg.max_digit, "largest digit")->required();
  add_common(scan, cfg);

  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--suite", cfg.suites, "suite to run (repeatable; default all)");
  verify->add_option("--period", cfg.periods, "restrict every suite to these periods (repeatable)");
  verify->add_option("--decomposition-q-max", cfg.decomposition_q_max, "q_n cap of the decomposition suite")
      ->capture_default_str();
  add_common(verify, cfg);

  auto* direct = app.add_subcommand("sudler", "direct products P_N");
  add_period(direct, cfg, true);
  direct->add_option("--N", cfg.n_range, "range a:b of N");
  direct->add_flag("--subseq", cfg.subseq, "evaluate at N = q_{m l + k}");
  direct->add_option("--m", cfg.m_range, "range a:b of m in subsequence mode");
  add_common(direct, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    check_common(cfg);
    std::string text;
    int code = kOk;
    if (*limit_fn) text = cmd_limit_fn(cfg);
    else if (*constants) text = cmd_constants(cfg);
    else if (*scan) text = cmd_scan(cfg);
    else if (*direct) text = cmd_sudler(cfg);
    else code = cmd_verify(cfg, text);

    if (cfg.out.empty()) {
      std::cout << text << std::flush;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!(file << text)) throw std::runtime_error("cannot write " + cfg.out);
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
