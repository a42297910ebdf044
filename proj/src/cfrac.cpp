#include "sudler/cfrac.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sudler {

namespace {

long wrap_index(long n, long ell) {
  long r = (n - 1) % ell;
  if (r < 0) r += ell;
  return r;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("internal identity failed: " + what);
}

}  // namespace

long PeriodSpec::digit(long n) const { return digits[static_cast<size_t>(wrap_index(n, ell()))]; }

long PeriodSpec::max_digit() const { return *std::max_element(digits.begin(), digits.end()); }

int PeriodSpec::argmax_digit() const {
  return static_cast<int>(std::max_element(digits.begin(), digits.end()) - digits.begin()) + 1;
}

std::string PeriodSpec::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < digits.size(); ++i) os << (i ? " " : "") << digits[i];
  return os.str();
}

void PeriodSpec::validate() const {
  if (digits.empty()) throw std::invalid_argument("period must have at least one digit");
  for (long d : digits) {
    if (d < 1) throw std::invalid_argument("period digits must be >= 1, got " + std::to_string(d));
  }
  if (k < 1 || k > ell()) {
    throw std::invalid_argument("k must lie in 1.." + std::to_string(ell()) + ", got " + std::to_string(k));
  }
}

std::vector<long> parse_digits(const std::string& text) {
  std::vector<long> out;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    size_t used = 0;
    long v = 0;
    try {
      v = std::stol(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad digit '" + token + "'");
    }
    if (used != token.size()) throw std::invalid_argument("bad digit '" + token + "'");
    out.push_back(v);
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == ';') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  if (out.empty()) throw std::invalid_argument("empty period");
  return out;
}

Convergents convergents(const PeriodSpec& period, long n_max) {
  if (period.digits.empty()) throw std::invalid_argument("empty period");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  Convergents out;
  out.p.resize(static_cast<size_t>(n_max) + 1);
  out.q.resize(static_cast<size_t>(n_max) + 1);
  out.p[0] = 1;
  out.p[1] = 0;
  out.q[0] = 0;
  out.q[1] = 1;
  for (long n = 1; n < n_max; ++n) {
    const long a = period.digit(n);
    const auto i = static_cast<size_t>(n);
    out.p[i + 1] = a * out.p[i] + out.p[i - 1];
    out.q[i + 1] = a * out.q[i] + out.q[i - 1];
  }
  return out;
}

PeriodSpec permute(const PeriodSpec& period, Permutation which, int k) {
  const long ell = period.ell();
  if (ell < 1) throw std::invalid_argument("empty period");
  PeriodSpec out{{}, period.k};
  out.digits.reserve(static_cast<size_t>(ell));
  for (long i = 1; i <= ell; ++i) {
    out.digits.push_back(which == Permutation::tau ? period.digit(k + i) : period.digit(k - i));
  }
  return out;
}

std::vector<long> canonical_rotation(const std::vector<long>& digits) {
  std::vector<long> best = digits;
  std::vector<long> cur = digits;
  for (size_t i = 1; i < digits.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

QuadExt fixed_point(const std::vector<long>& digits) {
  const PeriodSpec period{digits, 1};
  const long ell = period.ell();
  const Convergents t = convergents(period, ell + 1);
  const auto L = static_cast<size_t>(ell);
  const BigInt lin = t.q[L + 1] - t.p[L];
  const BigInt disc = lin * lin + 4 * t.q[L] * t.p[L + 1];
  const BigInt c = t.q[L + 1] + t.p[L];
  const BigInt D = c * c + (ell % 2 == 1 ? 4 : -4);
  require(disc == D, "discriminant of the fixed-point quadratic");
  QuadExt alpha(-lin, 1, 2 * t.q[L], D);
  require(alpha.sign() > 0 && alpha < QuadExt::integer(1, D), "fixed point in (0, 1)");
  return alpha;
}

SpectralData spectral(const PeriodSpec& period) {
  period.validate();
  SpectralData s;
  s.period = period;
  s.ell = period.ell();
  s.a_k = period.digit(period.k);
  const long ell = s.ell;
  const auto L = static_cast<size_t>(ell);
  s.table = convergents(period, 3 * ell + 2);
  const Convergents& t = s.table;

  s.c = t.q[L + 1] + t.p[L];
  s.D = s.c * s.c + (ell % 2 == 1 ? 4 : -4);
  const QuadExt root = QuadExt::root(s.D);
  s.a = (QuadExt::integer(s.c, s.D) + root) / 2;
  s.b = (QuadExt::integer(s.c, s.D) - root) / 2;
  s.alpha = fixed_point(period.digits);
  require(s.alpha.D() == s.D, "alpha lies in Q(sqrt(D))");

  const PeriodSpec tau = permute(period, Permutation::tau, period.k);
  const PeriodSpec sigma = permute(period, Permutation::sigma, period.k);
  const Convergents tt = convergents(tau, ell + 1);
  const Convergents ts = convergents(sigma, ell + 1);
  s.q_ell_tau = tt.q[L];
  s.p_ell_tau = tt.p[L];
  s.q_ell1_tau = tt.q[L + 1];
  s.q_ell_sigma = ts.q[L];
  s.p_ell_sigma = ts.p[L];
  s.q_ell1_sigma = ts.q[L + 1];
  require(tt.q[L + 1] + tt.p[L] == s.c && ts.q[L + 1] + ts.p[L] == s.c, "c is rotation/reflection invariant");

  s.alpha_tau_k = fixed_point(tau.digits);
  s.alpha_sigma_k = fixed_point(sigma.digits);
  // Second derivation of alpha_sigma from p_l - q_l alpha_sigma = b.
  const QuadExt via_b = (QuadExt::integer(s.p_ell_sigma, s.D) - s.b) / s.q_ell_sigma;
  require(via_b == s.alpha_sigma_k, "alpha_sigma_k from the fixed point and from b agree");

  const auto k0 = static_cast<size_t>(period.k_mod());
  s.c_k = (QuadExt::integer(t.q[L + k0], s.D) - s.b * t.q[k0]) / (s.a - s.b);
  s.e_k = s.alpha * t.q[k0] - t.p[k0];
  require(s.c_k.sign() > 0, "c_k > 0");
  s.ckek = abs(s.c_k * s.e_k);
  s.inv_ckek = QuadExt::integer(1, s.D) / s.ckek;
  s.A = s.inv_ckek * 2;
  return s;
}

QuadExt lambda_n(const SpectralData& spec, long n) {
  if (n < 0) throw std::invalid_argument("lambda_n needs n >= 0");
  const auto i = static_cast<size_t>(n);
  if (i < spec.table.q.size()) return spec.alpha * spec.table.q[i] - spec.table.p[i];
  const Convergents t = convergents(spec.period, n);
  return spec.alpha * t.q[i] - t.p[i];
}

QuadExt u_of_t(const SpectralData& spec, long t) {
  if (t < 1) throw std::invalid_argument("u_k(t) needs t >= 1");
  const QuadExt frac = (spec.alpha_sigma_k * t).frac();
  return (spec.inv_ckek * t - frac) * 2 + 1;
}

QuadExt delta_of_t(const SpectralData& spec, long t) {
  if (t < 1) throw std::invalid_argument("delta_t needs t >= 1");
  return QuadExt::integer(1, spec.D) - (spec.alpha_sigma_k * t).frac() * 2;
}

RValue r_of_t(const SpectralData& spec, long t) {
  if (t < 1) throw std::invalid_argument("R_t needs t >= 1");
  const BigInt num = spec.p_ell_tau * t;
  BigInt rem;
  mpz_fdiv_r(rem.get_mpz_t(), num.get_mpz_t(), spec.q_ell_tau.get_mpz_t());
  const QuadExt first = QuadExt::rational(rem, spec.q_ell_tau, spec.D);
  const QuadExt gap = QuadExt::rational(spec.p_ell_sigma, spec.q_ell_sigma, spec.D) - spec.alpha_sigma_k;
  const QuadExt R = first + gap * t - spec.b * (2 * t) / spec.q_ell_sigma;
  return RValue{R, R.dist_to_nearest_integer(), (R + spec.b).dist_to_nearest_integer()};
}

}  // namespace sudler
