#include "sudler/orbit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sudler {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

std::int64_t narrow(const BigInt& x, const char* what) {
  if (!x.fits_slong_p()) throw std::overflow_error(std::string("orbit coordinate too large: ") + what);
  return x.get_si();
}

constexpr u128 kLimit = static_cast<u128>(1) << 126;

}  // namespace

u128 isqrt128(u128 n) {
  if (n == 0) return 0;
  auto s = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

KroneckerOrbit::KroneckerOrbit(const QuadExt& beta)
    : P_(narrow(beta.p(), "p")), Q_(narrow(beta.q(), "q")), R_(narrow(beta.r(), "r")), D_(narrow(beta.D(), "D")) {
  if (Q_ == 0) throw std::invalid_argument("orbit needs an irrational rotation");
  sqrt_d_ = std::sqrt(static_cast<double>(D_));
}

KroneckerOrbit::Split KroneckerOrbit::split(std::int64_t t) const {
  if (t < 1) throw std::invalid_argument("orbit index must be >= 1");
  const u128 w = static_cast<u128>(Q_ < 0 ? -static_cast<i128>(Q_) : Q_) * static_cast<u128>(t);
  if (w >> 63) throw std::overflow_error("orbit index too large");
  const u128 d = static_cast<u128>(D_);
  if (w * w > kLimit / d) throw std::overflow_error("orbit index too large for 128-bit square roots");
  const u128 n = w * w * d;
  const u128 f = isqrt128(n);
  Split out{};
  out.W = static_cast<std::uint64_t>(w);
  out.F = static_cast<std::uint64_t>(f);
  out.num = static_cast<std::uint64_t>(n - f * f);
  out.negative = Q_ < 0;
  i128 s = static_cast<i128>(t) * P_;
  s += out.negative ? -static_cast<i128>(f) - 1 : static_cast<i128>(f);
  i128 r = s % R_;
  if (r < 0) r += R_;
  out.residue = static_cast<std::int64_t>(r);
  return out;
}

double KroneckerOrbit::offset(std::int64_t t) const {
  const Split sp = split(t);
  const double den = static_cast<double>(sp.W) * sqrt_d_ + static_cast<double>(sp.F);
  // theta = frac(W sqrt(D)), theta_c = 1 - theta, both without cancellation.
  const double theta = static_cast<double>(sp.num) / den;
  const double theta_c = static_cast<double>(2 * sp.F + 1 - sp.num) / (den + 1.0);
  const double phi = sp.negative ? theta_c : theta;
  const double phi_c = sp.negative ? theta : theta_c;
  const double N = static_cast<double>(sp.residue);
  const double R = static_cast<double>(R_);
  if (2 * (N + phi) < R) return (N + phi) / R;
  return -(static_cast<double>(R_ - 1 - sp.residue) + phi_c) / R;
}

void KroneckerOrbit::offset(std::int64_t t, mpfr_ptr out, mpfr_srcptr sqrt_d, mpfr_ptr tmp) const {
  const Split sp = split(t);
  // tmp = W sqrt(D) + F
  mpfr_mul_ui(tmp, sqrt_d, sp.W, MPFR_RNDN);
  mpfr_add_ui(tmp, tmp, sp.F, MPFR_RNDN);
  const bool low = 2 * static_cast<i128>(sp.residue) + 1 < R_ ||
                   (2 * static_cast<i128>(sp.residue) + 1 == R_ &&
                    (static_cast<double>(sp.negative ? 2 * sp.F + 1 - sp.num : sp.num) /
                     (static_cast<double>(sp.W) * sqrt_d_ + static_cast<double>(sp.F))) < 0.5);
  // phi when low, 1 - phi otherwise; theta uses (num, den), 1 - theta uses (2F+1-num, den+1).
  const bool use_theta = low != sp.negative;
  if (use_theta) {
    mpfr_ui_div(out, sp.num, tmp, MPFR_RNDN);
  } else {
    mpfr_add_ui(tmp, tmp, 1, MPFR_RNDN);
    mpfr_ui_div(out, 2 * sp.F + 1 - sp.num, tmp, MPFR_RNDN);
  }
  if (low) {
    mpfr_add_si(out, out, sp.residue, MPFR_RNDN);
    mpfr_div_si(out, out, R_, MPFR_RNDN);
  } else {
    mpfr_add_si(out, out, R_ - 1 - sp.residue, MPFR_RNDN);
    mpfr_div_si(out, out, R_, MPFR_RNDN);
    mpfr_neg(out, out, MPFR_RNDN);
  }
}

std::int64_t KroneckerOrbit::floor_at(std::int64_t t) const {
  const Split sp = split(t);
  i128 s = static_cast<i128>(t) * P_;
  s += sp.negative ? -static_cast<i128>(sp.F) - 1 : static_cast<i128>(sp.F);
  return static_cast<std::int64_t>((s - sp.residue) / R_);
}

QuadExt KroneckerOrbit::exact_frac(std::int64_t t) const {
  return (QuadExt(BigInt(static_cast<long>(P_)), BigInt(static_cast<long>(Q_)), BigInt(static_cast<long>(R_)),
                  BigInt(static_cast<long>(D_))) *
          static_cast<long>(t))
      .frac();
}

}  // namespace sudler
