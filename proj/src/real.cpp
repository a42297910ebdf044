#include "sudler/real.hpp"

#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <utility>

namespace sudler {

namespace {

mpfr_prec_t checked_precision(long bits) {
  if (bits < MPFR_PREC_MIN || bits > 1L << 24) {
    throw std::invalid_argument("precision out of range: " + std::to_string(bits));
  }
  return static_cast<mpfr_prec_t>(bits);
}

}  // namespace

Real::Real(long precision_bits) {
  mpfr_init2(value_, checked_precision(precision_bits));
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, long precision_bits) : Real(precision_bits) { mpfr_set_d(value_, value, MPFR_RNDN); }

Real::Real(long value, long precision_bits) : Real(precision_bits) { mpfr_set_si(value_, value, MPFR_RNDN); }

Real::Real(const BigInt& value, long precision_bits) : Real(precision_bits) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

void Real::set_precision(long precision_bits) {
  mpfr_prec_round(value_, checked_precision(precision_bits), MPFR_RNDN);
}

std::string Real::to_string(int digits) const {
  char* raw = nullptr;
  std::string format = "%." + std::to_string(digits) + "Rg";
  if (mpfr_asprintf(&raw, format.c_str(), value_) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::unique_ptr<char, void (*)(char*)> owned(raw, mpfr_free_str);
  return std::string(owned.get());
}

Real& Real::operator+=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

Real abs(const Real& x) {
  Real out(x);
  mpfr_abs(out.get(), out.get(), MPFR_RNDN);
  return out;
}

Real sqrt(const Real& x) {
  Real out(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real log(const Real& x) {
  Real out(x.precision());
  mpfr_log(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real exp(const Real& x) {
  Real out(x.precision());
  mpfr_exp(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real pi(long precision_bits) {
  Real out(precision_bits);
  mpfr_const_pi(out.get(), MPFR_RNDN);
  return out;
}

Real round_nearest(const Real& x) {
  Real out(x.precision());
  mpfr_round(out.get(), x.get());
  return out;
}

Real sin_pi(const Real& x) {
  // Reduce to |z| <= 1/2; subtracting an integer from x is exact at x's precision
  // whenever |x| < 2^precision, which always holds for the arguments used here.
  Real n = round_nearest(x);
  Real z = x;
  mpfr_sub(z.get(), z.get(), n.get(), MPFR_RNDN);
  Real arg = z * pi(x.precision());
  Real out(x.precision());
  mpfr_sin(out.get(), arg.get(), MPFR_RNDN);
  BigInt whole;
  mpfr_get_z(whole.get_mpz_t(), n.get(), MPFR_RNDN);
  if (mpz_odd_p(whole.get_mpz_t())) mpfr_neg(out.get(), out.get(), MPFR_RNDN);
  return out;
}

Real log_2sin_pi(const Real& x) {
  Real s = sin_pi(x);
  mpfr_abs(s.get(), s.get(), MPFR_RNDN);
  mpfr_mul_2ui(s.get(), s.get(), 1, MPFR_RNDN);
  return log(s);
}

long bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

}  // namespace sudler
