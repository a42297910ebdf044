// Thin RAII wrapper around an MPFR value with per-object precision.
#ifndef SUDLER_REAL_HPP
#define SUDLER_REAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace sudler {

using BigInt = mpz_class;

inline constexpr long kDefaultPrecisionBits = 128;

/// Arbitrary precision binary floating point number (round-to-nearest).
///
/// Binary operators produce a result at the larger of the two operand
/// precisions. All operations round to nearest.
class Real {
 public:
  explicit Real(long precision_bits = kDefaultPrecisionBits);
  Real(double value, long precision_bits);
  Real(long value, long precision_bits);
  Real(const BigInt& value, long precision_bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
  /// Changes the precision, rounding the held value.
  void set_precision(long precision_bits);

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }
  /// Decimal representation with `digits` significant digits.
  std::string to_string(int digits = 40) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  Real operator-() const;

  friend Real operator+(Real lhs, const Real& rhs);
  friend Real operator-(Real lhs, const Real& rhs);
  friend Real operator*(Real lhs, const Real& rhs);
  friend Real operator/(Real lhs, const Real& rhs);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pi(long precision_bits);
/// Nearest integer (ties away from zero), exact.
Real round_nearest(const Real& x);
/// sin(pi * x) with exact integer argument reduction.
Real sin_pi(const Real& x);
/// log|2 sin(pi * x)|; returns -inf when x is an integer.
Real log_2sin_pi(const Real& x);

/// Floor of the binary log of |x|, used for guard-bit sizing.
long bit_length(const BigInt& x);

}  // namespace sudler

#endif  // SUDLER_REAL_HPP
