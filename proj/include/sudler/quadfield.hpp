// Exact arithmetic in the real quadratic field Q(sqrt(D)).
#ifndef SUDLER_QUADFIELD_HPP
#define SUDLER_QUADFIELD_HPP

#include <iosfwd>
#include <string>

#include "sudler/real.hpp"

namespace sudler {

/// The element (p + q*sqrt(D)) / r with integer coordinates.
///
/// Canonical form: r > 0 and gcd(p, q, r) = 1, so equality is coordinate
/// equality. D >= 2 and not a perfect square; it need not be squarefree.
/// Elements over different D never mix: every binary operation checks D and
/// throws std::invalid_argument on mismatch.
class QuadExt {
 public:
  /// Zero of Q(sqrt(2)); a placeholder meant to be assigned over.
  QuadExt() : QuadExt(0, 0, 1, 2) {}
  QuadExt(BigInt p, BigInt q, BigInt r, BigInt D);

  static QuadExt rational(const BigInt& num, const BigInt& den, const BigInt& D);
  static QuadExt integer(const BigInt& n, const BigInt& D) { return rational(n, 1, D); }
  /// sqrt(D) itself.
  static QuadExt root(const BigInt& D) { return QuadExt(0, 1, 1, D); }

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& r() const { return r_; }
  const BigInt& D() const { return D_; }

  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }
  int sign() const;

  QuadExt conjugate() const { return QuadExt(p_, -q_, r_, D_); }
  /// Field norm x * conj(x), a rational number.
  mpq_class norm() const;

  /// Largest integer n with n <= x, decided by integer square-root bracketing.
  BigInt floor() const;
  /// x - floor(x), exactly in [0, 1).
  QuadExt frac() const;
  /// min(frac(x), 1 - frac(x)).
  QuadExt dist_to_nearest_integer() const;

  /// Value rounded to `precision_bits` bits, within one ulp.
  Real to_real(long precision_bits) const;
  double to_double() const;

  std::string to_string() const;

  QuadExt operator-() const { return QuadExt(-p_, -q_, r_, D_); }
  QuadExt& operator+=(const QuadExt& rhs);
  QuadExt& operator-=(const QuadExt& rhs);
  QuadExt& operator*=(const QuadExt& rhs);
  QuadExt& operator/=(const QuadExt& rhs);

  friend QuadExt operator+(QuadExt lhs, const QuadExt& rhs) { return lhs += rhs; }
  friend QuadExt operator-(QuadExt lhs, const QuadExt& rhs) { return lhs -= rhs; }
  friend QuadExt operator*(QuadExt lhs, const QuadExt& rhs) { return lhs *= rhs; }
  friend QuadExt operator/(QuadExt lhs, const QuadExt& rhs) { return lhs /= rhs; }

  // Integer operands are embedded into the left operand's field.
  friend QuadExt operator+(const QuadExt& lhs, long rhs) { return lhs + QuadExt::integer(rhs, lhs.D_); }
  friend QuadExt operator-(const QuadExt& lhs, long rhs) { return lhs - QuadExt::integer(rhs, lhs.D_); }
  friend QuadExt operator*(const QuadExt& lhs, long rhs) { return lhs * QuadExt::integer(rhs, lhs.D_); }
  friend QuadExt operator/(const QuadExt& lhs, long rhs) { return lhs / QuadExt::integer(rhs, lhs.D_); }
  friend QuadExt operator*(const QuadExt& lhs, const BigInt& rhs) { return lhs * QuadExt::integer(rhs, lhs.D_); }
  friend QuadExt operator/(const QuadExt& lhs, const BigInt& rhs) { return lhs / QuadExt::integer(rhs, lhs.D_); }
  friend QuadExt operator+(const QuadExt& lhs, const BigInt& rhs) { return lhs + QuadExt::integer(rhs, lhs.D_); }
  friend QuadExt operator-(const QuadExt& lhs, const BigInt& rhs) { return lhs - QuadExt::integer(rhs, lhs.D_); }

  friend bool operator==(const QuadExt& a, const QuadExt& b) {
    return a.D_ == b.D_ && a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_;
  }
  friend bool operator!=(const QuadExt& a, const QuadExt& b) { return !(a == b); }
  friend bool operator<(const QuadExt& a, const QuadExt& b) { return (a - b).sign() < 0; }
  friend bool operator>(const QuadExt& a, const QuadExt& b) { return (a - b).sign() > 0; }
  friend bool operator<=(const QuadExt& a, const QuadExt& b) { return (a - b).sign() <= 0; }
  friend bool operator>=(const QuadExt& a, const QuadExt& b) { return (a - b).sign() >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& x);

 private:
  void normalize();
  void require_same_field(const QuadExt& other) const;

  BigInt p_;
  BigInt q_;
  BigInt r_;
  BigInt D_;
};

enum class QuadOp { add, sub, mul, div };

/// Exact field arithmetic dispatched on `op`.
QuadExt qx_arith(const QuadExt& x, const QuadExt& y, QuadOp op);

QuadExt abs(const QuadExt& x);
/// x^n for n >= 0 by repeated squaring.
QuadExt pow(const QuadExt& x, unsigned long n);

/// Floor of sqrt(n) for n >= 0.
BigInt isqrt(const BigInt& n);

}  // namespace sudler

#endif  // SUDLER_QUADFIELD_HPP
