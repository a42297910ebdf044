#include "sudler/quadfield.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sudler {

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of negative integer");
  BigInt out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

QuadExt::QuadExt(BigInt p, BigInt q, BigInt r, BigInt D)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), D_(std::move(D)) {
  if (D_ < 2 || mpz_perfect_square_p(D_.get_mpz_t())) {
    throw std::invalid_argument("field discriminant must be >= 2 and not a square, got " + D_.get_str());
  }
  if (r_ == 0) throw std::domain_error("zero denominator");
  normalize();
}

QuadExt QuadExt::rational(const BigInt& num, const BigInt& den, const BigInt& D) { return QuadExt(num, 0, den, D); }

void QuadExt::normalize() {
  if (r_ < 0) {
    r_ = -r_;
    p_ = -p_;
    q_ = -q_;
  }
  BigInt g = gcd(gcd(p_, q_), r_);
  if (g > 1) {
    mpz_divexact(p_.get_mpz_t(), p_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(q_.get_mpz_t(), q_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(r_.get_mpz_t(), r_.get_mpz_t(), g.get_mpz_t());
  }
}

void QuadExt::require_same_field(const QuadExt& other) const {
  if (D_ != other.D_) {
    throw std::invalid_argument("mixed fields: D=" + D_.get_str() + " vs D=" + other.D_.get_str());
  }
}

int QuadExt::sign() const {
  int sp = sgn(p_);
  int sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // p and q*sqrt(D) have opposite signs: compare p^2 with q^2 D (never equal).
  BigInt lhs = p_ * p_;
  BigInt rhs = q_ * q_ * D_;
  return lhs > rhs ? sp : sq;
}

mpq_class QuadExt::norm() const {
  mpq_class out(p_ * p_ - q_ * q_ * D_, r_ * r_);
  out.canonicalize();
  return out;
}

BigInt QuadExt::floor() const {
  // floor(q sqrt(D)) from the integer square root of q^2 D; sqrt(D) is irrational.
  BigInt m;
  if (q_ == 0) {
    m = 0;
  } else {
    BigInt s = isqrt(q_ * q_ * D_);
    m = q_ > 0 ? s : BigInt(-s - 1);
  }
  // p + q sqrt(D) lies in [p + m, p + m + 1), so its floor after division by r > 0
  // equals floor((p + m) / r).
  BigInt numer = p_ + m;
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), numer.get_mpz_t(), r_.get_mpz_t());
  return out;
}

QuadExt QuadExt::frac() const { return *this - floor(); }

QuadExt QuadExt::dist_to_nearest_integer() const {
  QuadExt f = frac();
  QuadExt g = QuadExt::integer(1, D_) - f;
  return f <= g ? f : g;
}

Real QuadExt::to_real(long precision_bits) const {
  if (precision_bits < 2) throw std::invalid_argument("precision_bits must be >= 2");
  const long work = precision_bits + 32;
  if (q_ == 0) {
    Real out(p_, work + bit_length(p_));
    out /= Real(r_, work + bit_length(r_));
    out.set_precision(precision_bits);
    return out;
  }
  const long guard = work + bit_length(p_) + bit_length(q_) + bit_length(D_) + bit_length(r_);
  Real root = sqrt(Real(D_, guard));
  Real qroot = Real(q_, guard) * root;
  Real out(guard);
  if (sgn(p_) * sgn(q_) >= 0) {
    out = Real(p_, guard) + qroot;
  } else {
    // Opposite signs cancel; use (p^2 - q^2 D) / (p - q sqrt(D)) instead.
    Real denom = Real(p_, guard) - qroot;
    out = Real(BigInt(p_ * p_ - q_ * q_ * D_), guard) / denom;
  }
  out /= Real(r_, guard);
  out.set_precision(precision_bits);
  return out;
}

double QuadExt::to_double() const { return to_real(53).to_double(); }

std::string QuadExt::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
  os << '(' << x.p_ << (x.q_ < 0 ? "-" : "+") << abs(x.q_) << "*sqrt(" << x.D_ << "))/" << x.r_;
  return os;
}

QuadExt& QuadExt::operator+=(const QuadExt& rhs) {
  require_same_field(rhs);
  p_ = p_ * rhs.r_ + rhs.p_ * r_;
  q_ = q_ * rhs.r_ + rhs.q_ * r_;
  r_ *= rhs.r_;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& rhs) {
  require_same_field(rhs);
  p_ = p_ * rhs.r_ - rhs.p_ * r_;
  q_ = q_ * rhs.r_ - rhs.q_ * r_;
  r_ *= rhs.r_;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& rhs) {
  require_same_field(rhs);
  BigInt np = p_ * rhs.p_ + q_ * rhs.q_ * D_;
  BigInt nq = p_ * rhs.q_ + q_ * rhs.p_;
  p_ = std::move(np);
  q_ = std::move(nq);
  r_ *= rhs.r_;
  normalize();
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& rhs) {
  require_same_field(rhs);
  if (rhs.is_zero()) throw std::domain_error("division by zero in Q(sqrt(" + D_.get_str() + "))");
  // x / y = x * conj(y) * r_y / (p_y^2 - q_y^2 D)
  BigInt n = rhs.p_ * rhs.p_ - rhs.q_ * rhs.q_ * D_;
  BigInt np = p_ * rhs.p_ - q_ * rhs.q_ * D_;
  BigInt nq = q_ * rhs.p_ - p_ * rhs.q_;
  p_ = np * rhs.r_;
  q_ = nq * rhs.r_;
  r_ *= n;
  normalize();
  return *this;
}

QuadExt qx_arith(const QuadExt& x, const QuadExt& y, QuadOp op) {
  switch (op) {
    case QuadOp::add:
      return x + y;
    case QuadOp::sub:
      return x - y;
    case QuadOp::mul:
      return x * y;
    case QuadOp::div:
      return x / y;
  }
  throw std::invalid_argument("unknown QuadOp");
}

QuadExt abs(const QuadExt& x) { return x.sign() < 0 ? -x : x; }

QuadExt pow(const QuadExt& x, unsigned long n) {
  QuadExt out = QuadExt::integer(1, x.D());
  QuadExt base = x;
  while (n > 0) {
    if (n & 1UL) out *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return out;
}

}  // namespace sudler
