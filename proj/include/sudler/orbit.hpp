// Exact positions of the Kronecker orbit t*beta modulo 1 for beta in Q(sqrt(D)).
#ifndef SUDLER_ORBIT_HPP
#define SUDLER_ORBIT_HPP

#include <cstdint>

#include <mpfr.h>

#include "sudler/quadfield.hpp"

namespace sudler {

/// Computes {t*beta} for beta = (P + Q sqrt(D)) / R directly for each t, with
/// the integer part decided exactly and the fractional remainder evaluated
/// without cancellation. Coordinates must fit in 64-bit integers and
/// (|Q| t)^2 D must stay below 2^126; otherwise std::overflow_error.
class KroneckerOrbit {
 public:
  explicit KroneckerOrbit(const QuadExt& beta);

  /// Exact split of t*beta*R = S + phi with S an integer and phi in (0, 1).
  struct Split {
    std::int64_t residue;   // S mod R, in 0..R-1
    std::uint64_t F;        // isqrt(W^2 D), W = |Q| t
    std::uint64_t W;
    std::uint64_t num;      // W^2 D - F^2, numerator of frac(W sqrt(D))
    bool negative;          // Q < 0: phi = 1 - frac(W sqrt(D))
  };

  Split split(std::int64_t t) const;

  /// Signed distance from t*beta to its nearest integer, in [-1/2, 1/2).
  double offset(std::int64_t t) const;

  /// Same at MPFR precision; `sqrt_d` must hold sqrt(D) at least at out's precision.
  /// `tmp` is scratch of the same precision.
  void offset(std::int64_t t, mpfr_ptr out, mpfr_srcptr sqrt_d, mpfr_ptr tmp) const;

  /// floor(t*beta), exactly.
  std::int64_t floor_at(std::int64_t t) const;

  /// Exact {t*beta}, for cross-checks.
  QuadExt exact_frac(std::int64_t t) const;

  std::int64_t P() const { return P_; }
  std::int64_t Q() const { return Q_; }
  std::int64_t R() const { return R_; }
  std::int64_t D() const { return D_; }

 private:
  std::int64_t P_;
  std::int64_t Q_;
  std::int64_t R_;
  std::int64_t D_;
  double sqrt_d_;
};

/// Floor of the square root of a 128-bit unsigned integer.
unsigned __int128 isqrt128(unsigned __int128 n);

}  // namespace sudler

#endif  // SUDLER_ORBIT_HPP
