// Periods, convergents and the spectral constants of a purely periodic
// quadratic irrational alpha = [0; a_1, ..., a_l repeated].
//
// Indexing is shifted: p_0 = 1, p_1 = 0, q_0 = 0, q_1 = 1 and
// q_{n+1} = a_n q_n + q_{n-1}, so q_2 = a_1.
#ifndef SUDLER_CFRAC_HPP
#define SUDLER_CFRAC_HPP

#include <string>
#include <vector>

#include "sudler/quadfield.hpp"

namespace sudler {

struct PeriodSpec {
  std::vector<long> digits;  // a_1 .. a_l, each >= 1
  int k = 1;                 // subsequence selector in 1..l

  int ell() const { return static_cast<int>(digits.size()); }
  /// a_n for any n >= 1 (and n <= 0 through the periodic extension).
  long digit(long n) const;
  /// k reduced into 0..l-1, the index used for c_k and e_k.
  int k_mod() const { return k % ell(); }
  long max_digit() const;
  /// First index in 1..l carrying the maximal digit.
  int argmax_digit() const;
  /// The golden-ratio case (1): excluded by the bound calculators.
  bool is_golden() const { return digits.size() == 1 && digits[0] == 1; }

  std::string to_string() const;

  /// Throws std::invalid_argument unless l >= 1, all digits >= 1, 1 <= k <= l.
  void validate() const;
};

/// Parses "1,2,3" (also accepts spaces) into a digit list.
std::vector<long> parse_digits(const std::string& text);

struct Convergents {
  std::vector<BigInt> p;
  std::vector<BigInt> q;
};

/// Tables p_0..p_{n_max}, q_0..q_{n_max}, seeded with p_0 = 1, p_1 = 0, q_0 = 0, q_1 = 1.
Convergents convergents(const PeriodSpec& period, long n_max);

enum class Permutation { tau, sigma };

/// tau_k = (a_{k+1}, ..., a_l, a_1, ..., a_k); sigma_k = (a_{k-1}, a_{k-2}, ..., a_{k-l}).
/// Both take k modulo l; tau_0 is the identity and sigma_1 the full reversal.
/// The returned spec keeps the input's k.
PeriodSpec permute(const PeriodSpec& period, Permutation which, int k);

/// Lexicographically smallest cyclic rotation.
std::vector<long> canonical_rotation(const std::vector<long>& digits);

struct SpectralData {
  PeriodSpec period;
  int ell = 0;
  long a_k = 0;
  BigInt c;
  BigInt D;
  QuadExt a;
  QuadExt b;
  QuadExt alpha;
  QuadExt alpha_sigma_k;
  QuadExt alpha_tau_k;
  QuadExt c_k;
  QuadExt e_k;
  QuadExt inv_ckek;  // 1/|c_k e_k|
  QuadExt A;         // 2/|c_k e_k|
  QuadExt ckek;      // |c_k e_k|
  // Convergent data of alpha_tau_k and alpha_sigma_k at index l and l+1.
  BigInt q_ell_tau, p_ell_tau, q_ell1_tau;
  BigInt q_ell_sigma, p_ell_sigma, q_ell1_sigma;
  Convergents table;  // convergents of alpha up to index 3l + 2

  bool even() const { return ell % 2 == 0; }
  /// q_l of alpha (equal for every rotation and reflection).
  const BigInt& q_ell() const { return q_ell_tau; }
};

/// Root in (0, 1) of q_l x^2 + (q_{l+1} - p_l) x - p_{l+1} = 0.
QuadExt fixed_point(const std::vector<long>& digits);

/// All spectral constants for (digits, k). Internal cross-checks that fail
/// (e.g. alpha_sigma_k from two derivations) throw std::logic_error.
SpectralData spectral(const PeriodSpec& period);

/// Lambda_n = q_n alpha - p_n, exactly.
QuadExt lambda_n(const SpectralData& spec, long n);

/// u_k(t) = 2(t/|c_k e_k| - {t alpha_sigma_k} + 1/2).
QuadExt u_of_t(const SpectralData& spec, long t);

/// delta_t = 1 - 2{t alpha_sigma_k}.
QuadExt delta_of_t(const SpectralData& spec, long t);

struct RValue {
  QuadExt R;
  QuadExt dist;       // ||R_t||
  QuadExt dist_plus;  // ||R_t + b||
};

/// R_t = {t p_l(tau)/q_l(tau)} + t(p_l(sigma)/q_l(sigma) - alpha_sigma) - 2bt/q_l(sigma).
RValue r_of_t(const SpectralData& spec, long t);

}  // namespace sudler

#endif  // SUDLER_CFRAC_HPP
