// Limit functions G_k(alpha, eps), the constants C_k and the perturbed sinc
// product G(x), evaluated as truncated products over t with a tail correction.
#ifndef SUDLER_LIMITFN_HPP
#define SUDLER_LIMITFN_HPP

#include <cstdint>
#include <vector>

#include "sudler/cfrac.hpp"

namespace sudler {

/// Factors x = x0 + step * s, s = 0..count-1, each entering as
/// |1 - x^2/u_k(t)^2|^weight.
struct FactorFamily {
  double x0 = 0.0;
  double step = 2.0;
  std::int64_t count = 1;
  double weight = 1.0;
};

/// exp(log_prefactor) * prod_t prod_families, grouped per t in log space.
struct FactorSet {
  std::vector<FactorFamily> families;
  double log_prefactor = 0.0;
  bool zero_prefactor = false;

  double xmax() const;
};

struct LimitOptions {
  double tol = 1e-8;
  std::int64_t t_min = 1024;
  std::int64_t t_max = 100'000'000;
  int workers = 0;
  bool parallel = true;
};

struct TruncatedProduct {
  double value = 0.0;       // tail-corrected |product|
  double raw_value = 0.0;   // partial product up to T
  double log_abs = 0.0;     // log of value
  int sign = 1;             // sign of the signed product (meaningful for G(x))
  std::int64_t T = 0;
  double tail_bound = 0.0;  // magnitude of the log-tail correction beyond T
  double error_estimate = 0.0;
  double kappa = 0.0;       // 1/u^2 log-coefficient of the grouped term
  bool zero_factor = false;
};

/// prod over t of the grouped factors at the exact u_k(t) of `spec`.
/// Throws std::range_error when the largest factor needs more than t_max terms
/// before the tail expansion applies (even l with very large c).
TruncatedProduct evaluate_product(const SpectralData& spec, const FactorSet& factors, const LimitOptions& opts = {});

/// G(x) = prod_t (1 - x^2/u_k(t)^2).
TruncatedProduct g_of_x(const SpectralData& spec, double x, const LimitOptions& opts = {});

/// G_k(alpha, eps) in the parity-specific closed form.
TruncatedProduct g_limit(const SpectralData& spec, double eps, const LimitOptions& opts = {});

/// C_k = G_k(alpha, 0), assembled from its own product formula.
TruncatedProduct c_k_closed(const SpectralData& spec, const LimitOptions& opts = {});

/// Factor sets behind g_limit and c_k_closed, exposed for tests.
FactorSet limit_factors(const SpectralData& spec, double eps);
FactorSet constant_factors(const SpectralData& spec);

struct Residual {
  double value = 0.0;
  bool undefined = false;  // a factor vanished
};

/// |LHS/RHS - 1| of the parity-appropriate functional equation.
Residual functional_residual(const SpectralData& spec, const LimitOptions& opts = {});

/// |G_{k+1}(alpha, eps) - G_k(beta, eps)| for k = period.k, where beta = tau_1(alpha)
/// is the Gauss-map image and k+1 wraps to 1 after l.
double gauss_invariance_residual(const PeriodSpec& period, double eps, const LimitOptions& opts = {});

}  // namespace sudler

#endif  // SUDLER_LIMITFN_HPP
