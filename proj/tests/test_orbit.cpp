#include <random>

#include <gtest/gtest.h>

#include "sudler/cfrac.hpp"
#include "sudler/kernels.hpp"
#include "sudler/orbit.hpp"

using sudler::KroneckerOrbit;
using sudler::QuadExt;

TEST(Isqrt128, Exact) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const unsigned __int128 n = (static_cast<unsigned __int128>(rng()) << 62) ^ rng();
    const unsigned __int128 s = sudler::isqrt128(n);
    EXPECT_LE(s * s, n);
    EXPECT_GT((s + 1) * (s + 1), n);
  }
}

TEST(Orbit, MatchesExactFractionalParts) {
  for (const auto& digits : std::vector<std::vector<long>>{{1}, {1, 2}, {2, 3}, {1, 1, 2}, {7, 1, 30, 2}}) {
    const QuadExt alpha = sudler::fixed_point(digits);
    for (const QuadExt& beta : {alpha, -alpha, alpha * 3 - 1}) {
      const KroneckerOrbit orbit(beta);
      sudler::Real z(192), tmp(192), root(192);
      mpfr_set_si(root.get(), orbit.D(), MPFR_RNDN);
      mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
      for (std::int64_t t : {1L, 2L, 3L, 17L, 1000L, 98765L, 1234567L}) {
        const QuadExt f = orbit.exact_frac(t);
        const QuadExt half = QuadExt::rational(1, 2, f.D());
        const QuadExt signed_off = f < half ? f : f - 1;
        const sudler::Real ref = signed_off.to_real(192);
        EXPECT_NEAR(orbit.offset(t) / ref.to_double(), 1.0, 1e-13);
        orbit.offset(t, z.get(), root.get(), tmp.get());
        const sudler::Real rel = sudler::abs((z - ref) / ref);
        EXPECT_LT(rel.to_double(), 1e-50);
      }
    }
  }
}

TEST(Orbit, RejectsRationalAndOverflow) {
  EXPECT_THROW(KroneckerOrbit(QuadExt::rational(1, 3, 5)), std::invalid_argument);
  const KroneckerOrbit orbit(sudler::fixed_point({1}));
  EXPECT_THROW(orbit.split(0), std::invalid_argument);
  EXPECT_THROW(orbit.split(std::int64_t{1} << 62), std::overflow_error);
}

TEST(Kernels, ParallelMatchesSerial) {
  const KroneckerOrbit orbit(sudler::fixed_point({1, 2}));
  for (long prec : {53L, 128L}) {
    const sudler::Real shift(0.01, prec);
    const auto s = sudler::log_sine_sum_serial(orbit, 1, 50000, shift, prec);
    for (int workers : {1, 2, 4}) {
      const auto p = sudler::log_sine_sum_parallel(orbit, 1, 50000, shift, prec, workers);
      EXPECT_EQ(p.n_terms, s.n_terms);
      EXPECT_NEAR(p.sum.to_double(), s.sum.to_double(), prec == 53 ? 1e-9 : 1e-25);
    }
  }
}

TEST(Kernels, DeterministicAcrossWorkerCounts) {
  const KroneckerOrbit orbit(sudler::fixed_point({2, 3}));
  const sudler::Real zero(0L, 128);
  const auto one = sudler::log_sine_sum_parallel(orbit, 1, 40000, zero, 128, 1);
  const auto three = sudler::log_sine_sum_parallel(orbit, 1, 40000, zero, 128, 3);
  EXPECT_TRUE(one.sum == three.sum);
}
