#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sudler/bounds.hpp"

using sudler::PeriodSpec;

namespace {

sudler::SpectralData at_max(const std::vector<long>& digits) {
  PeriodSpec p{digits, 1};
  p.k = p.argmax_digit();
  return sudler::spectral(p);
}

sudler::LimitOptions tight() {
  sudler::LimitOptions o;
  o.tol = 1e-10;
  return o;
}

}  // namespace

TEST(Constants, FAndG) {
  EXPECT_NEAR(sudler::f_of(6), 13.7 / 6 + 1 / (20 * std::log(6.0)) + 0.01 + 2.0 / 36, 1e-15);
  EXPECT_NEAR(sudler::f_of(6), 2.376794, 1e-6);
  for (long a : {2L, 3L, 6L, 23L, 1000L}) {
    const double ad = static_cast<double>(a);
    EXPECT_NEAR(sudler::f_of(a) - 0.01 - 2 / (ad * ad) - 1 / (20 * std::log(ad)), 13.7 / ad, 1e-13);
    EXPECT_LT(sudler::g_of(a), sudler::f_of(a));
  }
  EXPECT_NEAR(sudler::f_of(100000000), 0.01, 3e-3);
  EXPECT_THROW(sudler::f_of(1), std::invalid_argument);
  EXPECT_THROW(sudler::g_of(0), std::invalid_argument);
}

TEST(Reduced, Thresholds) {
  EXPECT_LT(sudler::reduced_bound_odd(22), 1.0);
  EXPECT_GT(sudler::reduced_bound_odd(21), 1.0);
  EXPECT_LT(sudler::reduced_bound_q1(21), 1.0);
  EXPECT_LT(sudler::reduced_bound_even(23), 1.0);
  EXPECT_GT(sudler::reduced_bound_even(22), 1.0);
  for (long a = 23; a < 200; ++a) {
    EXPECT_LT(sudler::reduced_bound_odd(a), 1.0);
    EXPECT_LT(sudler::reduced_bound_even(a), 1.0);
    EXPECT_LT(sudler::reduced_bound_q1(a), 1.0);
  }
}

TEST(CkUpper, Dispatch) {
  EXPECT_EQ(sudler::bound_kind(at_max({1, 7})), sudler::BoundKind::even_q1);
  EXPECT_EQ(sudler::bound_kind(at_max({2, 6})), sudler::BoundKind::even);
  EXPECT_EQ(sudler::bound_kind(at_max({7})), sudler::BoundKind::odd);
  EXPECT_EQ(sudler::bound_kind(at_max({1, 1, 6})), sudler::BoundKind::odd);
}

TEST(CkUpper, Preconditions) {
  EXPECT_THROW(sudler::ck_upper(at_max({1, 5})), std::invalid_argument);
  EXPECT_THROW(sudler::ck_upper(sudler::spectral(PeriodSpec{{1, 7}, 1})), std::invalid_argument);
}

TEST(CkUpper, BoundsTheConstant) {
  for (const auto& digits : std::vector<std::vector<long>>{
           {6}, {9}, {1, 7}, {2, 6}, {7, 3}, {1, 1, 6}, {6, 2, 1, 3}, {8, 8}, {1, 8, 2, 8}, {3, 1, 7, 1, 2}}) {
    const auto s = at_max(digits);
    EXPECT_GE(sudler::ck_upper(s), sudler::c_k_closed(s, tight()).value) << s.period.to_string();
  }
}

TEST(CkUpper, LargeDigitsCertify) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const int ell = std::uniform_int_distribution<int>(2, 5)(rng);
    std::vector<long> d(static_cast<size_t>(ell));
    for (auto& x : d) x = std::uniform_int_distribution<long>(1, 12)(rng);
    d[static_cast<size_t>(std::uniform_int_distribution<int>(0, ell - 1)(rng))] =
        std::uniform_int_distribution<long>(23, 60)(rng);
    EXPECT_LT(sudler::ck_upper(at_max(d)), 1.0) << PeriodSpec{d, 1}.to_string();
  }
}

TEST(Sandwich, SpecExamples) {
  const auto s = sudler::spectral(PeriodSpec{{1, 7}, 2});
  const double A = s.A.to_double();

  const auto r0 = sudler::sandwich(s, 0.0, tight());
  EXPECT_EQ(r0.branch, sudler::Branch::small_x);
  EXPECT_NEAR(r0.lower, 2 / M_PI * std::exp(-sudler::g_of(7)), 1e-15);
  EXPECT_EQ(r0.upper, 1.0);
  EXPECT_TRUE(r0.contained());

  const auto r1 = sudler::sandwich(s, A, tight());
  EXPECT_EQ(r1.branch, sudler::Branch::m_equals_1);
  EXPECT_EQ(r1.m_of_x, 1);
  EXPECT_TRUE(r1.contained());

  const auto r5 = sudler::sandwich(s, 5 * A, tight());
  EXPECT_EQ(r5.branch, sudler::Branch::large_x);
  EXPECT_EQ(r5.m_of_x, 5);
  EXPECT_TRUE(r5.contained());
  EXPECT_NEAR(r5.upper, 14 * A / 9 * std::exp(sudler::f_of(7)) / (5 * A), 1e-12);
}

TEST(Sandwich, RefusesNonMaximalIndex) {
  EXPECT_THROW(sudler::sandwich(sudler::spectral(PeriodSpec{{1, 7}, 1}), 1.0), std::invalid_argument);
}

TEST(Sandwich, RandomizedContainment) {
  std::mt19937_64 rng(5);
  for (const auto& digits : std::vector<std::vector<long>>{{6}, {1, 9}, {2, 1, 6}, {6, 2, 1, 3}}) {
    const auto s = at_max(digits);
    const double A = s.A.to_double();
    std::uniform_real_distribution<double> x(-12 * A, 12 * A);
    for (int i = 0; i < 40; ++i) {
      const auto r = sudler::sandwich(s, x(rng), tight());
      EXPECT_TRUE(r.contained()) << s.period.to_string() << " x=" << r.x << " " << r.lower << " " << r.g_value
                                 << " " << r.upper;
    }
  }
}

TEST(Identities, CkekBracketAndFormula) {
  for (int ell = 1; ell <= 3; ++ell) {
    for (const auto& d : sudler::scan_tuples(ell, 6)) {
      for (int k = 1; k <= ell; ++k) {
        const auto s = sudler::spectral(PeriodSpec{d, k});
        EXPECT_TRUE(sudler::ckek_bracket_holds(s)) << s.period.to_string() << " k=" << k;
        EXPECT_TRUE(sudler::ckek_formula_holds(s)) << s.period.to_string() << " k=" << k;
      }
    }
  }
}

TEST(Identities, RtProductsAndBracket) {
  for (int ell = 1; ell <= 4; ++ell) {
    for (const auto& d : sudler::scan_tuples(ell, 7)) {
      const auto s = at_max(d);
      if (s.a_k < 6) continue;
      const auto c = sudler::rt_product_check(s);
      EXPECT_TRUE(c.pass) << s.period.to_string() << " slack " << c.slack;
      if (s.even()) EXPECT_EQ(sudler::rt_bracket_violations(s), 0) << s.period.to_string();
    }
  }
}

TEST(Identities, RtBracketSmallDigits) {
  // Below a_k = 6 the 6/7 constant is not available; the a_k/(a_k+1) version still holds.
  for (const auto& d : std::vector<std::vector<long>>{{1, 2}, {2, 3}, {1, 2, 1, 3}, {2, 1, 1, 5}})
    EXPECT_EQ(sudler::rt_bracket_violations(at_max(d)), 0);
  EXPECT_THROW(sudler::rt_bracket_violations(at_max({1, 1, 2})), std::invalid_argument);
}

TEST(Identities, Discrepancy) {
  for (const auto& digits : std::vector<std::vector<long>>{{1}, {2}, {1, 8}, {3, 1, 4}, {1, 2, 1, 7}}) {
    const auto s = at_max(digits);
    for (std::int64_t n : {0, 17, 1000}) {
      for (std::int64_t N : {1, 5, 61, 400, 3000}) {
        const auto c = sudler::discrepancy_check(s, n, N);
        EXPECT_TRUE(c.pass) << s.period.to_string() << " n=" << n << " N=" << N;
      }
    }
  }
  EXPECT_THROW(sudler::discrepancy_check(at_max({2}), 0, 0), std::invalid_argument);
}

TEST(Identities, DiscrepancySumIsExact) {
  // Brute force in binary64 over a short window.
  const auto s = at_max({2, 5});
  const double a = s.alpha_sigma_k.to_double();
  double sum = 0;
  for (int t = 11; t <= 60; ++t) sum += 1 - 2 * (t * a - std::floor(t * a));
  const auto c = sudler::discrepancy_check(s, 10, 50);
  EXPECT_NEAR(50 - c.slack, std::fabs(sum), 1e-9);
}

TEST(Scan, Tuples) {
  const auto t = sudler::scan_tuples(2, 3);
  const std::vector<std::vector<long>> want{{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};
  EXPECT_EQ(t, want);
  EXPECT_EQ(sudler::scan_tuples(3, 2).size(), 4u);  // 111 112 122 222
  EXPECT_EQ(sudler::scan_tuples(1, 5).size(), 5u);
  EXPECT_THROW(sudler::scan_tuples(0, 3), std::invalid_argument);
}

TEST(Scan, TwoDigitThresholds) {
  const auto recs = sudler::scan(2, 10, 1e-8);
  for (const auto& r : recs) {
    if (r.digits[0] == 1 && r.digits[1] >= 2) {
      EXPECT_EQ(r.k_max, 2);
      EXPECT_EQ(r.verdict == sudler::Verdict::ge_1_numeric, r.digits[1] <= 3) << r.digits[1];
    }
    if (r.digits[0] == 2 && r.digits[1] >= 3) {
      EXPECT_EQ(r.verdict == sudler::Verdict::ge_1_numeric, r.digits[1] <= 4) << r.digits[1];
    }
    EXPECT_FALSE(r.inconclusive);
  }
}

TEST(Scan, MonotoneFamilies) {
  for (long a1 : {1L, 2L}) {
    double prev = INFINITY;
    for (long a2 = 2; a2 <= 10; ++a2) {
      const double C = sudler::c_k_closed(sudler::spectral(PeriodSpec{{a1, a2}, 2}), tight()).value;
      EXPECT_LT(C, prev);
      prev = C;
    }
  }
}

TEST(Scan, SmallestTuple) {
  const auto recs = sudler::scan(2, 1, 1e-8);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].verdict, sudler::Verdict::ge_1_numeric);
  EXPECT_EQ(recs[0].q_ell, "1");
}

TEST(Scan, WorkerCountDoesNotMatter) {
  const auto a = sudler::scan(3, 3, 1e-8, 1);
  const auto b = sudler::scan(3, 3, 1e-8, 4);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].digits, b[i].digits);
    EXPECT_EQ(a[i].C_k, b[i].C_k);
  }
}

TEST(Scan, StableUnderTolHalving) {
  const auto a = sudler::scan(2, 7, 1e-8);
  const auto b = sudler::scan(2, 7, 5e-9);
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].verdict, b[i].verdict);
}

TEST(Classify, Rules) {
  bool flag = false;
  EXPECT_EQ(sudler::classify(0.99, 0.9, 1e-8, flag), sudler::Verdict::certified_lt_1);
  EXPECT_EQ(sudler::classify(0.99, NAN, 1e-8, flag), sudler::Verdict::lt_1_numeric);
  EXPECT_EQ(sudler::classify(0.99, 3.0, 1e-8, flag), sudler::Verdict::lt_1_numeric);
  EXPECT_EQ(sudler::classify(1 - 5e-8, NAN, 1e-8, flag), sudler::Verdict::ge_1_numeric);
  EXPECT_TRUE(flag);
  EXPECT_EQ(sudler::classify(1.2, NAN, 1e-8, flag), sudler::Verdict::ge_1_numeric);
  EXPECT_FALSE(flag);
}
