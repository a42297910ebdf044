#include <gtest/gtest.h>

#include "sudler/cfrac.hpp"

using sudler::BigInt;
using sudler::PeriodSpec;
using sudler::Permutation;
using sudler::QuadExt;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST(Convergents, Tables) {
  auto t = sudler::convergents(PeriodSpec{{1, 2}, 1}, 5);
  EXPECT_EQ(t.q, ints({0, 1, 1, 3, 4, 11}));
  EXPECT_EQ(t.p, ints({1, 0, 1, 2, 3, 8}));
  EXPECT_EQ(sudler::convergents(PeriodSpec{{1}, 1}, 6).q, ints({0, 1, 1, 2, 3, 5, 8}));
  EXPECT_EQ(sudler::convergents(PeriodSpec{{2, 3}, 1}, 5).q, ints({0, 1, 2, 7, 16, 55}));
}

TEST(Permute, Examples) {
  PeriodSpec p{{1, 2, 3}, 1};
  EXPECT_EQ(sudler::permute(p, Permutation::tau, 1).digits, (std::vector<long>{2, 3, 1}));
  EXPECT_EQ(sudler::permute(p, Permutation::sigma, 1).digits, (std::vector<long>{3, 2, 1}));
  EXPECT_EQ(sudler::permute(PeriodSpec{{1, 2}, 2}, Permutation::sigma, 2).digits, (std::vector<long>{1, 2}));
  EXPECT_EQ(sudler::permute(p, Permutation::tau, 3).digits, p.digits);
}

TEST(Spectral, PeriodOneTwo) {
  auto s = sudler::spectral(PeriodSpec{{1, 2}, 2});
  EXPECT_EQ(s.c, 4);
  EXPECT_EQ(s.D, 12);
  EXPECT_EQ(s.a, QuadExt(4, 1, 2, 12));
  EXPECT_EQ(s.b, QuadExt(4, -1, 2, 12));
  EXPECT_EQ(s.alpha, QuadExt(-2, 1, 2, 12));
  EXPECT_NEAR(s.alpha.to_double(), 0.7320508075688772, 1e-15);
  EXPECT_EQ(s.inv_ckek, QuadExt(0, 1, 1, 12));
  EXPECT_EQ(s.a * s.b, QuadExt::integer(1, 12));
}

TEST(Spectral, GoldenCase) {
  PeriodSpec p{{1}, 1};
  EXPECT_TRUE(p.is_golden());
  auto s = sudler::spectral(p);
  EXPECT_EQ(s.c, 1);
  EXPECT_EQ(s.D, 5);
  EXPECT_EQ(s.alpha, QuadExt(-1, 1, 2, 5));
  EXPECT_EQ(s.a * s.b, QuadExt::integer(-1, 5));
}

TEST(Spectral, Validation) {
  EXPECT_THROW(sudler::spectral(PeriodSpec{{}, 1}), std::invalid_argument);
  EXPECT_THROW(sudler::spectral(PeriodSpec{{1, 0}, 1}), std::invalid_argument);
  EXPECT_THROW(sudler::spectral(PeriodSpec{{1, 2}, 3}), std::invalid_argument);
}

TEST(Lambda, Examples) {
  auto g = sudler::spectral(PeriodSpec{{1}, 1});
  auto l2 = sudler::lambda_n(g, 2);
  EXPECT_EQ(l2, g.alpha - 1);
  EXPECT_LT(l2.sign(), 0);
  auto s = sudler::spectral(PeriodSpec{{1, 2}, 2});
  EXPECT_EQ(sudler::lambda_n(s, 2), QuadExt::integer(-1, 12) * s.b);
  for (long n = 1; n < 12; ++n) {
    EXPECT_EQ(abs(sudler::lambda_n(s, n + 2)), abs(s.b * sudler::lambda_n(s, n)));
  }
}

TEST(UofT, Examples) {
  auto s = sudler::spectral(PeriodSpec{{1, 2}, 2});
  EXPECT_EQ(sudler::u_of_t(s, 1), QuadExt(3, 1, 1, 12));  // 3 + 2 sqrt(3)
  for (long t = 1; t < 50; ++t) {
    QuadExt d = sudler::u_of_t(s, t) - s.A * t;
    EXPECT_EQ(d, sudler::delta_of_t(s, t));
    EXPECT_GT(d, QuadExt::integer(-1, 12));
    EXPECT_LE(d, QuadExt::integer(1, 12));
    EXPECT_LT(sudler::u_of_t(s, t), sudler::u_of_t(s, t + 1));
  }
  EXPECT_THROW(sudler::u_of_t(s, 0), std::invalid_argument);
}

TEST(RofT, ShiftedEndpoint) {
  // Even l: at t = q_l the quantity reduces to -b.
  auto s = sudler::spectral(PeriodSpec{{2, 7, 1, 3}, 2});
  const long ql = s.q_ell().get_si();
  EXPECT_EQ(sudler::r_of_t(s, ql).R, -s.b);
}

TEST(Canonical, Rotation) {
  EXPECT_EQ(sudler::canonical_rotation({3, 1, 2}), (std::vector<long>{1, 2, 3}));
  EXPECT_EQ(sudler::canonical_rotation({2, 1, 1}), (std::vector<long>{1, 1, 2}));
}
