#include <random>

#include <gtest/gtest.h>

#include "sudler/quadfield.hpp"

using sudler::BigInt;
using sudler::QuadExt;
using sudler::QuadOp;

namespace {

const BigInt kD = 12;

QuadExt qx(long p, long q, long r) { return QuadExt(p, q, r, kD); }

}  // namespace

TEST(QuadExt, ArithmeticExamples) {
  EXPECT_EQ(sudler::qx_arith(qx(1, 0, 1), qx(0, 1, 1), QuadOp::add), qx(1, 1, 1));
  EXPECT_EQ(sudler::qx_arith(qx(0, 1, 1), qx(0, 1, 1), QuadOp::mul), qx(12, 0, 1));
  // a * b = 1 for c = 4
  EXPECT_EQ(sudler::qx_arith(qx(4, 1, 2), qx(4, -1, 2), QuadOp::mul), qx(1, 0, 1));
}

TEST(QuadExt, Normalization) {
  QuadExt x(4, 2, -6, kD);
  EXPECT_EQ(x.p(), -2);
  EXPECT_EQ(x.q(), -1);
  EXPECT_EQ(x.r(), 3);
}

TEST(QuadExt, Errors) {
  EXPECT_THROW(QuadExt(1, 1, 1, 16), std::invalid_argument);
  EXPECT_THROW(QuadExt(1, 1, 0, kD), std::domain_error);
  EXPECT_THROW(qx(1, 1, 1) / qx(0, 0, 1), std::domain_error);
  EXPECT_THROW(qx(1, 1, 1) + QuadExt(1, 1, 1, 5), std::invalid_argument);
}

TEST(QuadExt, FloorAndFrac) {
  EXPECT_EQ(qx(0, 1, 1).floor(), 3);
  EXPECT_EQ(qx(7, 0, 2).floor(), 3);
  EXPECT_EQ(qx(-2, 1, 1).floor(), 1);
  EXPECT_EQ(qx(0, -1, 1).floor(), -4);
  EXPECT_EQ(qx(0, 1, 1).frac(), qx(-3, 1, 1));
  EXPECT_TRUE(qx(5, 0, 1).frac().is_zero());
  EXPECT_EQ(qx(-2, 1, 1).frac(), qx(-3, 1, 1));
}

TEST(QuadExt, ToReal) {
  EXPECT_DOUBLE_EQ(qx(0, 1, 1).to_double(), 3.4641016151377544);
  EXPECT_DOUBLE_EQ(qx(1, 0, 1).to_double(), 1.0);
  EXPECT_DOUBLE_EQ(qx(4, -1, 2).to_double(), 0.2679491924311227);
}

TEST(QuadExt, ToRealRefinesAcrossPrecisions) {
  // Large cancellation: 10^20 - sqrt(10^40 - 1) ~ 5e-21.
  const BigInt D = BigInt("10000000000000000000000000000000000000000") - 1;
  QuadExt x(BigInt("100000000000000000000"), -1, 1, D);
  for (long p : {53L, 64L, 128L, 256L}) {
    sudler::Real lo = x.to_real(p);
    sudler::Real hi = x.to_real(2 * p);
    sudler::Real diff = sudler::abs(lo - hi) / sudler::abs(hi);
    EXPECT_LT(diff.to_double(), std::ldexp(1.0, static_cast<int>(-(p - 2))));
  }
  EXPECT_NEAR(x.to_double() / 5e-21, 1.0, 1e-12);
}

TEST(QuadExt, FieldAxiomsRandomized) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 50);
  auto draw = [&]() { return QuadExt(coef(rng), coef(rng), den(rng), 21); };
  for (int i = 0; i < 300; ++i) {
    QuadExt x = draw(), y = draw(), z = draw();
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    if (!y.is_zero()) EXPECT_EQ((x / y) * y, x);
    const QuadExt f = x.frac();
    EXPECT_EQ(f + x.floor(), x);
    EXPECT_GE(f.sign(), 0);
    EXPECT_LT(f, QuadExt::integer(1, 21));
    EXPECT_EQ(x < y, x.to_double() < y.to_double());
  }
}
