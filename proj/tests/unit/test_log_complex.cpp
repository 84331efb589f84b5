#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "pgamma/log_complex.hpp"

using pgamma::Cplx;
using pgamma::ErrorCode;
using pgamma::LogComplex;
using pgamma::LogComplexX;
using pgamma::Quad;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const pgamma::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::DomainError;
}

bool arg_in_range(double a) { return a > -kPi && a <= kPi; }

}  // namespace

TEST(FromCartesian, Axes) {
  const auto one = LogComplex::from_cartesian(1, 0);
  EXPECT_EQ(one.log_mod(), 0.0);
  EXPECT_EQ(one.arg(), 0.0);

  const auto i = LogComplex::from_cartesian(0, 1);
  EXPECT_EQ(i.log_mod(), 0.0);
  EXPECT_DOUBLE_EQ(i.arg(), kPi / 2);

  const auto m2 = LogComplex::from_cartesian(-2, 0);
  EXPECT_DOUBLE_EQ(m2.log_mod(), std::log(2.0));
  EXPECT_DOUBLE_EQ(m2.arg(), kPi);

  // -2 - 0i sits on the same branch cut side as -2.
  EXPECT_DOUBLE_EQ(LogComplex::from_cartesian(-2, -0.0).arg(), kPi);
}

TEST(FromCartesian, ZeroIsRejected) {
  EXPECT_EQ(code_of([] { LogComplex::from_cartesian(0, 0); }), ErrorCode::ZeroNotRepresentable);
  EXPECT_EQ(code_of([] { LogComplex::from_cartesian(NAN, 1); }), ErrorCode::NonFinite);
}

TEST(FromCartesian, RoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1, 1);
  std::uniform_int_distribution<int> expo(-250, 250);
  for (int n = 0; n < 2000; ++n) {
    const double re = std::ldexp(mant(rng), expo(rng));
    const double im = std::ldexp(mant(rng), expo(rng));
    if (re == 0 && im == 0) continue;
    const auto c = LogComplex::from_cartesian(re, im).to_cartesian();
    const double scale = std::hypot(re, im);
    EXPECT_LE(std::hypot(c.re - re, c.im - im) / scale, 1e-12) << re << " " << im;
  }
}

TEST(MulDiv, Basics) {
  const auto i = LogComplex::from_cartesian(0, 1);
  const auto ii = mul(i, i);
  EXPECT_EQ(ii.log_mod(), 0.0);
  EXPECT_DOUBLE_EQ(ii.arg(), kPi);

  const auto z = LogComplex::from_cartesian(3, -4);
  EXPECT_EQ(mul(z, LogComplex::from_cartesian(1, 0)), z);
  const auto q = div(z, z);
  EXPECT_EQ(q.log_mod(), 0.0);
  EXPECT_EQ(q.arg(), 0.0);
}

TEST(MulDiv, TieAtMinusPiMapsToPi) {
  const auto a = LogComplex::from_log_polar(0, -kPi / 2);
  EXPECT_DOUBLE_EQ(mul(a, a).arg(), kPi);
  EXPECT_DOUBLE_EQ(LogComplex::from_log_polar(1, -kPi).arg(), kPi);
  EXPECT_DOUBLE_EQ(LogComplex::from_log_polar(1, 3 * kPi).arg(), kPi);
}

TEST(PowReal, Basics) {
  const auto two = LogComplex::from_log_polar(std::log(2.0), 0);
  const auto eight = pow_real(two, 3.0);
  EXPECT_DOUBLE_EQ(eight.log_mod(), 3 * std::log(2.0));
  EXPECT_EQ(eight.arg(), 0.0);

  const auto z = LogComplex::from_cartesian(-1.5, 0.25);
  EXPECT_EQ(pow_real(z, 1.0), z);

  const auto m1 = pow_real(LogComplex::from_log_polar(0, kPi / 2), 2.0);
  EXPECT_EQ(m1.log_mod(), 0.0);
  EXPECT_DOUBLE_EQ(m1.arg(), kPi);

  EXPECT_EQ(code_of([&] { pow_real(z, std::numeric_limits<double>::infinity()); }), ErrorCode::NonFinite);
}

TEST(Add, Basics) {
  const auto one = LogComplex::one();
  const auto two = add(one, one);
  EXPECT_DOUBLE_EQ(two.log_mod(), std::log(2.0));
  EXPECT_EQ(two.arg(), 0.0);

  EXPECT_EQ(code_of([&] { add(one, LogComplex::from_cartesian(-1, 0)); }),
            ErrorCode::CancellationToZero);
}

TEST(Add, HugePlusOneStaysFinite) {
  const double big = 400 * std::log(10.0);
  const auto huge = LogComplex::from_log_polar(big, 0);
  const auto sum = add(huge, LogComplex::one());
  EXPECT_TRUE(std::isfinite(sum.log_mod()));
  // The shift 1e-400 is far below one ulp of log_mod.
  EXPECT_EQ(sum.log_mod(), big);
  EXPECT_EQ(sum.arg(), 0.0);

  // The shift itself: ln(1 + 1e-400) = 1e-400 (1 - 5e-401 + ...).
  const auto shift = log1p_c(div(LogComplex::one(), huge));
  EXPECT_NEAR(shift.log_mod(), -big, 1e-14 * big);
  EXPECT_EQ(shift.arg(), 0.0);

  const auto shift_x = log1p_c(LogComplexX::from_log_polar(-Quad(400) * logq(Quad(10)), 0));
  EXPECT_LT(fabsq(shift_x.log_mod() + Quad(400) * logq(Quad(10))), Quad(1e-30));
}

TEST(Log1p, Examples) {
  const auto tiny = log1p_c(LogComplex::from_log_polar(-300 * std::log(10.0), 0.7));
  EXPECT_NEAR(tiny.log_mod(), -300 * std::log(10.0), 1e-12);
  EXPECT_NEAR(tiny.arg(), 0.7, 1e-15);

  const auto one = log1p_c(LogComplex::from_cartesian(std::numbers::e - 1, 0));
  EXPECT_NEAR(one.log_mod(), 0.0, 1e-15);
  EXPECT_EQ(one.arg(), 0.0);

  // ln(1 + 1e-20), 50-digit reference.
  const Quad expect = pgamma::parse_quad("9.9999999999999999999500000000000000000003333e-21");
  const auto x = log1p_c(LogComplexX::from_cartesian(pgamma::parse_quad("1e-20"), 0));
  const Quad got = expq(x.log_mod());
  EXPECT_LT(fabsq(got / expect - 1), Quad(1e-30));
  const auto xd = log1p_c(LogComplex::from_cartesian(1e-20, 0));
  EXPECT_NEAR(std::exp(xd.log_mod()) / 9.99999999999999999995e-21, 1.0, 1e-15);

  EXPECT_EQ(code_of([] { log1p_c(LogComplex::from_cartesian(-1, 0)); }),
            ErrorCode::SingularAtMinusOne);
}

TEST(Log1p, LargeArgument) {
  const auto x = LogComplex::from_log_polar(std::log(1e10), 2.0);
  const auto l = log1p_c(x).to_cartesian();
  const auto xc = x.to_cartesian();
  const double re = 0.5 * std::log((1 + xc.re) * (1 + xc.re) + xc.im * xc.im);
  const double im = std::atan2(xc.im, 1 + xc.re);
  EXPECT_NEAR(l.re, re, 1e-14 * std::fabs(re));
  EXPECT_NEAR(l.im, im, 1e-14);
}

class Properties : public ::testing::Test {
 protected:
  LogComplex random_value(double spread) {
    std::uniform_real_distribution<double> lm(-spread, spread);
    std::uniform_real_distribution<double> ang(-10, 10);
    return LogComplex::from_log_polar(lm(rng_), ang(rng_));
  }
  std::mt19937_64 rng_{20240611};
};

TEST_F(Properties, MulCommutesBitForBit) {
  for (int n = 0; n < 10000; ++n) {
    const auto a = random_value(700);
    const auto b = random_value(700);
    EXPECT_EQ(mul(a, b), mul(b, a));
  }
}

TEST_F(Properties, DivThenMulRestores) {
  for (int n = 0; n < 10000; ++n) {
    const auto a = random_value(1e6);
    const auto b = random_value(1e6);
    const auto back = mul(div(a, b), b);
    const double scale = std::max(1.0, std::fabs(a.log_mod()));
    EXPECT_LE(std::fabs(back.log_mod() - a.log_mod()) / scale, 1e-14);
    const double d = std::remainder(back.arg() - a.arg(), 2 * kPi);
    EXPECT_LE(std::fabs(d), 1e-14);
  }
}

TEST_F(Properties, IntegerPowerMatchesRepeatedMul) {
  for (int n = 0; n < 500; ++n) {
    const auto a = random_value(5);
    auto acc = a;
    for (int m = 1; m <= 64; ++m) {
      if (m > 1) acc = mul(acc, a);
      const auto p = pow_real(a, static_cast<double>(m));
      const double scale = std::max(1.0, std::fabs(p.log_mod()));
      EXPECT_LE(std::fabs(p.log_mod() - acc.log_mod()) / scale, 1e-13);
    }
  }
}

TEST_F(Properties, AddIsAssociative) {
  std::uniform_real_distribution<double> lm(0, 10 * std::log(10.0));
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int n = 0; n < 5000; ++n) {
    const auto a = LogComplex::from_log_polar(lm(rng_), ang(rng_));
    const auto b = LogComplex::from_log_polar(lm(rng_), ang(rng_));
    const auto c = LogComplex::from_log_polar(lm(rng_), ang(rng_));
    try {
      const auto l = add(add(a, b), c).to_cartesian();
      const auto r = add(a, add(b, c)).to_cartesian();
      const double scale = std::exp(std::max({a.log_mod(), b.log_mod(), c.log_mod()}));
      EXPECT_LE(pgamma::abs(l - r) / scale, 1e-13);
    } catch (const pgamma::Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::CancellationToZero);
    }
  }
}

TEST_F(Properties, ArgStaysNormalisedAlongOpChains) {
  std::uniform_int_distribution<int> op(0, 7);
  std::uniform_real_distribution<double> expo(-3, 3);
  int checked = 0;
  for (int chain = 0; chain < 100000; ++chain) {
    auto v = random_value(50);
    for (int step = 0; step < 4; ++step) {
      const auto w = random_value(50);
      try {
        switch (op(rng_)) {
          case 0: v = mul(v, w); break;
          case 1: v = div(v, w); break;
          case 2: v = pow_real(v, expo(rng_)); break;
          case 3: v = add(v, w); break;
          case 4: v = sub(v, w); break;
          case 5: v = neg(v); break;
          case 6: v = conj(v); break;
          default: v = log1p_c(div(v, LogComplex::from_log_polar(60, 0))); break;
        }
      } catch (const pgamma::Error&) {
        continue;
      }
      ASSERT_TRUE(arg_in_range(v.arg())) << v.arg();
      ++checked;
    }
  }
  EXPECT_GT(checked, 390000);
}

TEST(Extended, HasThirtyDigits) {
  const auto prof = pgamma::precision_profile<Quad>();
  EXPECT_EQ(prof.mode, pgamma::PrecisionMode::extended);
  EXPECT_GE(prof.sig_digits, 30);
  EXPECT_GE(pgamma::precision_profile<double>().sig_digits, 15);

  // 1 + 1e-31 - 1 survives.
  const auto a = LogComplexX::one();
  const auto b = LogComplexX::from_cartesian(pgamma::parse_quad("1e-31"), 0);
  const auto s = add(a, b);
  EXPECT_LT(fabsq(s.log_mod() / pgamma::parse_quad("1e-31") - 1), Quad(1e-2));
}
