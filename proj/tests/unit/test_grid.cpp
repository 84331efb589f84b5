#include <cmath>

#include <gtest/gtest.h>

#include "pgamma/error.hpp"
#include "pgamma/grid.hpp"

using pgamma::GridSpec;

TEST(Grid, HalfOpenUnit) {
  const auto g = GridSpec::half_open_unit();
  const auto pts = g.points();
  ASSERT_EQ(pts.size(), 64U);
  EXPECT_EQ(pts.front(), std::complex<double>(0.5 + 0x1p-20, 0));
  EXPECT_EQ(pts.back(), std::complex<double>(2.0, 0));
  for (std::size_t j = 1; j < pts.size(); ++j) EXPECT_LT(pts[j - 1].real(), pts[j].real());
}

TEST(Grid, Deterministic) {
  GridSpec g;
  g.kind = pgamma::GridKind::circle;
  g.center = {0.5, 0.0};
  g.radius = 3.25;
  g.count = 37;
  const auto a = g.points();
  const auto b = g.points();
  ASSERT_EQ(a.size(), 37U);
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_EQ(a[j].real(), b[j].real());
    EXPECT_EQ(a[j].imag(), b[j].imag());
    EXPECT_NEAR(std::abs(a[j] - g.center), 3.25, 1e-14);
  }
  EXPECT_EQ(a.front(), std::complex<double>(3.75, 0));
}

TEST(Grid, OpenRightAndComplexSegment) {
  GridSpec g;
  g.start = {2.0, -5.0};
  g.end = {2.0, 5.0};
  g.count = 11;
  g.endpoint = pgamma::EndpointPolicy::open_right;
  const auto pts = g.points();
  EXPECT_EQ(pts.front(), std::complex<double>(2.0, -5.0));
  EXPECT_EQ(pts.back(), std::complex<double>(2.0, 5.0 - 0x1p-20));
  EXPECT_EQ(pts[5], std::complex<double>(2.0, 0.0));
}

TEST(Grid, Validation) {
  auto code = [](GridSpec g) {
    try {
      g.validate();
    } catch (const pgamma::Error& e) {
      return e.code();
    }
    return pgamma::ErrorCode::NonFinite;
  };
  GridSpec circle;
  circle.kind = pgamma::GridKind::circle;
  circle.radius = 0;
  EXPECT_EQ(code(circle), pgamma::ErrorCode::DomainError);
  GridSpec few;
  few.count = 1;
  EXPECT_EQ(code(few), pgamma::ErrorCode::DomainError);
  GridSpec flat;
  flat.end = flat.start;
  EXPECT_EQ(code(flat), pgamma::ErrorCode::DomainError);
  EXPECT_THROW(circle.points(), pgamma::Error);
}
