#pragma once

// Scalar back-ends. `double` is the standard profile; `Quad` (IEEE binary128
// via libquadmath, 113-bit significand) is the extended profile.

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>

#include <quadmath.h>

namespace pgamma {

using Quad = __float128;

enum class PrecisionMode { standard, extended };

/// Target precision of a scalar back-end.
struct PrecisionProfile {
  PrecisionMode mode;
  int sig_digits;
};

template <class Real>
struct RealTraits;

template <>
struct RealTraits<double> {
  static constexpr PrecisionMode mode = PrecisionMode::standard;
  static constexpr int sig_digits = 15;
  static constexpr double epsilon = 2.220446049250313080847e-16;
  static constexpr int print_digits = 17;
  static constexpr double max_log = 709.0;
  static constexpr double min_log = -708.0;
};

template <>
struct RealTraits<Quad> {
  static constexpr PrecisionMode mode = PrecisionMode::extended;
  static constexpr int sig_digits = 30;
  static constexpr Quad epsilon = FLT128_EPSILON;
  static constexpr int print_digits = 36;
  static constexpr Quad max_log = 11356;
  static constexpr Quad min_log = -11355;
};

template <class Real>
constexpr PrecisionProfile precision_profile() {
  return {RealTraits<Real>::mode, RealTraits<Real>::sig_digits};
}

// Overload set so templated code can call rm::log(x) for either back-end.
namespace rm {

inline double log(double x) { return std::log(x); }
inline double log1p(double x) { return std::log1p(x); }
inline double exp(double x) { return std::exp(x); }
inline double expm1(double x) { return std::expm1(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double atan2(double y, double x) { return std::atan2(y, x); }
inline double hypot(double x, double y) { return std::hypot(x, y); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double floor(double x) { return std::floor(x); }
inline double fabs(double x) { return std::fabs(x); }
inline double pow(double x, double y) { return std::pow(x, y); }
inline double remainder(double x, double y) { return std::remainder(x, y); }
inline double ldexp(double x, int e) { return std::ldexp(x, e); }
inline bool isfinite(double x) { return std::isfinite(x); }

inline Quad log(Quad x) { return logq(x); }
inline Quad log1p(Quad x) { return log1pq(x); }
inline Quad exp(Quad x) { return expq(x); }
inline Quad expm1(Quad x) { return expm1q(x); }
inline Quad sin(Quad x) { return sinq(x); }
inline Quad cos(Quad x) { return cosq(x); }
inline Quad atan2(Quad y, Quad x) { return atan2q(y, x); }
inline Quad hypot(Quad x, Quad y) { return hypotq(x, y); }
inline Quad sqrt(Quad x) { return sqrtq(x); }
inline Quad floor(Quad x) { return floorq(x); }
inline Quad fabs(Quad x) { return fabsq(x); }
inline Quad pow(Quad x, Quad y) { return powq(x, y); }
inline Quad remainder(Quad x, Quad y) { return remainderq(x, y); }
inline Quad ldexp(Quad x, int e) { return ldexpq(x, e); }
inline bool isfinite(Quad x) { return finiteq(x) != 0; }

}  // namespace rm

template <class Real>
inline Real pi_v() {
  if constexpr (std::is_same_v<Real, Quad>) {
    return M_PIq;
  } else {
    return 3.141592653589793238462643383279502884;
  }
}

template <class Real>
inline Real two_pi_v() {
  return Real(2) * pi_v<Real>();
}

/// Decimal rendering with `digits` significant digits (default: enough to
/// round-trip the back-end).
std::string format_real(double x, int digits = RealTraits<double>::print_digits);
std::string format_real(Quad x, int digits = RealTraits<Quad>::print_digits);

/// Parses a decimal string at full back-end precision.
Quad parse_quad(const std::string& text);

template <class Real>
inline Real from_double(double x) {
  return static_cast<Real>(x);
}

}  // namespace pgamma
