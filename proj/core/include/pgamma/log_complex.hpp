#pragma once

// Extended-range complex arithmetic in log-polar form. A value is kept as
// (ln|z|, arg z) so products of millions of factors and powers with huge
// exponents never leave the representable range.

#include <algorithm>
#include <cmath>

#include "pgamma/error.hpp"
#include "pgamma/real.hpp"

namespace pgamma {

/// Plain cartesian complex number over either scalar back-end.
template <class Real>
struct Cplx {
  Real re{};
  Real im{};

  friend Cplx operator+(Cplx a, Cplx b) { return {a.re + b.re, a.im + b.im}; }
  friend Cplx operator-(Cplx a, Cplx b) { return {a.re - b.re, a.im - b.im}; }
  friend Cplx operator-(Cplx a) { return {-a.re, -a.im}; }
  friend Cplx operator*(Cplx a, Cplx b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator*(Real s, Cplx a) { return {s * a.re, s * a.im}; }
  // Smith's algorithm.
  friend Cplx operator/(Cplx a, Cplx b) {
    if (rm::fabs(b.re) >= rm::fabs(b.im)) {
      const Real r = b.im / b.re;
      const Real d = b.re + b.im * r;
      return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    const Real r = b.re / b.im;
    const Real d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
  }
  friend bool operator==(Cplx a, Cplx b) { return a.re == b.re && a.im == b.im; }
};

template <class Real>
inline Real abs(Cplx<Real> z) {
  return rm::hypot(z.re, z.im);
}

template <class Real>
inline Cplx<Real> conj(Cplx<Real> z) {
  return {z.re, -z.im};
}

/// Reduces an angle into (-pi, pi]; -pi itself maps to +pi.
template <class Real>
inline Real normalize_arg(Real a) {
  if (!rm::isfinite(a)) {
    throw Error(ErrorCode::NonFinite, "argument angle is not finite");
  }
  Real r = rm::remainder(a, two_pi_v<Real>());
  if (r <= -pi_v<Real>()) {
    r = pi_v<Real>();
  }
  return r;
}

/// (cos a, sin a), exact on the stored axis angles 0, +-pi/2 and pi so that
/// -1, i and -i round-trip exactly.
template <class Real>
inline Cplx<Real> unit_phase(Real a) {
  const Real half_pi = pi_v<Real>() / Real(2);
  if (a == Real(0)) return {Real(1), Real(0)};
  if (a == pi_v<Real>()) return {Real(-1), Real(0)};
  if (a == half_pi) return {Real(0), Real(1)};
  if (a == -half_pi) return {Real(0), Real(-1)};
  return {rm::cos(a), rm::sin(a)};
}

/// Principal ln(1 + x) for a cartesian x, accurate when |x| is tiny.
template <class Real>
inline Cplx<Real> log1p_cart(Cplx<Real> x) {
  const Real wr = Real(1) + x.re;
  if (wr == Real(0) && x.im == Real(0)) {
    throw Error(ErrorCode::SingularAtMinusOne, "log(1 + x) at x = -1");
  }
  const Real im = rm::atan2(x.im, wr);
  // |1 + x|^2 - 1 without forming 1 + x first.
  const Real mag2m1 = x.re * (Real(2) + x.re) + x.im * x.im;
  const Real re = rm::fabs(mag2m1) < Real(0.5) ? Real(0.5) * rm::log1p(mag2m1)
                                                : rm::log(rm::hypot(wr, x.im));
  return {re, im};
}

/// Nonzero complex number stored as (natural log of modulus, argument).
///
/// Invariants: log_mod is finite, arg lies in (-pi, pi]. Exact zero is not
/// representable; operations that would produce it throw.
template <class Real>
class BasicLogComplex {
 public:
  using real_type = Real;

  BasicLogComplex() = default;  // the value 1

  static BasicLogComplex from_log_polar(Real log_mod, Real arg) {
    if (!rm::isfinite(log_mod)) {
      throw Error(ErrorCode::NonFinite, "log-modulus is not finite");
    }
    return BasicLogComplex(log_mod, normalize_arg(arg));
  }

  static BasicLogComplex from_cartesian(Real re, Real im) {
    if (re == Real(0) && im == Real(0)) {
      throw Error(ErrorCode::ZeroNotRepresentable, "zero has no log-polar form");
    }
    if (!rm::isfinite(re) || !rm::isfinite(im)) {
      throw Error(ErrorCode::NonFinite, "cartesian input is not finite");
    }
    return BasicLogComplex(rm::log(rm::hypot(re, im)), normalize_arg(rm::atan2(im, re)));
  }

  static BasicLogComplex from_cartesian(Cplx<Real> z) { return from_cartesian(z.re, z.im); }

  static BasicLogComplex one() { return BasicLogComplex(); }

  Real log_mod() const { return log_mod_; }
  Real arg() const { return arg_; }

  /// Cartesian value; components overflow to infinity or flush to zero when
  /// the modulus is outside the back-end's range.
  Cplx<Real> to_cartesian() const {
    const Real m = rm::exp(log_mod_);
    const Cplx<Real> u = unit_phase(arg_);
    return {m * u.re, m * u.im};
  }

  bool in_floating_range() const {
    return log_mod_ < RealTraits<Real>::max_log && log_mod_ > RealTraits<Real>::min_log;
  }

  friend bool operator==(const BasicLogComplex&, const BasicLogComplex&) = default;

 private:
  BasicLogComplex(Real log_mod, Real arg) : log_mod_(log_mod), arg_(arg) {}

  Real log_mod_{0};
  Real arg_{0};
};

using LogComplex = BasicLogComplex<double>;
using LogComplexX = BasicLogComplex<Quad>;

template <class Real>
inline BasicLogComplex<Real> mul(const BasicLogComplex<Real>& a, const BasicLogComplex<Real>& b) {
  return BasicLogComplex<Real>::from_log_polar(a.log_mod() + b.log_mod(), a.arg() + b.arg());
}

template <class Real>
inline BasicLogComplex<Real> div(const BasicLogComplex<Real>& a, const BasicLogComplex<Real>& b) {
  return BasicLogComplex<Real>::from_log_polar(a.log_mod() - b.log_mod(), a.arg() - b.arg());
}

/// Principal-branch real power: modulus scales exactly, the phase is r times
/// the principal argument.
template <class Real>
inline BasicLogComplex<Real> pow_real(const BasicLogComplex<Real>& a, Real r) {
  if (!rm::isfinite(r)) {
    throw Error(ErrorCode::NonFinite, "exponent is not finite");
  }
  return BasicLogComplex<Real>::from_log_polar(a.log_mod() * r, a.arg() * r);
}

template <class Real>
inline BasicLogComplex<Real> neg(const BasicLogComplex<Real>& a) {
  return BasicLogComplex<Real>::from_log_polar(a.log_mod(), a.arg() + pi_v<Real>());
}

template <class Real>
inline BasicLogComplex<Real> conj(const BasicLogComplex<Real>& a) {
  return BasicLogComplex<Real>::from_log_polar(a.log_mod(), -a.arg());
}

/// a + b, computed as a * (1 + b/a) with the larger modulus factored out.
template <class Real>
BasicLogComplex<Real> add(const BasicLogComplex<Real>& a, const BasicLogComplex<Real>& b) {
  const auto& big = a.log_mod() >= b.log_mod() ? a : b;
  const auto& small = a.log_mod() >= b.log_mod() ? b : a;
  const auto ratio = div(small, big).to_cartesian();
  const Cplx<Real> w{Real(1) + ratio.re, ratio.im};
  const Real floor_tol = rm::pow(Real(10), Real(-(RealTraits<Real>::sig_digits + 5)));
  if (abs(w) < floor_tol) {
    throw Error(ErrorCode::CancellationToZero, "sum cancels below working precision");
  }
  const auto l = log1p_cart(ratio);
  return BasicLogComplex<Real>::from_log_polar(big.log_mod() + l.re, big.arg() + l.im);
}

template <class Real>
inline BasicLogComplex<Real> sub(const BasicLogComplex<Real>& a, const BasicLogComplex<Real>& b) {
  return add(a, neg(b));
}

/// ln(1 + x), returned in log-polar form so that results as small as x itself
/// (far below the back-end's underflow threshold) keep full relative accuracy.
template <class Real>
BasicLogComplex<Real> log1p_c(const BasicLogComplex<Real>& x) {
  using LC = BasicLogComplex<Real>;
  const Real tiny = rm::log(Real(1e-4));
  if (x.log_mod() < tiny) {
    // ln(1+x) = x * (1 - x/2 + x^2/3 - ...); x itself may underflow here,
    // which only drops corrections far below working precision.
    const Cplx<Real> xc = x.to_cartesian();
    const int terms = RealTraits<Real>::sig_digits / 4 + 3;
    Cplx<Real> series{Real(1) / Real(terms), Real(0)};
    for (int n = terms - 1; n >= 1; --n) {
      series = Cplx<Real>{Real(1) / Real(n), Real(0)} - xc * series;
    }
    return mul(x, LC::from_cartesian(series));
  }
  if (x.log_mod() > -tiny) {
    // ln(1+x) = ln x + ln(1 + 1/x)
    const Cplx<Real> inv = LC::from_log_polar(-x.log_mod(), -x.arg()).to_cartesian();
    const auto l = log1p_cart(inv);
    return LC::from_cartesian(x.log_mod() + l.re, normalize_arg(x.arg() + l.im));
  }
  const Cplx<Real> xc = x.to_cartesian();
  if (abs(Cplx<Real>{Real(1) + xc.re, xc.im}) <= Real(4) * RealTraits<Real>::epsilon) {
    throw Error(ErrorCode::SingularAtMinusOne, "ln(1 + x) is singular at x = -1");
  }
  const auto l = log1p_cart(xc);
  return LC::from_cartesian(l.re, l.im);
}

/// The complex number ln(a) (principal branch), itself in log-polar form.
template <class Real>
inline BasicLogComplex<Real> log_c(const BasicLogComplex<Real>& a) {
  return BasicLogComplex<Real>::from_cartesian(a.log_mod(), a.arg());
}

/// exp(l) where the exponent l is given in log-polar form.
template <class Real>
inline BasicLogComplex<Real> exp_c(const BasicLogComplex<Real>& l) {
  const auto c = l.to_cartesian();
  return BasicLogComplex<Real>::from_log_polar(c.re, c.im);
}

}  // namespace pgamma
