#pragma once

// Riemann zeta, Euler gamma and Riemann xi evaluators, plus residual checks
// for the functional equation and for double symmetry.

#include <complex>
#include <cstdint>

#include "pgamma/log_complex.hpp"

namespace pgamma::classical {

using Complex = std::complex<double>;

/// Truncation control for the series and product evaluators.
struct SeriesTolerance {
  double rel_tol = 1e-12;
  int max_terms = 4000;

  /// Throws DomainError unless 0 < rel_tol < 1 and max_terms >= 16.
  void validate() const;
};

/// Euler's constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// zeta(s) from the globally convergent binomial double series
///
///   zeta(s) = 1/(1 - 2^(1-s)) * sum_n 2^-(n+1) sum_k (-1)^k C(n,k) (k+1)^-s,
///
/// valid for every s != 1. The outer sum stops once three consecutive terms
/// fall below rel_tol times the largest partial sum seen so far.
///
/// Throws PoleAtOne at s = 1, NearExclusionPoint where |1 - 2^(1-s)| < 1e-8
/// (the removable points 1 - 2 pi i m / log 2), MaxTermsExceeded.
Complex zeta_hasse(Complex s, const SeriesTolerance& tol = {});

struct IntegralZeta {
  Complex value;
  /// Upper bound on the dropped tail |s| / (Re(s) * n^Re(s)).
  double tail_bound;
};

/// zeta(s) = s/(s-1) - s * int_1^inf (v - floor v) / v^(s+1) dv for Re(s) > 0,
/// with the integral cut after n_intervals unit intervals. Each interval is
/// integrated exactly; the cut tail is reported, not corrected.
IntegralZeta zeta_integral(Complex s, std::int64_t n_intervals);

/// Gamma(s) from the Weierstrass product
///
///   1/Gamma(s) = s e^(gamma0 s) prod_n (1 + s/n) e^(-s/n).
///
/// The log-product is summed to M factors and the remaining factors are
/// summed in closed form by Euler-Maclaurin, with M grown until the
/// remainder estimate is below rel_tol. Throws PoleAtNonpositiveInteger
/// within 1e-12 of 0, -1, -2, ... and MaxTermsExceeded if M > max_terms.
LogComplex gamma_weierstrass(Complex s, const SeriesTolerance& tol = {});

/// xi(s) = pi^(-s/2) * (s/2) Gamma(s/2) * (s-1) zeta(s). The removable points
/// use the limits (s/2)Gamma(s/2) -> 1 at s = 0 and (s-1)zeta(s) -> 1 at s = 1.
LogComplex xi(Complex s, const SeriesTolerance& tol = {});

/// |L - R| / (|L| + |R|) for L = pi^(-(1-s)/2) Gamma((1-s)/2) zeta(1-s) and
/// R = pi^(-s/2) Gamma(s/2) zeta(s).
double functional_eq_residual(Complex s, const SeriesTolerance& tol = {});

struct SymmetryResidual {
  double conjugate;   // |f(conj s) - conj f(s)| / |f(s)|
  double reflection;  // |f(1 - s) - f(s)| / |f(s)|
};

/// Relative distance |a - b| / |ref| computed without leaving log scale for
/// the common magnitude.
template <class Real>
double relative_gap(const BasicLogComplex<Real>& a, const BasicLogComplex<Real>& b,
                    const BasicLogComplex<Real>& ref) {
  const auto ca = BasicLogComplex<Real>::from_log_polar(a.log_mod() - ref.log_mod(), a.arg())
                      .to_cartesian();
  const auto cb = BasicLogComplex<Real>::from_log_polar(b.log_mod() - ref.log_mod(), b.arg())
                      .to_cartesian();
  return static_cast<double>(abs(ca - cb));
}

/// Residuals of f(conj s) = conj f(s) and f(1 - s) = f(s). `f` maps a
/// std::complex<double> to a BasicLogComplex.
template <class F>
SymmetryResidual double_symmetry_residual(F&& f, Complex s) {
  const auto fs = f(s);
  const auto fbar = f(std::conj(s));
  const auto frefl = f(Complex(1.0, 0.0) - s);
  return {relative_gap(fbar, conj(fs), fs), relative_gap(frefl, fs, fs)};
}

}  // namespace pgamma::classical
