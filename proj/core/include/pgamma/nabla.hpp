#pragma once

// The pseudo-Gamma function
//
//   nabla(s) = (w2/w1)^q * [ prod_{k=1}^{N} (z - e^{i k pi/2^K} w1)
//                                         / (z - e^{i k pi/2^K} w2) ]^(q/N),
//
// z = s - 1/2, w1 = W1 - 1/2 = 3R + R^(1/4), w2 = W2 - 1/2 = 3R, N = 2^(K+1),
// together with the per-factor ratio used to bound it on (1/2, 2] and the
// bound checks built on top.
//
// Two evaluators are provided. nabla_direct enumerates the N factors and is
// limited to N <= 2^26. nabla_closed uses that the rotations e^{i k pi/2^K},
// k = 1..N, are exactly the N-th roots of unity, so
//
//   prod_k (z - w e^{i k pi/2^K}) = z^N - w^N,
//
// which makes N = 2^160 as cheap as N = 8. Moduli are branch independent;
// phases follow principal logarithms and are only compared modulo 2 pi q/N.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pgamma/grid.hpp"
#include "pgamma/log_complex.hpp"

namespace pgamma::nabla {

enum class Regime { paper, toy };
std::string_view to_string(Regime regime) noexcept;

/// Zero-verification height; regime "paper" needs R >= 2 T0 - 1.
inline constexpr std::int64_t kT0 = 2445999554999;

/// nabla_direct enumerates at most 2^kDirectMaxExponent factors.
inline constexpr int kDirectMaxExponent = 26;

/// Index k of a rotation e^{i k pi/2^K}; wide because N reaches 2^160.
using RootIndex = boost::multiprecision::cpp_int;

template <class Real>
struct Params {
  Real R{};
  Real T{};
  Real Omega{};
  Real alpha{};
  Real gamma_grave{};  // 0.3674
  Real W1{};
  Real W2{};
  Real q{};
  int K = 0;  // N = 2^(K+1) is never materialised
  Regime regime = Regime::toy;
  std::optional<int> k_override;
  std::vector<std::string> provenance;

  int n_exponent() const { return K + 1; }
  /// W1 - 1/2 and W2 - 1/2, formed from R directly.
  Real w1() const { return Real(3) * R + rm::sqrt(rm::sqrt(R)); }
  Real w2() const { return Real(3) * R; }
  /// q / N
  Real q_over_n() const { return rm::ldexp(q, -n_exponent()); }
};

/// Derives every parameter from (R, Omega, alpha):
///   W1 = 3R + R^(1/4) + 1/2, W2 = 3R + 1/2,
///   q  = ((R - 1/2 + 2 alpha) log R + 2 log Omega) / (2 * 0.3674 * R^(1/4)),
///   K  = floor((15 log R + 2 log 12) / (4 log 2))  unless overridden.
///
/// Throws PreconditionViolation for R <= 5, Omega <= 0, alpha <= 0, q <= 0 or
/// K < 1; RegimeViolation for regime "paper" below R = 2 T0 - 1;
/// InvalidOverride for a K override in regime "paper".
template <class Real>
Params<Real> params_from(Real R, Real Omega, Real alpha, Regime regime,
                         std::optional<int> k_override = std::nullopt);

/// Constants of the circle estimate.
struct Prop2Constants {
  double a_grave = 1.0005;
  double a_acute = 1.006;
  double b_grave = 6.9e-26;
  double b_acute = 6.8e-26;
  double gamma_bar = 1e-81;
};

/// One inequality inside a report. lhs <= rhs (or lhs < rhs when strict) is
/// the claim; margin = rhs - lhs. Non-strict stages hold when
/// margin >= -tolerance, strict ones when margin > tolerance, where tolerance
/// bounds the rounding error of the evaluation.
struct BoundStage {
  std::string label;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  double tolerance = 0;
  bool strict = false;
  bool holds = false;
  std::string lhs_text;  // full working precision
  std::string rhs_text;
  std::string margin_text;
};

/// Verdict of one check. lhs/rhs/margin summarise the headline comparison;
/// holds is true iff every stage holds.
struct BoundReport {
  std::string name;
  std::string identity;  // which inequality the check corresponds to
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  bool holds = false;
  bool asserted = true;  // false for report-only checks
  Regime regime = Regime::toy;
  bool k_override_active = false;
  std::vector<BoundStage> stages;
  std::vector<std::string> notes;
};

/// e^{i k pi / 2^K}, exact on the four axis directions.
template <class Real>
Cplx<Real> root_of_unity(std::uint64_t k, int K);
template <class Real>
Cplx<Real> root_of_unity(const RootIndex& k, int K);

/// Sum over k of the principal logs of the factors (z - w_k1)/(z - w_k2),
/// imaginary part left unreduced. Throws ProductTooLarge above 2^26 factors
/// (except at s = 1/2, where all factors coincide), FactorPole when a
/// denominator vanishes to 1e-12 relative.
template <class Real>
Cplx<Real> nabla_direct_bracket_log(Cplx<Real> s, const Params<Real>& p);

/// nabla(s) by direct enumeration of the factors.
template <class Real>
BasicLogComplex<Real> nabla_direct(Cplx<Real> s, const Params<Real>& p);

/// Principal log of the collapsed bracket (z^N - w1^N)/(z^N - w2^N).
/// Throws DenominatorPole when z^N = w2^N to 1e-12 relative.
template <class Real>
Cplx<Real> nabla_closed_bracket_log(Cplx<Real> s, const Params<Real>& p);

/// log nabla(s) itself, in log-polar form, so that values like
/// exp(-1e49) stay visible; empty when nabla(s) = 1 exactly (s = 1/2).
template <class Real>
std::optional<BasicLogComplex<Real>> nabla_closed_log(Cplx<Real> s, const Params<Real>& p);

/// nabla(s) through the roots-of-unity collapse.
template <class Real>
BasicLogComplex<Real> nabla_closed(Cplx<Real> s, const Params<Real>& p);

/// Correction c in R(u; k) = 1 + c, where
///   c = (W1 - W2)(u - 1/2) e^{-i k pi/2^K}
///       / ((W1 - 1/2)((W2 - 1/2) - (u - 1/2) e^{-i k pi/2^K})).
/// Requires 1/2 < u <= 2 and 1 <= k <= N.
template <class Real>
Cplx<Real> ratio_factor_correction(Real u, const RootIndex& k, const Params<Real>& p);

/// R(u; k), simplified form.
template <class Real>
Cplx<Real> ratio_factor(Real u, const RootIndex& k, const Params<Real>& p);

/// R(u; k) as the quotient of the k-th factor at u by the k-th factor at 1/2.
template <class Real>
Cplx<Real> ratio_factor_unsimplified(Real u, const RootIndex& k, const Params<Real>& p);

/// |R(u;k)| <= 1 + 3R^(1/4)/(18R^2 + 6R^(5/4) - 3(3R + R^(1/4)))
///           <  1 + 1/(6 R^(7/4)),  compared on log scale.
template <class Real>
BoundReport factor_bound_check(Real u, const RootIndex& k, const Params<Real>& p);

/// |1 - (u - 1/2)e^{-ik pi/2^K}/(W1 - 1/2)| >= 1 - 3/(2(3R + R^(1/4))) > 0 and
/// |1 - (u - 1/2)e^{-ik pi/2^K}/(W2 - 1/2)| >= 1 - 1/(2R) > 0.
template <class Real>
BoundReport nonvanishing_check(Real u, const RootIndex& k, const Params<Real>& p);

enum class Evaluator { automatic, direct, closed };

/// max over the grid of log|nabla(u)| <= q log(1 + 1/(6R^(7/4)))
///                                     <= log R / (4.4088 R).
/// Requires Omega = 1 and alpha = 1/4 (HypothesisViolation otherwise) and a
/// real grid inside (1/2, 2]. `automatic` picks nabla_direct for toy
/// parameters with N <= 2^16 and nabla_closed otherwise.
template <class Real>
BoundReport theorem1_check(const Params<Real>& p, const GridSpec& grid,
                           Evaluator evaluator = Evaluator::automatic);

/// Report-only comparison of log|nabla| on |s - 1/2| = r_tilde against the
/// band [Omega R^((R-1/2)/2 + alpha)]^(a_grave sqrt(r/R) - b_grave) ..
/// [..]^(a_acute sqrt(r/R) + b_acute), plus |nabla(u)| < R^1.62 on (1/2, 2].
/// Throws DomainError unless gamma_bar < r_tilde <= R and n_angles >= 8.
template <class Real>
BoundReport prop2_circle_report(const Params<Real>& p, const Prop2Constants& c, Real r_tilde,
                                int n_angles);

}  // namespace pgamma::nabla
