#include "pgamma/classical.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace pgamma::classical {

namespace {

constexpr double kExclusionRadius = 1e-8;
constexpr double kPoleRadius = 1e-12;

/// Neumaier-compensated complex sum.
class CompensatedSum {
 public:
  void add(Complex x) {
    add_part(sum_re_, comp_re_, x.real());
    add_part(sum_im_, comp_im_, x.imag());
  }
  Complex value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double sum_re_ = 0, comp_re_ = 0, sum_im_ = 0, comp_im_ = 0;
};

Cplx<double> to_cplx(Complex z) { return {z.real(), z.imag()}; }
Complex from_cplx(Cplx<double> z) { return {z.re, z.im}; }

/// exp(z) - 1 without cancellation for small z.
Complex expm1_c(Complex z) {
  const double a = z.real();
  const double b = z.imag();
  const double half_sin = std::sin(0.5 * b);
  const double re = std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin;
  const double im = std::exp(a) * std::sin(b);
  return {re, im};
}

/// |x - 1| for x in log-polar form.
double distance_from_one(const LogComplex& x) {
  const double a = x.arg();
  const double half_sin = std::sin(0.5 * a);
  const double re = std::expm1(x.log_mod()) * std::cos(a) - 2.0 * half_sin * half_sin;
  const double im = std::exp(x.log_mod()) * std::sin(a);
  return std::hypot(re, im);
}

LogComplex pi_power(Complex exponent) {
  const double log_pi = std::log(std::numbers::pi);
  return LogComplex::from_log_polar(exponent.real() * log_pi, exponent.imag() * log_pi);
}

// Bernoulli numbers B_2 .. B_14.
constexpr std::array<double, 7> kBernoulli = {1.0 / 6,    -1.0 / 30,       1.0 / 42, -1.0 / 30,
                                              5.0 / 66,   -691.0 / 2730.0, 7.0 / 6};

/// m-th derivative of g(x) = s/x - log(1 + s/x) at real x.
Complex g_derivative(Complex s, double x, int m) {
  double fact_m1 = 1;  // (m-1)!
  for (int j = 2; j < m; ++j) fact_m1 *= j;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const Complex xs = x + s;
  return sign * (s * (fact_m1 * m) / std::pow(x, m + 1) + fact_m1 / std::pow(xs, m) -
                 fact_m1 / std::pow(x, m));
}

/// M * ((1 + x) log(1 + x) - x) with x = s/M, i.e. int_M^inf g(v) dv.
Complex tail_integral(Complex s, double M) {
  const Complex x = s / M;
  if (std::abs(x) < 0.3) {
    // sum_{j>=2} (-1)^j x^j / (j (j-1))
    Complex acc = 0;
    Complex xp = x;
    for (int j = 2; j < 60; ++j) {
      xp *= x;
      const Complex term = xp / (static_cast<double>(j) * (j - 1));
      acc += (j % 2 == 0) ? term : -term;
      if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    }
    return M * acc;
  }
  return (M + s) * from_cplx(log1p_cart(to_cplx(x))) - s;
}

}  // namespace

void SeriesTolerance::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw Error(ErrorCode::DomainError, "rel_tol must lie in (0, 1)");
  }
  if (max_terms < 16) {
    throw Error(ErrorCode::DomainError, "max_terms must be at least 16");
  }
}

Complex zeta_hasse(Complex s, const SeriesTolerance& tol) {
  tol.validate();
  if (s == Complex(1.0, 0.0)) {
    throw Error(ErrorCode::PoleAtOne, "zeta has its simple pole (residue 1) at s = 1");
  }
  const Complex prefactor = 1.0 - std::exp((1.0 - s) * std::numbers::ln2);
  if (std::abs(prefactor) < kExclusionRadius) {
    throw Error(ErrorCode::NearExclusionPoint,
                "|1 - 2^(1-s)| < 1e-8 near s = 1 - 2 pi i m / log 2");
  }

  std::vector<Complex> powers;  // (k+1)^-s
  powers.reserve(256);
  CompensatedSum outer;
  int quiet_run = 0;
  double peak = 0;
  for (int n = 0; n < tol.max_terms; ++n) {
    powers.push_back(std::exp(-s * std::log(static_cast<double>(n + 1))));

    // Weight C(n,k) / 2^(n+1) kept as mantissa * 2^exponent so neither the
    // binomial nor the power of two leaves double range.
    double mantissa = 1.0;
    int exponent = -(n + 1);
    CompensatedSum inner;
    Complex pair = 0;
    for (int k = 0; k <= n; ++k) {
      const double w = std::ldexp(mantissa, exponent);
      const Complex term = (k % 2 == 0 ? w : -w) * powers[static_cast<std::size_t>(k)];
      if (k % 2 == 0) {
        pair = term;
      } else {
        inner.add(pair + term);
        pair = 0;
      }
      mantissa *= static_cast<double>(n - k) / static_cast<double>(k + 1);
      if (mantissa > 0x1p500) {
        int e = 0;
        mantissa = std::frexp(mantissa, &e);
        exponent += e;
      }
    }
    if (n % 2 == 0) inner.add(pair);

    const Complex term = inner.value();
    outer.add(term);
    // Measured against the largest partial sum so far, so the rule also
    // terminates where zeta vanishes (s = -2, -4, ...).
    peak = std::max(peak, std::abs(outer.value()));
    quiet_run = (std::abs(term) < tol.rel_tol * peak) ? quiet_run + 1 : 0;
    if (quiet_run == 3) {
      return outer.value() / prefactor;
    }
  }
  throw Error(ErrorCode::MaxTermsExceeded,
              "zeta series did not converge in " + std::to_string(tol.max_terms) + " terms");
}

IntegralZeta zeta_integral(Complex s, std::int64_t n_intervals) {
  if (!(s.real() > 0.0)) {
    throw Error(ErrorCode::DomainError, "integral form needs Re(s) > 0");
  }
  if (s == Complex(1.0, 0.0)) {
    throw Error(ErrorCode::PoleAtOne, "zeta has its simple pole (residue 1) at s = 1");
  }
  if (n_intervals < 10) {
    throw Error(ErrorCode::DomainError, "n_intervals must be at least 10");
  }
  // int_n^{n+1} (v - n) v^(-s-1) dv = [v^(1-s)/(1-s) + n v^(-s)/s]_n^{n+1}
  //   = n^(1-s) (expm1((1-s)L)/(1-s) + expm1(-sL)/s),  L = log1p(1/n).
  CompensatedSum sum;
  const Complex one_minus_s = 1.0 - s;
  for (std::int64_t n = 1; n <= n_intervals; ++n) {
    const double nd = static_cast<double>(n);
    const double L = std::log1p(1.0 / nd);
    const Complex scale = std::exp(one_minus_s * std::log(nd));
    sum.add(scale * (expm1_c(one_minus_s * L) / one_minus_s + expm1_c(-s * L) / s));
  }
  const Complex value = s / (s - 1.0) - s * sum.value();
  const double sigma = s.real();
  const double tail = std::abs(s) / (sigma * std::pow(static_cast<double>(n_intervals), sigma));
  return {value, tail};
}

LogComplex gamma_weierstrass(Complex s, const SeriesTolerance& tol) {
  tol.validate();
  const double nearest = std::round(s.real());
  if (nearest <= 0.0) {
    const double dist = std::abs(s - Complex(nearest, 0.0));
    if (dist < kPoleRadius) {
      throw Error(ErrorCode::PoleAtNonpositiveInteger,
                  "Gamma pole at s = " + std::to_string(static_cast<long long>(nearest)) +
                      " (distance " + format_real(dist, 3) + ")");
    }
  }

  const double mod_s = std::abs(s);
  std::int64_t M = std::max<std::int64_t>(32, static_cast<std::int64_t>(std::ceil(4.0 * mod_s)) + 16);
  for (;;) {
    if (M > tol.max_terms) {
      throw Error(ErrorCode::MaxTermsExceeded,
                  "Weierstrass product needs more than " + std::to_string(tol.max_terms) +
                      " factors");
    }
    // Remainder after the last Bernoulli correction, estimated by the next one.
    const double next = std::abs(kBernoulli.back() / 87178291200.0 *
                                 g_derivative(s, static_cast<double>(M), 13));
    if (next < tol.rel_tol * 1e-3) break;
    M *= 2;
  }

  CompensatedSum sum;
  sum.add(-Complex(std::log(mod_s), std::arg(s)));
  sum.add(-euler_gamma * s);
  for (std::int64_t n = 1; n <= M; ++n) {
    const Complex x = s / static_cast<double>(n);
    sum.add(x - from_cplx(log1p_cart(to_cplx(x))));
  }

  // Factors n > M by Euler-Maclaurin:
  //   sum_{n>M} g(n) = int_M^inf g - g(M)/2 - sum_j B_2j/(2j)! g^(2j-1)(M).
  const double Md = static_cast<double>(M);
  const Complex xM = s / Md;
  const Complex gM = xM - from_cplx(log1p_cart(to_cplx(xM)));
  Complex tail = tail_integral(s, Md) - 0.5 * gM;
  double fact = 1;  // (2j)!
  for (std::size_t j = 1; j < kBernoulli.size(); ++j) {
    fact *= static_cast<double>((2 * j - 1) * (2 * j));
    tail -= kBernoulli[j - 1] / fact * g_derivative(s, Md, static_cast<int>(2 * j - 1));
  }
  sum.add(tail);

  const Complex log_gamma = sum.value();
  return LogComplex::from_log_polar(log_gamma.real(), log_gamma.imag());
}

LogComplex xi(Complex s, const SeriesTolerance& tol) {
  const LogComplex pi_part = pi_power(-0.5 * s);
  const LogComplex g_part =
      (s == Complex(0.0, 0.0))
          ? LogComplex::one()
          : mul(LogComplex::from_cartesian(0.5 * s.real(), 0.5 * s.imag()),
                gamma_weierstrass(0.5 * s, tol));
  LogComplex z_part = LogComplex::one();
  if (s != Complex(1.0, 0.0)) {
    const Complex zs = (s - 1.0) * zeta_hasse(s, tol);
    z_part = LogComplex::from_cartesian(zs.real(), zs.imag());
  }
  return mul(mul(pi_part, g_part), z_part);
}

double functional_eq_residual(Complex s, const SeriesTolerance& tol) {
  auto side = [&](Complex x) {
    const Complex z = zeta_hasse(x, tol);
    return mul(mul(pi_power(-0.5 * x), gamma_weierstrass(0.5 * x, tol)),
               LogComplex::from_cartesian(z.real(), z.imag()));
  };
  const LogComplex lhs = side(1.0 - s);
  const LogComplex rhs = side(s);
  const LogComplex ratio = div(lhs, rhs);
  return distance_from_one(ratio) / (std::exp(ratio.log_mod()) + 1.0);
}

}  // namespace pgamma::classical
