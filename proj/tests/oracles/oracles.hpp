#pragma once

// High-precision reference values built on Boost.Multiprecision, sharing no
// code with the library under test.

#include <complex>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;
using BigC = boost::multiprecision::cpp_complex_50;

inline BigC to_big(std::complex<double> s) { return BigC(Big(s.real()), Big(s.imag())); }

inline std::complex<double> to_double(const BigC& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// zeta(s), s != 1, by Euler-Maclaurin on the Dirichlet series with cut n0.
inline BigC zeta_big(const BigC& s, int n0 = 60, int terms = 24) {
  BigC sum = 0;
  for (int n = 1; n < n0; ++n) sum += exp(-s * log(Big(n)));
  const Big N(n0);
  const BigC n_pow = exp(-s * log(N));
  sum += N * n_pow / (s - Big(1)) + n_pow / Big(2);
  // sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
  BigC rising = s;  // s(s+1)..(s+2j-2)
  Big fact = 2;     // (2j)!
  BigC npw = n_pow / N;
  for (int j = 1; j <= terms; ++j) {
    sum += boost::math::bernoulli_b2n<Big>(j) / fact * rising * npw;
    rising *= (s + Big(2 * j - 1)) * (s + Big(2 * j));
    fact *= Big(2 * j + 1) * Big(2 * j + 2);
    npw /= N * N;
  }
  return sum;
}

inline std::complex<double> zeta(std::complex<double> s) { return to_double(zeta_big(to_big(s))); }

/// log Gamma(s) by Stirling's series after shifting Re(s) past 40.
inline BigC lgamma_big(const BigC& s) {
  BigC shift = 0;
  BigC x = s;
  while (x.real() < Big(40)) {
    shift += log(x);
    x += Big(1);
  }
  const Big half_log_2pi = log(2 * boost::math::constants::pi<Big>()) / 2;
  BigC acc = (x - Big(0.5)) * log(x) - x + half_log_2pi;
  BigC xp = x;
  for (int j = 1; j <= 20; ++j) {
    acc += boost::math::bernoulli_b2n<Big>(j) / (Big(2 * j) * Big(2 * j - 1) * xp);
    xp *= x * x;
  }
  return acc - shift;
}

inline std::complex<double> gamma(std::complex<double> s) { return to_double(exp(lgamma_big(to_big(s)))); }

/// xi(s) = pi^(-s/2) (s/2) Gamma(s/2) (s-1) zeta(s), away from s = 0, 1.
inline std::complex<double> xi(std::complex<double> sd) {
  const BigC s = to_big(sd);
  const Big pi = boost::math::constants::pi<Big>();
  const BigC half = s / Big(2);
  return to_double(exp(-half * log(pi) + lgamma_big(half)) * half * (s - Big(1)) * zeta_big(s));
}

/// Paper-scale constants at 50 digits.
struct PaperScale {
  Big R;
  Big bound;         // log R / (4.4088 R)
  Big intermediate;  // q log(1 + 1/(6R^(7/4))), Omega = 1, alpha = 1/4
  Big k_real;        // (15 log R + 2 log 12) / (4 log 2)
};

inline PaperScale paper_scale() {
  PaperScale p;
  p.R = Big(2) * Big(2445999554999LL) - 1;
  p.bound = log(p.R) / (Big(44088) / Big(10000) * p.R);
  const Big r14 = sqrt(sqrt(p.R));
  const Big q = (p.R - Big(0.5) + Big(0.5)) * log(p.R) / (Big(2) * (Big(3674) / Big(10000)) * r14);
  p.intermediate = q * log1p(Big(1) / (Big(6) * p.R * r14 * r14 * r14));
  p.k_real = (Big(15) * log(p.R) + Big(2) * log(Big(12))) / (Big(4) * log(Big(2)));
  return p;
}

}  // namespace oracle
