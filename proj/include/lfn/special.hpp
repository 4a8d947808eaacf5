#pragma once

// Complex log-gamma and polygamma.
//
// log_gamma returns the analytically continued branch (continuous along any
// path from the positive reals, real on them), not the principal log of
// Gamma; the two differ by 2*pi*i*k once the imaginary part of loggamma
// leaves (-pi, pi].  Strategy: argument shift into Re >= 12 plus a Stirling
// tail, reflection for Re < 1/2 with a branch-tracking log(sin(pi z)).

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace lfn {

using Complex = std::complex<double>;

namespace detail {

// B_2, B_4, ..., B_24
inline constexpr double kBernoulli[] = {
    1.0 / 6,           -1.0 / 30,          1.0 / 42,
    -1.0 / 30,         5.0 / 66,           -691.0 / 2730,
    7.0 / 6,           -3617.0 / 510,      43867.0 / 798,
    -174611.0 / 330,   854513.0 / 138,     -236364091.0 / 2730};

// Stirling series; needs Re(w) reasonably large (we shift to >= 12)
inline Complex log_gamma_stirling(Complex w) {
  const Complex lw = std::log(w);
  Complex r = (w - 0.5) * lw - w + 0.5 * std::log(2.0 * std::numbers::pi);
  const Complex w2 = w * w;
  Complex wp = w;
  for (int n = 1; n <= 8; ++n) {
    r += kBernoulli[n - 1] / (2.0 * n * (2.0 * n - 1.0) * wp);
    wp *= w2;
  }
  return r;
}

// log(sin(pi z)) on the branch that makes the reflection formula produce
// the continued log_gamma.  For Im z >= 0 factor out exp(-i pi z).
inline Complex log_sin_pi(Complex z) {
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  const Complex ipz = Complex(0.0, std::numbers::pi) * z;
  // sin(pi z) = -exp(-i pi z)(1 - exp(2 i pi z))/(2i)
  return -ipz + std::log(1.0 - std::exp(2.0 * ipz)) +
         Complex(-std::log(2.0), 0.5 * std::numbers::pi);
}

}  // namespace detail

inline Complex log_gamma(Complex z) {
  if (z.real() < 0.5) {
    // poles at 0, -1, -2, ...
    if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
      throw std::domain_error("log_gamma pole");
    return std::log(std::numbers::pi) - detail::log_sin_pi(z) -
           log_gamma(1.0 - z);
  }
  Complex acc = 0.0;
  while (z.real() < 12.0) {
    acc += std::log(z);
    z += 1.0;
  }
  return detail::log_gamma_stirling(z) - acc;
}

// psi^{(m)}(z), m = 0..10.  Recurrence shift into Re >= 16, then the
// asymptotic series.  Valid off the poles; no reflection needed because the
// shift walks any argument into the asymptotic region.
inline Complex polygamma(int m, Complex z) {
  if (m < 0 || m > 10) throw std::domain_error("polygamma order out of range");
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("polygamma pole");
  double mfact = 1.0;
  for (int j = 2; j <= m; ++j) mfact *= j;
  Complex acc = 0.0;
  const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;  // (-1)^m
  while (z.real() < 16.0) {
    acc -= sign_m * mfact * std::pow(z, -(m + 1));
    z += 1.0;
  }
  Complex r;
  if (m == 0) {
    r = std::log(z) - 0.5 / z;
    const Complex z2 = z * z;
    Complex zp = z2;
    for (int n = 1; n <= 12; ++n) {
      r -= detail::kBernoulli[n - 1] / (2.0 * n * zp);
      zp *= z2;
    }
  } else {
    // psi^{(m)}(z) = (-1)^{m-1} [ (m-1)!/z^m + m!/(2 z^{m+1})
    //              + sum_k B_{2k} (2k+m-1)!/(2k)! z^{-2k-m} ]
    const double mm1fact = mfact / m;
    Complex s = mm1fact * std::pow(z, -m) + 0.5 * mfact * std::pow(z, -(m + 1));
    const Complex z2 = z * z;
    Complex zp = std::pow(z, -(m + 2));  // z^{-(2k+m)} at k=1
    for (int n = 1; n <= 12; ++n) {
      double c = 1.0;  // (2n+m-1)!/(2n)!
      for (int j = 2 * n + 1; j <= 2 * n + m - 1; ++j) c *= j;
      s += detail::kBernoulli[n - 1] * c * zp;
      zp /= z2;
    }
    r = -sign_m * s;  // (-1)^{m-1}
  }
  return r + acc;
}

inline Complex digamma(Complex z) { return polygamma(0, z); }

}  // namespace lfn
