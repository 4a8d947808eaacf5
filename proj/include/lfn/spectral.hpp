#pragma once

// Spectral functions of the conductor operator H = log|x| + F log|y| F^{-1}
// and of the commutator K = i [F log F^{-1}, log].
//
// On each completion H acts on the chi-isotypic sector as multiplication by
//   H(chi, 1/2 + i tau) = d/ds log Gamma(chi, s) at s = 1/2 + i tau,
// and K by
//   K(chi, 1/2 + i tau) = -i d^2/ds^2 log Gamma(chi, s) at the same point;
// both are real there.  dlog_gamma gives the derivatives anywhere in the
// strip by closed formulas (polygamma at the archimedean places, rational
// functions of q^{+-s} at the finite ones).  h_line/k_line recompute the
// critical-line values through the partial-fraction series with a rigorous
// tail enclosure: an independent route used by the tests.
//
// At a finite place both operators act on the radial sector as Toeplitz
// operators; symbol() is the multiplication symbol on |z| = 1 and
// spectrum_support() the closure of its range, the essential spectrum.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lfn/gamma.hpp"
#include "lfn/localfield.hpp"
#include "lfn/logexact.hpp"
#include "lfn/special.hpp"

namespace lfn {

namespace detail {

// Li_{-k}(x) = N_k(x)/(1-x)^{k+1}; N_{k+1} = x((1-x)N_k' + (k+1)N_k)
inline std::complex<double> negapolylog(int k, std::complex<double> x) {
  static const std::vector<std::vector<double>> tables = [] {
    std::vector<std::vector<double>> t;
    t.push_back({0.0, 1.0});  // N_0 = x
    for (int n = 0; n + 1 <= 10; ++n) {
      const auto& N = t.back();
      std::vector<double> d(N.size() + 1, 0.0);  // (1-x)N' then + (n+1)N
      for (size_t j = 1; j < N.size(); ++j) {
        d[j - 1] += j * N[j];
        d[j] -= j * N[j];
      }
      for (size_t j = 0; j < N.size(); ++j) d[j] += (n + 1) * N[j];
      std::vector<double> xn(d.size() + 1, 0.0);
      for (size_t j = 0; j < d.size(); ++j) xn[j + 1] = d[j];
      t.push_back(std::move(xn));
    }
    return t;
  }();
  if (k < 0 || k > 10) throw std::domain_error("negapolylog order");
  std::complex<double> num = 0.0, xp = 1.0;
  for (double c : tables[k]) {
    num += c * xp;
    xp *= x;
  }
  return num / std::pow(1.0 - x, k + 1);
}

}  // namespace detail

// d^m/ds^m log Gamma(chi, s), m >= 1, on the open strip
inline std::complex<double> dlog_gamma(const UnitaryCharacter& chi,
                                       std::complex<double> s, int m) {
  if (m < 1 || m > 8) throw std::domain_error("derivative order 1..8");
  require_strip(s);
  const std::complex<double> ss = s + std::complex<double>(0.0, chi.tau());
  switch (chi.place().kind) {
    case PlaceKind::finite: {
      const double lq = std::log(static_cast<double>(chi.place().q));
      if (chi.is_ramified())
        return m == 1 ? std::complex<double>(
                            (chi.conductor_exponent() + chi.place().delta) *
                            lq)
                      : 0.0;
      const double lqm = std::pow(lq, m);
      const std::complex<double> x = std::exp((ss - 1.0) * lq);
      const std::complex<double> y = std::exp(-ss * lq);
      std::complex<double> r = -lqm * detail::negapolylog(m - 1, x) +
                               (m % 2 ? -lqm : lqm) *
                                   detail::negapolylog(m - 1, y);
      if (m == 1) r += chi.place().delta * lq;
      return r;
    }
    case PlaceKind::real: {
      const double half = chi.parity() ? 0.5 : 0.0;
      const double twp = std::pow(0.5, m);
      const double twm = std::pow(-0.5, m);
      std::complex<double> r =
          twp * polygamma(m - 1, 0.5 * ss + half) -
          twm * polygamma(m - 1, 0.5 * (1.0 - ss) + half);
      if (m == 1) r -= std::log(std::numbers::pi);
      return r;
    }
    default: {
      const double a = 0.5 * std::abs(chi.weight());
      std::complex<double> r = polygamma(m - 1, a + ss) -
                               (m % 2 ? -1.0 : 1.0) *
                                   polygamma(m - 1, a + 1.0 - ss);
      if (m == 1) r -= 2.0 * std::log(2.0 * std::numbers::pi);
      return r;
    }
  }
}

// exact value at a ramified finite place: (f + delta) log q, or 0 for m >= 2
inline LogExact dlog_gamma_exact(const UnitaryCharacter& chi, int m) {
  if (!chi.is_ramified())
    throw std::domain_error("exact log-derivative needs a ramified character");
  if (m == 1)
    return LogExact{Rational(0),
                    Rational(chi.conductor_exponent() + chi.place().delta),
                    chi.place().q};
  return LogExact{Rational(0), Rational(0), chi.place().q};
}

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;  // |true sum - value| <= tail_bound
};

// H(chi, 1/2 + i tau) and K(chi, 1/2 + i tau) at an archimedean place by
// the partial-fraction series, summed to J terms with the remainder
// replaced by a midpoint integral; tail_bound encloses the replacement
// error (half the consecutive-integral gap, i.e. at most g(J)/2).
//
//   real even,  m=1: -log pi - euler + sum_{j>=0} [1/j]_{j>=1}
//                    - (4j+1)/((2j+1/2)^2 + tau^2)
//   real odd,   m=1: same with 4j+3 and 2j+3/2
//   complex N,  m=1: -2 log 2pi - 2 euler
//                    + 2 sum [1/j] - (j+w)/((j+w)^2+tau^2), w = (|N|+1)/2
//   m=2 drops the logs and differentiates termwise (K is the -i d^2 value).
inline SeriesValue critical_line_series(const UnitaryCharacter& chi,
                                        double tau, int m) {
  if (chi.place().is_finite())
    throw std::domain_error("series route is archimedean");
  if (m != 1 && m != 2) throw std::domain_error("series order is 1 or 2");
  const double t2 = tau * tau;
  const bool cx = chi.place().kind == PlaceKind::complex_field;
  const double w = cx ? 0.5 * (std::abs(chi.weight()) + 1.0) : 0.0;
  const double off = cx ? 0.0 : (chi.parity() ? 1.5 : 0.5);
  const double scale = cx ? 2.0 : 1.0;

  auto term1 = [&](double j) {  // m = 1 summand without the 1/j counterterm
    if (cx) {
      const double d = (j + w) * (j + w) + t2;
      return -(j + w) / d;
    }
    const double b = 2.0 * j + off;
    return -(2.0 * b) / (b * b + t2);
  };
  auto term2 = [&](double j) {  // m = 2 summand (value of K, real)
    if (cx) {
      const double d = (j + w) * (j + w) + t2;
      return -2.0 * tau * (j + w) / (d * d);
    }
    const double b = 2.0 * j + off;
    const double d = b * b + t2;
    return -2.0 * tau * (2.0 * b) / (d * d);
  };
  // integral of the summand over [a, infinity)
  auto tail1 = [&](double a) {
    if (cx) return -std::log(a) + 0.5 * std::log((a + w) * (a + w) + t2);
    const double b = 2.0 * a + off;
    return -std::log(2.0 * a) + 0.5 * std::log(b * b + t2);
  };
  auto tail2 = [&](double a) {
    if (cx) return -tau / ((a + w) * (a + w) + t2);
    const double b = 2.0 * a + off;
    return -tau / (b * b + t2);
  };

  const double tol = 1e-11;
  long J = 1024;
  while (static_cast<double>(J) < 4.0 * std::abs(tau)) J *= 2;
  auto gap = [&](long JJ) {  // enclosure width at truncation JJ
    double g = m == 1 ? std::abs(1.0 / JJ + term1(JJ))
                      : std::abs(term2(JJ));
    return 0.5 * scale * g;
  };
  while (gap(J) > tol && J < (1L << 22)) J *= 2;

  double sum = 0.0;
  if (m == 1) {
    for (long j = J; j >= 1; --j) sum += 1.0 / j + term1(j);
    sum += term1(0);
    sum += tail1(J + 0.5);  // integral comparison of sum_{j>J} (1/j + term)
    double base = cx ? -2.0 * std::log(2.0 * std::numbers::pi)
                     : -std::log(std::numbers::pi);
    SeriesValue r;
    r.value = base - scale * 0.57721566490153286061 + scale * sum;
    r.tail_bound = gap(J) + 1e-14 * std::abs(r.value);
    return r;
  }
  for (long j = J; j >= 0; --j) sum += term2(j);
  sum += tail2(J + 0.5);
  SeriesValue r;
  r.value = scale * sum;
  r.tail_bound = gap(J) + 1e-14 * (std::abs(r.value) + 1.0);
  return r;
}

// minimum over tau of H(chi, 1/2 + i tau), attained at tau = 0
inline double spectral_minimum(const UnitaryCharacter& chi) {
  constexpr double euler = 0.57721566490153286061;
  switch (chi.place().kind) {
    case PlaceKind::real: {
      const double base =
          -(std::log(8.0 * std::numbers::pi) + euler);
      return chi.parity() ? base + std::numbers::pi / 2.0
                          : base - std::numbers::pi / 2.0;
    }
    case PlaceKind::complex_field: {
      const double w = 0.5 * (std::abs(chi.weight()) + 1.0);
      return -2.0 * std::log(2.0 * std::numbers::pi) +
             2.0 * polygamma(0, std::complex<double>(w)).real();
    }
    default:
      throw std::domain_error("spectral minimum is archimedean");
  }
}

enum class LocalOperator { conductor, commutator };

// multiplication symbol of the radial-sector Toeplitz form at a finite
// place, on the unit circle; w = z/sqrt(p)
inline double symbol(long p, std::complex<double> z, LocalOperator op) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12)
    throw std::domain_error("symbol argument must lie on the unit circle");
  const double lp = std::log(static_cast<double>(p));
  const std::complex<double> w = z / std::sqrt(static_cast<double>(p));
  if (op == LocalOperator::conductor)
    return -lp * 2.0 * (w / (1.0 - w)).real();
  return -2.0 * lp * lp * (w / ((1.0 - w) * (1.0 - w))).imag();
}

// closure of the symbol range = essential spectrum of the truncations
inline std::pair<double, double> spectrum_support(long p, LocalOperator op) {
  const double lp = std::log(static_cast<double>(p));
  const double sp = std::sqrt(static_cast<double>(p));
  if (op == LocalOperator::conductor)
    return {-2.0 * lp / (sp - 1.0), 2.0 * lp / (sp + 1.0)};
  // extremum of x(1-x^2) sin t / (1 + x^2 - 2x cos t)^2 over t, x = 1/sqrt p
  const double x = 1.0 / sp, x2 = x * x;
  const double c =
      (-(1.0 + x2) + std::sqrt((1.0 + x2) * (1.0 + x2) + 32.0 * x2)) /
      (4.0 * x);
  const double st = std::sqrt(1.0 - c * c);
  const double D = 1.0 + x2 - 2.0 * x * c;
  const double M = 2.0 * lp * lp * x * (1.0 - x2) * st / (D * D);
  return {-M, M};
}

// N x N truncation of the radial Toeplitz form.  Entries below the double
// rounding floor are exact zeros.
inline Eigen::MatrixXcd toeplitz_matrix(long p, int n, LocalOperator op) {
  if (n < 1) throw std::invalid_argument("matrix size");
  const double lp = std::log(static_cast<double>(p));
  const long cutoff = static_cast<long>(std::ceil(60.0 * std::numbers::ln10 / lp));
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const long d = std::labs(static_cast<long>(i) - j);
      if (d == 0 || d > cutoff) continue;
      const double fall = std::pow(static_cast<double>(p), -0.5 * d);
      if (op == LocalOperator::conductor)
        A(i, j) = -lp * fall;
      else
        A(i, j) = std::complex<double>(0.0, -lp * lp * (j - i) * fall);
    }
  return A;
}

// ascending eigenvalues of the truncation
inline std::vector<double> toeplitz_spectrum(long p, int n, LocalOperator op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(toeplitz_matrix(p, n, op),
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace lfn
