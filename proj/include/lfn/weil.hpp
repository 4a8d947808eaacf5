#pragma once

// Local terms of the explicit formula, by three routes:
//
//   closed       prime-power sums at a finite place; at an archimedean place
//                the principal-value integral around u = 1 with its additive
//                constant
//   convolution  the same quantity through the conductor-operator machinery
//                G(phi) with phi(y) = F(1 - y)
//   spectral     (1/2pi) int ghat(1/2 + it) Lambda(chi, t) dt with
//                Lambda = -d/ds log Gamma on the critical line
//
// All three evaluate W(chi, g) for a multiplicative test function g; the
// routes share no evaluation code beyond the character itself, which is the
// point of having them.
//
// tate_multiplier_check verifies the local functional equation at s = 1/2:
// the half-density Mellin transform of F phi against chi equals
// Gamma(chi, 1/2) times the transform of phi against the conjugate
// character.  On Q_p both sides reduce to finite coset sums plus one
// geometric series, so the comparison is clean.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "lfn/bruhat.hpp"
#include "lfn/conductor.hpp"
#include "lfn/gamma.hpp"
#include "lfn/localfield.hpp"
#include "lfn/quadrature.hpp"
#include "lfn/spectral.hpp"
#include "lfn/testfunction.hpp"

namespace lfn {

enum class WeilRoute { closed, convolution, spectral };

struct WeilResult {
  std::complex<double> value;
  double tolerance = 0.0;  // estimated numerical error of the route
};

namespace detail {

// effective support of g: exact for bumps, a 1e-18 window otherwise
inline double effective_hi(const MultiplicativeTestFunction& g) {
  if (g.compact_support()) return g.support_hi();
  return g.center() * std::exp(9.2 * g.width());
}
inline double effective_lo(const MultiplicativeTestFunction& g) {
  if (g.compact_support()) return g.support_lo();
  return g.center() * std::exp(-9.2 * g.width());
}

}  // namespace detail

// ------------------------------------------------------------ finite routes

inline WeilResult weil_finite_closed(const UnitaryCharacter& chi,
                                     const MultiplicativeTestFunction& g) {
  const Place& v = chi.place();
  if (!v.is_finite()) throw std::invalid_argument("finite place expected");
  const double q = static_cast<double>(v.q), lq = std::log(q);
  const double hi = detail::effective_hi(g), lo = detail::effective_lo(g);
  std::complex<double> val = -static_cast<double>(v.delta) * lq * g(1.0);
  if (chi.is_ramified()) {
    val -= chi.conductor_exponent() * lq * g(1.0);
    return {val, 1e-15 * std::abs(val)};
  }
  double qk = 1.0;
  for (long k = 1;; ++k) {
    qk *= q;
    if (qk > hi && 1.0 / qk < lo) break;
    const std::complex<double> cv = chi.value(pow_int(v.p, k));
    val += lq * (std::conj(cv) / qk * g(1.0 / qk) + cv * g(qk));
    if (k > 4000) throw std::runtime_error("prime power sum did not terminate");
  }
  return {val, 1e-14 * (1.0 + std::abs(val))};
}

inline WeilResult weil_finite_convolution(
    const UnitaryCharacter& chi, const MultiplicativeTestFunction& g) {
  const Place& v = chi.place();
  const double q = static_cast<double>(v.q), lq = std::log(q);
  const double hi = detail::effective_hi(g), lo = detail::effective_lo(g);
  // unit shell through the conductor integral; F(1/t) = g(1) chi(t) there
  std::complex<double> val = -g(1.0) * conductor_integral(chi).value();
  val -= static_cast<double>(v.delta) * lq * g(1.0);
  // shells |t| = q^m carry the chi-average over units: mass or zero
  const double unit_avg = chi.trivial_on_unit_layer(0) ? 1.0 : 0.0;
  if (unit_avg != 0.0) {
    double qm = 1.0;
    for (long m = 1;; ++m) {
      qm *= q;
      if (qm > hi && 1.0 / qm < lo) break;
      const std::complex<double> cm = chi.value(pow_int(v.p, m));
      // |t| = q^m: F(1/t) = g(q^-m) conj(cm), |1 - t| = q^m
      // |t| = q^-m: F(1/t) = g(q^m) cm, |1 - t| = 1
      val += lq * unit_avg *
             (std::conj(cm) * g(1.0 / qm) / qm + cm * g(qm));
      if (m > 4000)
        throw std::runtime_error("shell walk did not terminate");
    }
  }
  return {val, 1e-14 * (1.0 + std::abs(val))};
}

// --------------------------------------------------------- archimedean data

namespace detail {

// F(u) = g(|u|) chi^{-1}(u) on the real line
inline std::complex<double> real_f(const UnitaryCharacter& chi,
                                   const MultiplicativeTestFunction& g,
                                   double u) {
  if (u == 0.0) return 0.0;
  const double a = std::abs(u), gv = g(a);
  if (gv == 0.0) return 0.0;
  std::complex<double> c(gv, 0.0);
  if (chi.parity() == 1 && u < 0.0) c = -c;
  const double t0 = chi.tau();
  if (t0 != 0.0) c *= std::exp(std::complex<double>(0.0, -t0 * std::log(a)));
  return c;
}

// F(z) = g(|z|_C) chi^{-1}(z), |z|_C = r^2
inline std::complex<double> complex_f(const UnitaryCharacter& chi,
                                      const MultiplicativeTestFunction& g,
                                      std::complex<double> z) {
  const double r2 = std::norm(z);
  if (r2 == 0.0) return 0.0;
  const double gv = g(r2);
  if (gv == 0.0) return 0.0;
  double ph = 0.0;
  if (chi.weight() != 0) ph -= chi.weight() * std::arg(z);
  if (chi.tau() != 0.0) ph -= chi.tau() * std::log(r2);
  return gv * std::exp(std::complex<double>(0.0, ph));
}

}  // namespace detail

// ------------------------------------------------------- archimedean closed

inline WeilResult weil_real_closed(const UnitaryCharacter& chi,
                                   const MultiplicativeTestFunction& g,
                                   const QuadratureOptions& opt = {}) {
  const double hi = detail::effective_hi(g), lo = detail::effective_lo(g);
  const std::complex<double> F1 = g(1.0);
  auto F = [&](double u) { return detail::real_f(chi, g, u); };

  auto near = [&](double u) {  // (F(u) - F(1)) / |u - 1|, u in (0, 2)
    const double d = u - 1.0;
    if (std::abs(d) < 1e-13) {
      // remove the 0/0 with one derivative; chi^{-1} has log-derivative
      // -(i tau + 0) at 1
      return std::complex<double>(g.derivative(1.0), 0.0) -
             F1 * std::complex<double>(0.0, chi.tau());
    }
    return (F(u) - F1) / std::abs(d);
  };
  std::complex<double> val = integrate(near, 0.0, 1.0, opt) +
                             integrate(near, 1.0, 2.0, opt);
  auto far = [&](double u) { return F(u) / std::abs(u - 1.0); };
  val += integrate(far, -hi, -lo, opt);
  if (hi > 2.0) val += integrate(far, 2.0, hi, opt);
  val *= 0.5;
  val += (std::log(2.0 * std::numbers::pi) + kEuler) * F1;
  return {val, 40.0 * opt.abs_tol + 1e-14 * std::abs(val)};
}

inline WeilResult weil_complex_closed(const UnitaryCharacter& chi,
                                      const MultiplicativeTestFunction& g,
                                      const QuadratureOptions& opt = {}) {
  const double hi = detail::effective_hi(g);
  const std::complex<double> F1 = g(1.0);
  const double P = 1.0 + std::sqrt(hi);
  auto mean = [&](double rho) {
    int n = 32;
    std::complex<double> prev = 0.0, cur = 0.0;
    for (;; n *= 2) {
      cur = 0.0;
      for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * i / n;
        cur += detail::complex_f(chi, g,
                                 1.0 + rho * std::polar(1.0, th));
      }
      cur /= static_cast<double>(n);
      if (n > 32 && std::abs(cur - prev) <= 1e-14 * (1.0 + std::abs(cur)))
        break;
      if (n >= 8192) break;
      prev = cur;
    }
    return cur;
  };
  auto inner = [&](double rho) {  // rho <= 1, disc subtraction active
    if (rho < 1e-13)
      return std::complex<double>(0.0);  // mean - F1 = O(rho^2)
    return 2.0 * (mean(rho) - F1) / rho;
  };
  auto outer = [&](double rho) { return 2.0 * mean(rho) / rho; };
  std::complex<double> val = integrate(inner, 0.0, std::min(1.0, P), opt);
  if (P > 1.0) val += integrate(outer, 1.0, P, opt);
  val += 2.0 * (std::log(2.0 * std::numbers::pi) + kEuler) * F1;
  return {val, 60.0 * opt.abs_tol + 1e-14 * std::abs(val)};
}

// -------------------------------------------------- archimedean convolution

inline WeilResult weil_real_convolution(const UnitaryCharacter& chi,
                                        const MultiplicativeTestFunction& g,
                                        const QuadratureOptions& opt = {}) {
  const double hi = detail::effective_hi(g);
  auto phi = [&](double y) { return detail::real_f(chi, g, 1.0 - y); };
  std::complex<double> val =
      g_apply_real(phi, 1.0 + hi, OmegaTag::real_gaussian, opt);
  return {val, 40.0 * opt.abs_tol + 1e-14 * std::abs(val)};
}

inline WeilResult weil_complex_convolution(
    const UnitaryCharacter& chi, const MultiplicativeTestFunction& g,
    const QuadratureOptions& opt = {}) {
  const double hi = detail::effective_hi(g);
  auto phi = [&](std::complex<double> w) {
    return detail::complex_f(chi, g, 1.0 - w);
  };
  std::complex<double> val = g_apply_complex(phi, 1.0 + std::sqrt(hi),
                                             OmegaTag::complex_gaussian, opt);
  return {val, 60.0 * opt.abs_tol + 1e-14 * std::abs(val)};
}

// ---------------------------------------------------------------- spectral

inline WeilResult weil_spectral(const UnitaryCharacter& chi,
                                const MultiplicativeTestFunction& g,
                                double target_tol = 1e-10) {
  auto lambda = [&](double t) {
    return -dlog_gamma(chi, std::complex<double>(0.5, t), 1);
  };
  auto envelope = [&](double T) {
    double e = 0.0;
    for (int j = 0; j < 5; ++j)
      e = std::max(e, std::abs(mellin_hat(g, {0.5, T + 2.5 * j})));
    return e;
  };
  const double two_pi = 2.0 * std::numbers::pi;
  double T = 40.0;
  while (T < 3000.0) {
    const double w = std::abs(lambda(T)) + std::abs(lambda(T + 5.0)) + 1.0;
    if (envelope(T) * w * 40.0 / two_pi < target_tol) break;
    T *= 1.5;
  }
  const QuadratureOptions opt{1e-12, 1e-12, 40};
  std::complex<double> val = 0.0;
  auto integrand = [&](double t) {
    return mellin_hat(g, {0.5, t}) * lambda(t);
  };
  // g is real-valued, so ghat(1/2-it) = conj ghat(1/2+it); when lambda has
  // the same mirror symmetry (it does whenever the twist tau vanishes) the
  // negative half-line duplicates the positive one
  auto mirrors = [&](double t) {
    const auto l = lambda(t);
    return std::abs(lambda(-t) - std::conj(l)) <= 1e-12 * (std::abs(l) + 1.0);
  };
  const bool symmetric = mirrors(1.3) && mirrors(7.7);
  // chunk width from the phase rate of ghat (centroid of log-support) plus
  // the almost-period of lambda; chunks whose three-sample envelope bounds
  // them below the noise floor are skipped, with the bound reported
  const double rate = std::abs(std::log(g.center())) + g.width() +
                      (chi.place().is_finite()
                           ? std::log(static_cast<double>(chi.place().q))
                           : 1.0);
  const double chunk = std::clamp(24.0 / rate, 4.0, 40.0);
  const double lo = symmetric ? 0.0 : -T;
  double skipped = 0.0;
  double hat_left = std::abs(mellin_hat(g, {0.5, lo}));
  for (double a = lo; a < T - 1e-9; a += chunk) {
    const double b = std::min(a + chunk, T);
    const double hat_mid = std::abs(mellin_hat(g, {0.5, 0.5 * (a + b)}));
    const double hat_right = std::abs(mellin_hat(g, {0.5, b}));
    const double env = std::max({hat_left, hat_mid, hat_right});
    hat_left = hat_right;
    const double wt =
        std::max(std::abs(lambda(a)), std::abs(lambda(b))) + 1.0;
    const double bound = 6.0 * env * wt * (b - a);
    if (bound < 5e-14) {
      skipped += bound;
      continue;
    }
    val += integrate(integrand, a, b, opt);
  }
  if (symmetric) {
    val = 2.0 * std::real(val);
    skipped *= 2.0;
  }
  val /= two_pi;
  const double tail =
      envelope(T) * (std::abs(lambda(T)) + 1.0) * 40.0 / two_pi;
  return {val, tail + (skipped + 2.0 * T * 1e-13) / two_pi +
                   1e-12 * (1.0 + std::abs(val))};
}

// ------------------------------------------------------------------ facade

inline WeilResult weil_term(const UnitaryCharacter& chi,
                            const MultiplicativeTestFunction& g,
                            WeilRoute route) {
  if (route == WeilRoute::spectral) return weil_spectral(chi, g);
  switch (chi.place().kind) {
    case PlaceKind::finite:
      return route == WeilRoute::closed ? weil_finite_closed(chi, g)
                                        : weil_finite_convolution(chi, g);
    case PlaceKind::real:
      return route == WeilRoute::closed ? weil_real_closed(chi, g)
                                        : weil_real_convolution(chi, g);
    default:
      return route == WeilRoute::closed ? weil_complex_closed(chi, g)
                                        : weil_complex_convolution(chi, g);
  }
}

// ------------------------------------------------- local functional equation

namespace detail {

inline std::complex<double> coeff_complex(const CRational& c) {
  return to_complex(c);
}
inline std::complex<double> coeff_complex(const std::complex<double>& c) {
  return c;
}

}  // namespace detail

// M[f](chi) = int |t|^{1/2} f(t) chi(t) d*t, d* with unit mass on units.
// Central balls give a geometric series, other balls a single coset average.
template <class Coeff>
std::complex<double> mellin_half(const BasicBruhat<Coeff>& f,
                                 const UnitaryCharacter& chi) {
  const long p = f.prime();
  if (!chi.place().is_finite() || chi.place().p != p)
    throw std::invalid_argument("character and function live at one place");
  const double dq = static_cast<double>(p);
  std::complex<double> total = 0.0;
  for (const auto& t : f.terms()) {
    const std::complex<double> a = detail::coeff_complex(t.coeff);
    if (t.ball.center == 0) {
      if (chi.is_ramified()) continue;
      const std::complex<double> r =
          chi.value(Rational(p)) / std::sqrt(dq);
      total += a * std::pow(r, static_cast<double>(t.ball.k)) / (1.0 - r);
      continue;
    }
    const long v = valuation(p, t.ball.center);
    const long j = t.ball.k - v;  // coset of 1 + p^j O
    if (!chi.trivial_on_unit_layer(static_cast<int>(j))) continue;
    const double mass =
        std::pow(dq, static_cast<double>(v - t.ball.k)) * dq / (dq - 1.0);
    total += a * chi.value(t.ball.center) *
             std::pow(dq, -0.5 * static_cast<double>(v)) * mass;
  }
  return total;
}

struct MultiplierCheck {
  std::complex<double> lhs, rhs;
  double abs_error() const { return std::abs(lhs - rhs); }
};

// F phi paired against chi at s = 1/2 versus Gamma(chi, 1/2) times phi
// paired against the conjugate character
inline MultiplierCheck tate_multiplier_check(const BruhatFunction& phi,
                                             const UnitaryCharacter& chi) {
  BruhatFunction f = phi;
  f.canonicalize();
  BruhatFunctionF psi = fourier_transform(f);
  MultiplierCheck out;
  out.lhs = mellin_half(psi, chi);
  out.rhs = gamma_factor(chi, std::complex<double>(0.5, 0.0)) *
            mellin_half(f, chi.conjugate());
  return out;
}

}  // namespace lfn
