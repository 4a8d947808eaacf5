#pragma once

// The additive part of the conductor operator.  Writing H = log|x| - G*,
// G is the distribution -F(log|y|); against a test function,
//
//   G(phi) = gamma_v int (phi(x) - phi(0) omega(x)) dx/|x|  +  G(omega) phi(0)
//
// for any normalized smoothing choice omega (omega(0) = 1, F omega
// integrable), with the place weight gamma_v = log q * q^{delta/2} * q/(q-1)
// at a finite place, 1/2 at the real place, 1/(2 pi) at the complex one.
// The value does not depend on omega; each omega tag carries its constant
// G(omega), and the tests exercise the independence.
//
// On Q_p everything is exact: the integral is a finite shell sum with
// rational weights, and G(phi) is a rational multiple of log p.
//
// conductor_apply computes H phi for a Bruhat function exactly, as a
// three-region description:
//   inner  |x| <= p^-V: value = const + v * slope  (v the valuation; the
//           slope is -log p * phi(0) from the multiplication part)
//   window: finitely many balls with constant values
//   outer  |x| >= p^B: value = -gamma (int phi) / |x|
//
// conductor_integral is int (1 - chi(u)) / |1 - u| d*u over the units
// (d* normalized to unit mass), an exact integer multiple of log p equal to
// the conductor exponent; the character enters only through subgroup
// averages, so no root-of-unity arithmetic is needed.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfn/bruhat.hpp"
#include "lfn/localfield.hpp"
#include "lfn/logexact.hpp"
#include "lfn/quadrature.hpp"
#include "lfn/rational.hpp"

namespace lfn {

enum class OmegaTag {
  padic_unit_indicator_minus_psi,  // 1_O - 1_{B(1, 1/p)}; G(omega) = 0
  padic_unit_indicator,            // 1_O; G(omega) = log p / (p - 1)
  real_unit_ball,                  // 1_{[-1,1]}; log 2pi + euler
  real_sinc,                       // sin(pi x)/(pi x); 1 + log 2
  real_sinc_sq,                    // (sin(pi x)/(pi x))^2; 3/2
  real_gaussian,                   // e^{-pi x^2}; (log pi + euler)/2 + log 2
  complex_unit_disc,               // 1_{|z| <= 1}; 2(log 2pi + euler)
  complex_gaussian                 // e^{-2 pi |z|_C}; log 2pi + euler
};

inline constexpr double kEuler = 0.57721566490153286061;

inline bool omega_is_finite(OmegaTag w) {
  return w == OmegaTag::padic_unit_indicator_minus_psi ||
         w == OmegaTag::padic_unit_indicator;
}
inline bool omega_is_real(OmegaTag w) {
  return w == OmegaTag::real_unit_ball || w == OmegaTag::real_sinc ||
         w == OmegaTag::real_sinc_sq || w == OmegaTag::real_gaussian;
}

inline const char* omega_name(OmegaTag w) {
  switch (w) {
    case OmegaTag::padic_unit_indicator_minus_psi:
      return "padic-unit-indicator-minus-psi";
    case OmegaTag::padic_unit_indicator: return "padic-unit-indicator";
    case OmegaTag::real_unit_ball: return "real-unit-ball";
    case OmegaTag::real_sinc: return "real-sinc";
    case OmegaTag::real_sinc_sq: return "real-sinc2";
    case OmegaTag::real_gaussian: return "real-gaussian";
    case OmegaTag::complex_unit_disc: return "complex-unit-disc";
    default: return "complex-gaussian";
  }
}
inline OmegaTag omega_from_name(const std::string& s) {
  for (OmegaTag w : {OmegaTag::padic_unit_indicator_minus_psi,
                     OmegaTag::padic_unit_indicator, OmegaTag::real_unit_ball,
                     OmegaTag::real_sinc, OmegaTag::real_sinc_sq,
                     OmegaTag::real_gaussian, OmegaTag::complex_unit_disc,
                     OmegaTag::complex_gaussian})
    if (s == omega_name(w)) return w;
  throw std::invalid_argument("unknown omega tag: " + s);
}

// G(omega) for the archimedean tags
inline double omega_constant(OmegaTag w) {
  switch (w) {
    case OmegaTag::real_unit_ball:
      return std::log(2.0 * std::numbers::pi) + kEuler;
    case OmegaTag::real_sinc: return 1.0 + std::numbers::ln2;
    case OmegaTag::real_sinc_sq: return 1.5;
    case OmegaTag::real_gaussian:
      return 0.5 * (std::log(std::numbers::pi) + kEuler) + std::numbers::ln2;
    case OmegaTag::complex_unit_disc:
      return 2.0 * (std::log(2.0 * std::numbers::pi) + kEuler);
    case OmegaTag::complex_gaussian:
      return std::log(2.0 * std::numbers::pi) + kEuler;
    default:
      throw std::domain_error("finite omega constants are exact; see g_apply");
  }
}

// ---------------------------------------------------------------- finite

namespace detail {

// sum of coeff * vol(ball)/|center| over the canonical terms; the exact
// value of int psi(x) dx/|x| for psi vanishing near 0
inline CRational shell_weighted_sum(const BruhatFunction& psi) {
  if (!psi.supported_away_from_zero())
    throw std::logic_error("shell sum needs support away from 0");
  CRational s;
  const long p = psi.prime();
  for (const auto& t : psi.terms()) {
    long v = valuation(p, t.ball.center);
    s += pow_int(p, v - t.ball.k) * t.coeff;
  }
  return s;
}

inline BruhatFunction omega_bruhat(long p, OmegaTag w) {
  if (w == OmegaTag::padic_unit_indicator) return unit_ball_indicator(p);
  BruhatFunction f(p);
  f.add_term({Rational(0), 0}, CRational(Rational(1)));
  f.add_term({Rational(1), 1}, CRational(Rational(-1)));
  f.canonicalize();
  return f;
}

}  // namespace detail

// exact G(phi) on Q_p
inline CLogExact g_apply(const BruhatFunction& phi, OmegaTag w) {
  if (!omega_is_finite(w))
    throw std::invalid_argument("p-adic g_apply needs a p-adic omega tag");
  const long p = phi.prime();
  BruhatFunction f = phi;
  f.canonicalize();
  const CRational at0 = f.value_at_zero();
  BruhatFunction rho = f - detail::omega_bruhat(p, w).scaled(at0);
  // gamma_p = log p * p/(p-1); the regularized integral is exact
  CRational core = Rational(p, p - 1) * detail::shell_weighted_sum(rho);
  CLogExact r{CRational(), core, p};
  if (w == OmegaTag::padic_unit_indicator)
    r = r + CLogExact{CRational(), Rational(1, p - 1) * at0, p};
  return r;
}

// ---------------------------------------------------------------- conductor

struct ConductorImage {
  long p = 0;
  // valuations v >= inner_from: value(v) = inner_const + v * inner_slope
  long inner_from = 0;
  CLogExact inner_const, inner_slope;
  // middle shells, tiled by balls with constant value
  std::vector<std::pair<Ball, CLogExact>> window;
  // |x| = p^m, m >= outer_from: value = outer_coeff * p^{-m} * log p
  long outer_from = 0;
  CRational outer_coeff;

  CLogExact eval(const Rational& x, const BruhatFunction& geometry) const {
    if (x == 0)
      throw std::domain_error("the image is described off 0; take limits");
    long v = valuation(p, x);
    if (v >= inner_from)
      return inner_const + CRational(Rational(v)) * inner_slope;
    if (-v >= outer_from)
      return CLogExact{CRational(), pow_int(p, v) * outer_coeff, p};
    for (const auto& [b, val] : window)
      if (geometry.ball_contains_point(b, x)) return val;
    throw std::logic_error("window does not tile the middle region");
  }
};

// H phi computed exactly (exact-model places)
inline ConductorImage conductor_apply(const BruhatFunction& phi_in) {
  BruhatFunction phi = phi_in;
  phi.canonicalize();
  if (phi.empty()) throw std::invalid_argument("zero function");
  const long p = phi.prime();
  const long K = phi.granularity_exp();
  const long B = phi.support_radius_exp();

  ConductorImage img;
  img.p = p;

  const CRational at0 = phi.value_at_zero();
  // G applied to y -> phi(x0 - y)
  auto g_at = [&](const Rational& x0) {
    return g_apply(phi.reflected_at(x0),
                   OmegaTag::padic_unit_indicator_minus_psi);
  };

  img.inner_from = K;
  img.inner_slope = CLogExact{CRational(), CRational(Rational(-1)) * at0, p};
  img.inner_const = CLogExact{} - g_at(Rational(0));

  img.outer_from = B + 1;
  img.outer_coeff = CRational(Rational(-p, p - 1)) * phi.integral();

  for (long v = -B; v < K; ++v) {
    const long kk = std::max(K, v + 1);
    // tile the shell |x| = p^-v with balls p^v u + B(0, p^-kk)
    long reps = 1;
    for (long i = 0; i < kk - v; ++i) {
      if (reps > 200000) throw std::runtime_error("window too fine");
      reps *= p;
    }
    for (long u = 1; u < reps; ++u) {
      if (u % p == 0) continue;
      Rational c = Rational(u) * pow_int(p, v);
      CLogExact val = CLogExact{CRational(),
                                CRational(Rational(-v)) * phi.eval(c), p} -
                      g_at(c);
      img.window.emplace_back(Ball{c, kk}, val);
    }
  }
  return img;
}

// checks H phi == lambda phi given the image; exact comparison
inline bool image_equals_scaled(const ConductorImage& img,
                                const BruhatFunction& phi,
                                const LogExact& lambda) {
  BruhatFunction f = phi;
  f.canonicalize();
  CLogExact lam = CLogExact::from(lambda);
  const CRational at0 = f.value_at_zero();
  // inner: lambda * phi(0) constant in v, so the slope must vanish
  if (!(img.inner_slope == CLogExact{})) return false;
  if (!(img.inner_const == at0 * lam)) return false;
  if (!img.outer_coeff.is_zero()) return false;
  for (const auto& [b, val] : img.window)
    if (!(val == f.eval(b.center) * lam)) return false;
  return true;
}

// int over units of (1 - chi(u)) / |1 - u| d*u, exactly f log p.
// The shells S_j = U_j \ U_{j+1} have |1 - u| = p^-j, and chi averages over
// the subgroups U_j to their mass or to 0, so only masses enter.
inline LogExact conductor_integral(const UnitaryCharacter& chi) {
  if (!chi.place().exact_model())
    throw std::invalid_argument("conductor integral needs the exact model");
  const long p = chi.place().p;
  const int f = chi.conductor_exponent();
  auto layer_mass = [&](int j) -> Rational {  // d*(U_j)
    if (j == 0) return Rational(1);
    Rational units = 1;  // #(Z/p^j)^*
    if (j >= 1) {
      Rational pj = pow_int(p, j - 1);
      units = Rational(p - 1) * pj;
    }
    return 1 / units;
  };
  Rational total = 0;
  for (int j = 0; j <= f; ++j) {
    Rational mass = layer_mass(j) - layer_mass(j + 1);
    Rational avg = (chi.trivial_on_unit_layer(j) ? layer_mass(j) : Rational(0)) -
                   (chi.trivial_on_unit_layer(j + 1) ? layer_mass(j + 1)
                                                     : Rational(0));
    total += pow_int(p, j) * (mass - avg);
  }
  return LogExact{Rational(0), total, p};
}

// ---------------------------------------------------------------- archimedean

namespace detail {

// tails of int_X^inf sin(freq x)/x^n dx and the cosine variant by repeated
// integration by parts; accurate once freq * X is large (we use X >= 32)
inline double osc_sin_tail(double freq, double X, int n, int depth = 10);
inline double osc_cos_tail(double freq, double X, int n, int depth = 10) {
  if (depth == 0) return 0.0;
  return -std::sin(freq * X) / (freq * std::pow(X, n)) +
         (n / freq) * osc_sin_tail(freq, X, n + 1, depth - 1);
}
inline double osc_sin_tail(double freq, double X, int n, int depth) {
  if (depth == 0) return 0.0;
  return std::cos(freq * X) / (freq * std::pow(X, n)) -
         (n / freq) * osc_cos_tail(freq, X, n + 1, depth - 1);
}

// int_{|x| > X} omega(x)/|x| dx for the real tags
inline double real_omega_tail(OmegaTag w, double X) {
  switch (w) {
    case OmegaTag::real_unit_ball: return 0.0;  // X >= 1 enforced by caller
    case OmegaTag::real_gaussian: return 0.0;   // X >= 4: < 1e-18
    case OmegaTag::real_sinc:
      return (2.0 / std::numbers::pi) * osc_sin_tail(std::numbers::pi, X, 2);
    default:  // sinc^2: (1 - cos 2 pi x)/(pi^2 x^3)
      return (0.5 / (X * X) -
              osc_cos_tail(2.0 * std::numbers::pi, X, 3)) /
             (std::numbers::pi * std::numbers::pi);
  }
}

inline double real_omega_value(OmegaTag w, double x) {
  switch (w) {
    case OmegaTag::real_unit_ball: return std::abs(x) <= 1.0 ? 1.0 : 0.0;
    case OmegaTag::real_gaussian: return std::exp(-std::numbers::pi * x * x);
    case OmegaTag::real_sinc: {
      const double t = std::numbers::pi * x;
      return std::abs(t) < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t;
    }
    default: {
      const double t = std::numbers::pi * x;
      const double s = std::abs(t) < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t;
      return s * s;
    }
  }
}

inline double complex_omega_value(OmegaTag w, double r) {
  if (w == OmegaTag::complex_unit_disc) return r <= 1.0 ? 1.0 : 0.0;
  return std::exp(-2.0 * std::numbers::pi * r * r);
}

}  // namespace detail

// G(phi) at the real place; phi given with a radius beyond which it vanishes
// (or decays below double precision, for Gaussian-type inputs)
template <class F>
std::complex<double> g_apply_real(F&& phi, double support_radius, OmegaTag w,
                                  const QuadratureOptions& opt = {}) {
  if (!omega_is_real(w))
    throw std::invalid_argument("real g_apply needs a real omega tag");
  const std::complex<double> at0 = phi(0.0);
  double X = std::max(support_radius, 4.0);
  if (w == OmegaTag::real_sinc || w == OmegaTag::real_sinc_sq)
    X = std::max(X, 32.0);
  auto integrand = [&](double x) -> std::complex<double> {
    return (phi(x) - at0 * detail::real_omega_value(w, x)) / std::abs(x);
  };
  std::complex<double> core;
  if (w == OmegaTag::real_unit_ball && X > 1.0) {
    // omega jumps at |x| = 1; keep the breakpoint on a panel edge
    core = integrate(integrand, 0.0, 1.0, opt) +
           integrate(integrand, 1.0, X, opt) +
           integrate(integrand, -1.0, 0.0, opt) +
           integrate(integrand, -X, -1.0, opt);
  } else {
    core = integrate(integrand, 0.0, X, opt) +
           integrate(integrand, -X, 0.0, opt);
  }
  std::complex<double> tail = -at0 * detail::real_omega_tail(w, X);
  return 0.5 * (core + tail) + omega_constant(w) * at0;
}

// G(phi) at the complex place; phi is a function of z = r e^{i theta}
template <class F>
std::complex<double> g_apply_complex(F&& phi, double support_radius,
                                     OmegaTag w,
                                     const QuadratureOptions& opt = {}) {
  if (omega_is_finite(w) || omega_is_real(w))
    throw std::invalid_argument("complex g_apply needs a complex omega tag");
  const std::complex<double> at0 = phi(std::complex<double>(0.0));
  const double X = std::max(support_radius, 3.0);
  auto theta_mean = [&](double r) -> std::complex<double> {
    int n = 16;
    std::complex<double> prev = 0.0, cur = 0.0;
    for (;; n *= 2) {
      cur = 0.0;
      for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * i / n;
        cur += phi(std::polar(r, th));
      }
      cur /= static_cast<double>(n);
      if (n > 16 && std::abs(cur - prev) <= 1e-14 * (1.0 + std::abs(cur)))
        break;
      if (n >= 4096) break;
      prev = cur;
    }
    return cur;
  };
  // (1/pi) int_0^X (2 pi avg_theta phi - 2 pi phi(0) omega) dr / r, written
  // with the 2 pi folded into theta_mean's normalization
  auto integrand = [&](double r) -> std::complex<double> {
    return 2.0 * (theta_mean(r) - at0 * detail::complex_omega_value(w, r)) / r;
  };
  std::complex<double> core;
  if (w == OmegaTag::complex_unit_disc && X > 1.0) {
    // omega jumps at r = 1; keep the breakpoint on a panel edge
    core = integrate(integrand, 0.0, 1.0, opt) + integrate(integrand, 1.0, X, opt);
  } else {
    core = integrate(integrand, 0.0, X, opt);
  }
  return core + omega_constant(w) * at0;
}

}  // namespace lfn
