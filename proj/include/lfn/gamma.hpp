#pragma once

// Multiplicative Fourier coefficients ("gamma factors") of the completions
// of Q: the scalar Gamma(chi, s) with
//
//   F( chi(x) |x|^{s-1} ) = Gamma(chi, s) chi^{-1}(y) |y|^{-s}
//
// for the self-dual additive Fourier transform F phi(y) = int phi(x)
// lambda(-xy) dx.  Defined on the open strip 0 < Re s < 1; a |.|^{i tau}
// twist is the substitution s -> s + i tau.
//
//   finite, unramified: q^{delta(s - 1/2)} (1 - q^{s-1}) / (1 - q^{-s})
//   finite, conductor f >= 1: w(chi) q^{(f+delta)(s - 1/2)} with the root
//     number w(chi) = chi(-1) g(chi) p^{-f/2}, g the Gauss sum
//   real, even:  pi^{1/2-s} Gamma(s/2) / Gamma((1-s)/2)
//   real, odd: i pi^{1/2-s} Gamma((s+1)/2) / Gamma((2-s)/2)
//   complex, weight N: i^{|N|} (2 pi)^{1-2s} Gamma(|N|/2 + s) /
//     Gamma(|N|/2 + 1 - s)

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "lfn/localfield.hpp"
#include "lfn/special.hpp"

namespace lfn {

inline void require_strip(std::complex<double> s) {
  if (!(s.real() > 0.0 && s.real() < 1.0))
    throw std::domain_error("argument outside the open strip 0 < Re s < 1");
}

// g(chi) = sum over units u mod p^f of chi(u) e^{2 pi i u / p^f}
inline std::complex<double> gauss_sum(const UnitaryCharacter& chi) {
  if (!chi.is_ramified()) throw std::domain_error("Gauss sum needs f >= 1");
  const long p = chi.place().p;
  long pf = 1;
  for (int i = 0; i < chi.conductor_exponent(); ++i) pf *= p;
  std::complex<double> s = 0.0;
  for (long u = 1; u < pf; ++u) {
    if (u % p == 0) continue;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(u) /
                       static_cast<double>(pf);
    s += chi.unit_value(Rational(u)) *
         std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

inline std::complex<double> root_number(const UnitaryCharacter& chi) {
  if (!chi.place().is_finite() || !chi.is_ramified())
    throw std::domain_error("root number: ramified finite character expected");
  const double pf = std::pow(static_cast<double>(chi.place().p),
                             static_cast<double>(chi.conductor_exponent()));
  return chi.value_at_minus_one() * gauss_sum(chi) / std::sqrt(pf);
}

inline std::complex<double> gamma_factor(const UnitaryCharacter& chi,
                                         std::complex<double> s) {
  require_strip(s);
  const std::complex<double> ss = s + std::complex<double>(0.0, chi.tau());
  switch (chi.place().kind) {
    case PlaceKind::finite: {
      const double q = static_cast<double>(chi.place().q);
      const double lq = std::log(q);
      if (!chi.is_ramified()) {
        const std::complex<double> num = 1.0 - std::exp((ss - 1.0) * lq);
        const std::complex<double> den = 1.0 - std::exp(-ss * lq);
        return std::exp(static_cast<double>(chi.place().delta) * (ss - 0.5) *
                        lq) *
               num / den;
      }
      const double fd = chi.conductor_exponent() + chi.place().delta;
      return root_number(chi) * std::exp(fd * (ss - 0.5) * lq);
    }
    case PlaceKind::real: {
      const double lpi = std::log(std::numbers::pi);
      if (chi.parity() == 0)
        return std::exp((0.5 - ss) * lpi + log_gamma(0.5 * ss) -
                        log_gamma(0.5 * (1.0 - ss)));
      return std::complex<double>(0.0, 1.0) *
             std::exp((0.5 - ss) * lpi + log_gamma(0.5 * (ss + 1.0)) -
                      log_gamma(1.0 - 0.5 * ss));
    }
    default: {
      const double a = 0.5 * std::abs(chi.weight());
      const double l2pi = std::log(2.0 * std::numbers::pi);
      std::complex<double> r =
          std::exp((1.0 - 2.0 * ss) * l2pi + log_gamma(a + ss) -
                   log_gamma(a + 1.0 - ss));
      switch (std::abs(chi.weight()) % 4) {
        case 1: r *= std::complex<double>(0.0, 1.0); break;
        case 2: r = -r; break;
        case 3: r *= std::complex<double>(0.0, -1.0); break;
        default: break;
      }
      return r;
    }
  }
}

}  // namespace lfn
