#pragma once

// Test functions on the positive multiplicative line and their Mellin
// transforms ghat(s) = int g(u) u^s du/u.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "lfn/quadrature.hpp"

namespace lfn {

enum class TestFamily { smooth_bump, log_gaussian };

// smooth_bump: g(u) = A exp(1 - 1/(1 - x^2)), x = log(u/u0)/L, |x| < 1.
//   C^infty, supported on [u0 e^-L, u0 e^L], g(u0) = A.
// log_gaussian: g(u) = A exp(-log(u/u0)^2 / (2 sigma^2)).  Not compactly
//   supported; its Mellin transform is exact.
class MultiplicativeTestFunction {
 public:
  static MultiplicativeTestFunction smooth_bump(double u0, double L,
                                                double amplitude = 1.0) {
    if (!(u0 > 0.0) || !(L > 0.0))
      throw std::invalid_argument("smooth_bump: need u0 > 0, L > 0");
    return {TestFamily::smooth_bump, u0, L, amplitude};
  }
  static MultiplicativeTestFunction log_gaussian(double u0, double sigma,
                                                 double amplitude = 1.0) {
    if (!(u0 > 0.0) || !(sigma > 0.0))
      throw std::invalid_argument("log_gaussian: need u0 > 0, sigma > 0");
    return {TestFamily::log_gaussian, u0, sigma, amplitude};
  }

  TestFamily family() const { return family_; }
  double center() const { return u0_; }
  double width() const { return width_; }
  double amplitude() const { return amp_; }
  bool compact_support() const { return family_ == TestFamily::smooth_bump; }
  double support_lo() const {
    return compact_support() ? u0_ * std::exp(-width_) : 0.0;
  }
  double support_hi() const {
    return compact_support() ? u0_ * std::exp(width_)
                             : std::numeric_limits<double>::infinity();
  }

  double operator()(double u) const {
    if (!(u > 0.0)) return 0.0;
    const double x = std::log(u / u0_) / width_;
    if (family_ == TestFamily::smooth_bump) {
      if (std::abs(x) >= 1.0) return 0.0;
      return amp_ * std::exp(1.0 - 1.0 / (1.0 - x * x));
    }
    return amp_ * std::exp(-0.5 * x * x);
  }

  double derivative(double u) const {
    if (!(u > 0.0)) return 0.0;
    const double x = std::log(u / u0_) / width_;
    if (family_ == TestFamily::smooth_bump) {
      if (std::abs(x) >= 1.0) return 0.0;
      const double d = 1.0 - x * x;
      return (*this)(u) * (-2.0 * x / (d * d)) / (width_ * u);
    }
    return (*this)(u) * (-x) / (width_ * u);
  }

 private:
  MultiplicativeTestFunction(TestFamily fam, double u0, double w, double a)
      : family_(fam), u0_(u0), width_(w), amp_(a) {}
  TestFamily family_;
  double u0_, width_, amp_;
};

inline std::complex<double> mellin_hat(const MultiplicativeTestFunction& g,
                                       std::complex<double> s,
                                       const QuadratureOptions& opt = {
                                           1e-13, 1e-13, 48}) {
  const double c = std::log(g.center());
  if (g.family() == TestFamily::log_gaussian) {
    const double sig = g.width();
    return g.amplitude() * std::sqrt(2.0 * std::numbers::pi) * sig *
           std::exp(s * c + 0.5 * s * s * (sig * sig));
  }
  const double L = g.width();
  // substitute u = e^a; oscillation in Im(s) sets the panel count.  The
  // integrand is flat to all orders at the edges, so a fixed rule at six
  // radians per panel is already at machine accuracy; the 32-panel floor
  // resolves the boundary layers of the bump edges.
  auto f = [&](double a) { return g(std::exp(a)) * std::exp(s * a); };
  const double tau = std::abs(s.imag());
  const int panels = 32 + static_cast<int>(L * tau / 3.0);
  std::complex<double> r = 0.0;
  const double lo = c - L, step = 2.0 * L / panels;
  for (int i = 0; i < panels; ++i)
    r += detail::gl15(f, lo + i * step, lo + (i + 1) * step);
  return r;
}

}  // namespace lfn
