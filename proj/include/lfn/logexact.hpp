#pragma once

// Values of the form a + b log q with rational a, b: everything the exact
// finite-place computations produce.  Addition and rational scaling only;
// mixing bases is a caller error.

#include <cmath>
#include <stdexcept>
#include <string>

#include "lfn/rational.hpp"

namespace lfn {

struct LogExact {
  Rational constant{0};
  Rational log_coeff{0};
  long base = 0;  // 0 when log_coeff == 0 (pure rational, any base)

  LogExact() = default;
  LogExact(Rational c, Rational l, long q)
      : constant(std::move(c)), log_coeff(std::move(l)), base(q) {
    normalize();
  }
  static LogExact rational(Rational c) {
    return LogExact{std::move(c), Rational(0), 0};
  }
  static LogExact log_multiple(Rational l, long q) {
    return LogExact{Rational(0), std::move(l), q};
  }

  void normalize() {
    if (log_coeff == 0) base = 0;
    if (log_coeff != 0 && base < 2)
      throw std::invalid_argument("log base must be >= 2");
  }

  bool is_zero() const { return constant == 0 && log_coeff == 0; }
  double value() const {
    double v = to_double(constant);
    if (log_coeff != 0)
      v += to_double(log_coeff) * std::log(static_cast<double>(base));
    return v;
  }

  friend LogExact operator+(const LogExact& a, const LogExact& b) {
    long q = a.base ? a.base : b.base;
    if (a.base && b.base && a.base != b.base)
      throw std::invalid_argument("mixed log bases");
    return LogExact{a.constant + b.constant, a.log_coeff + b.log_coeff, q};
  }
  friend LogExact operator-(const LogExact& a, const LogExact& b) {
    long q = a.base ? a.base : b.base;
    if (a.base && b.base && a.base != b.base)
      throw std::invalid_argument("mixed log bases");
    return LogExact{a.constant - b.constant, a.log_coeff - b.log_coeff, q};
  }
  friend LogExact operator*(const Rational& r, const LogExact& a) {
    return LogExact{r * a.constant, r * a.log_coeff, a.base};
  }
  friend bool operator==(const LogExact& a, const LogExact& b) {
    return a.constant == b.constant && a.log_coeff == b.log_coeff &&
           (a.log_coeff == 0 || a.base == b.base);
  }
};

// complex variant with Gaussian-rational parts
struct CLogExact {
  CRational constant{};
  CRational log_coeff{};
  long base = 0;

  CLogExact() = default;
  CLogExact(CRational c, CRational l, long q)
      : constant(std::move(c)), log_coeff(std::move(l)), base(q) {
    if (log_coeff.is_zero()) base = 0;
    if (!log_coeff.is_zero() && base < 2)
      throw std::invalid_argument("log base must be >= 2");
  }
  static CLogExact from(const LogExact& r) {
    return CLogExact{CRational(r.constant), CRational(r.log_coeff), r.base};
  }

  bool is_zero() const { return constant.is_zero() && log_coeff.is_zero(); }
  std::complex<double> value() const {
    std::complex<double> v = to_complex(constant);
    if (!log_coeff.is_zero())
      v += to_complex(log_coeff) * std::log(static_cast<double>(base));
    return v;
  }

  friend CLogExact operator+(const CLogExact& a, const CLogExact& b) {
    long q = a.base ? a.base : b.base;
    if (a.base && b.base && a.base != b.base)
      throw std::invalid_argument("mixed log bases");
    return CLogExact{a.constant + b.constant, a.log_coeff + b.log_coeff, q};
  }
  friend CLogExact operator-(const CLogExact& a, const CLogExact& b) {
    long q = a.base ? a.base : b.base;
    if (a.base && b.base && a.base != b.base)
      throw std::invalid_argument("mixed log bases");
    return CLogExact{a.constant - b.constant, a.log_coeff - b.log_coeff, q};
  }
  friend CLogExact operator*(const CRational& r, const CLogExact& a) {
    return CLogExact{r * a.constant, r * a.log_coeff, a.base};
  }
  friend bool operator==(const CLogExact& a, const CLogExact& b) {
    return a.constant == b.constant && a.log_coeff == b.log_coeff &&
           (a.log_coeff.is_zero() || a.base == b.base);
  }
};

}  // namespace lfn
