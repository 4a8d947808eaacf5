#pragma once

// Exact rational and Gaussian-rational arithmetic on top of GMP, plus the
// p-adic valuation helpers the local-field layer is built on.

#include <gmpxx.h>

#include <compare>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lfn {

using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return r;
}

inline std::string to_string(const Rational& r) {
  return r.get_str();  // "n" or "n/d", canonical
}

inline double to_double(const Rational& r) { return r.get_d(); }

// exact p^e for integer e of either sign
inline Rational pow_int(long p, long e) {
  mpz_class num = 1, den = 1;
  if (e >= 0)
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e));
  else
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(-e));
  return Rational(num, den);
}

// v_p(x) for x != 0; throws on 0 (valuation of 0 is +infinity)
inline long valuation(long p, const Rational& x) {
  if (x == 0) throw std::domain_error("valuation of zero");
  mpz_class pz = p;
  mpz_class n = x.get_num(), d = x.get_den();
  long v = 0;
  mpz_class q, r;
  while (true) {
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    if (r != 0) break;
    n = q;
    ++v;
  }
  while (true) {
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
    if (r != 0) break;
    d = q;
    --v;
  }
  return v;
}

// |x|_p = p^{-v_p(x)}; |0|_p = 0
inline Rational abs_p(long p, const Rational& x) {
  if (x == 0) return Rational(0);
  return pow_int(p, -valuation(p, x));
}

// unit part u of x = p^v * u, as an exact rational with v_p(u) = 0
inline Rational unit_part(long p, const Rational& x) {
  return x / pow_int(p, valuation(p, x));
}

// canonical representative of x mod p^k Z_p inside Q: the unique r in
// [0, p^k) with denominator coprime to p and x - r in p^k Z_p.
// Requires v_p(x) >= 0.
inline Rational reduce_mod_pk(long p, const Rational& x, long k) {
  if (k <= 0) throw std::invalid_argument("reduce_mod_pk needs k >= 1");
  if (x == 0) return Rational(0);
  if (valuation(p, x) < 0)
    throw std::domain_error("reduce_mod_pk: not a p-adic integer");
  mpz_class mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(k));
  mpz_class num = x.get_num() % mod, den = x.get_den() % mod, inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw std::domain_error("reduce_mod_pk: denominator not invertible");
  mpz_class r = (num * inv) % mod;
  if (r < 0) r += mod;
  return Rational(r);
}

// Gaussian rational a + bi.  Enough field arithmetic for character values
// and Bruhat coefficients; nothing clever.
struct CRational {
  Rational re{0}, im{0};

  CRational() = default;
  CRational(Rational r) : re(std::move(r)) {}
  CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  CRational(long r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend CRational operator+(const CRational& a, const CRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend CRational operator-(const CRational& a, const CRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend CRational operator-(const CRational& a) { return {-a.re, -a.im}; }
  friend CRational operator*(const CRational& a, const CRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CRational operator*(const Rational& a, const CRational& b) {
    return {a * b.re, a * b.im};
  }
  friend CRational operator/(const CRational& a, const CRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw std::domain_error("division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  CRational& operator+=(const CRational& b) { return *this = *this + b; }
  CRational& operator-=(const CRational& b) { return *this = *this - b; }
  CRational& operator*=(const CRational& b) { return *this = *this * b; }
  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  CRational conj() const { return {re, -im}; }
};

inline CRational i_power(long k) {  // i^k, k mod 4
  switch (((k % 4) + 4) % 4) {
    case 0: return CRational(Rational(1));
    case 1: return CRational(Rational(0), Rational(1));
    case 2: return CRational(Rational(-1));
    default: return CRational(Rational(0), Rational(-1));
  }
}

inline std::complex<double> to_complex(const CRational& z) {
  return {to_double(z.re), to_double(z.im)};
}

}  // namespace lfn
