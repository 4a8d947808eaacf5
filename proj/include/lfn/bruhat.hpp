#pragma once

// Bruhat-Schwartz functions on Q_p: finite linear combinations of ball
// indicators 1_{B(c, p^-k)}, B(c, p^-k) = { x : |x - c|_p <= p^-k }.
//
// Canonical form: pairwise disjoint balls, each center either 0 or the
// reduced representative p^v u with u in [1, p^{k-v}) prime to p, no zero
// coefficients.  Two combinations represent the same function iff their
// canonical forms agree up to sibling merges; canonicalize() also performs
// those merges, so equality of canonical forms is pointwise equality.
//
// Coefficients are a template parameter: exact Gaussian rationals for the
// conductor-operator algebra, complex doubles for additive Fourier images
// (whose coefficients are roots of unity of unbounded order).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "lfn/localfield.hpp"
#include "lfn/rational.hpp"

namespace lfn {

namespace detail {
inline CRational coeff_scale(const CRational& c, const Rational& r) {
  return r * c;
}
inline std::complex<double> coeff_scale(const std::complex<double>& c,
                                        const Rational& r) {
  return c * to_double(r);
}
inline bool coeff_is_zero(const CRational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& c) { return c == 0.0; }
}  // namespace detail

struct Ball {
  Rational center;
  long k = 0;  // radius p^-k
  friend bool operator==(const Ball& a, const Ball& b) {
    return a.k == b.k && a.center == b.center;
  }
};

template <class Coeff>
class BasicBruhat {
 public:
  struct Term {
    Ball ball;
    Coeff coeff;
  };

  explicit BasicBruhat(long p) : p_(p) {
    if (p < 2) throw std::invalid_argument("prime must be >= 2");
  }

  static BasicBruhat indicator(long p, Ball b, Coeff c = Coeff(1)) {
    BasicBruhat f(p);
    f.add_term(b, std::move(c));
    f.canonicalize();
    return f;
  }

  long prime() const { return p_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool canonical() const { return canonical_; }
  bool empty() const { return terms_.empty(); }

  void add_term(Ball b, Coeff c) {
    terms_.push_back({std::move(b), std::move(c)});
    canonical_ = false;
  }

  BasicBruhat& canonicalize() {
    if (canonical_) return *this;
    std::vector<Term> src;
    src.swap(terms_);
    for (auto& t : src) insert_piece(canonical_ball(t.ball), t.coeff);
    drop_zeros();
    merge_siblings();
    canonical_ = true;
    return *this;
  }

  // pointwise value; requires canonical form
  Coeff eval(const Rational& x) const {
    require_canonical();
    for (const auto& t : terms_)
      if (ball_contains_point(t.ball, x)) return t.coeff;
    return Coeff(0);
  }

  Coeff value_at_zero() const { return eval(Rational(0)); }

  // integral against the self-dual additive measure (vol B(c, p^-k) = p^-k)
  Coeff integral() const {
    Coeff s(0);
    for (const auto& t : terms_)
      s = s + detail::coeff_scale(t.coeff, pow_int(p_, -t.ball.k));
    return s;
  }

  bool supported_away_from_zero() const {
    require_canonical();
    for (const auto& t : terms_)
      if (t.ball.center == 0) return false;
    return true;
  }

  // support lies in { |x| <= p^B }: the least such B
  long support_radius_exp() const {
    require_canonical();
    if (terms_.empty()) throw std::domain_error("empty support");
    long B = std::numeric_limits<long>::min();
    for (const auto& t : terms_) {
      long b = t.ball.center == 0 ? -t.ball.k
                                  : -valuation(p_, t.ball.center);
      B = std::max(B, b);
    }
    return B;
  }
  // largest v0 with support inside { |x| >= p^-v0 } (throws on 0 in support)
  long support_floor_exp() const {
    require_canonical();
    if (!supported_away_from_zero())
      throw std::domain_error("support reaches 0");
    long A = std::numeric_limits<long>::min();
    for (const auto& t : terms_)
      A = std::max(A, valuation(p_, t.ball.center));
    return A;
  }
  // finest granularity exponent
  long granularity_exp() const {
    long K = std::numeric_limits<long>::min();
    for (const auto& t : terms_) K = std::max(K, t.ball.k);
    return K;
  }

  BasicBruhat operator+(const BasicBruhat& o) const {
    check_same_prime(o);
    BasicBruhat r(p_);
    r.terms_ = terms_;
    for (const auto& t : o.terms_) r.terms_.push_back(t);
    r.canonical_ = false;
    r.canonicalize();
    return r;
  }
  BasicBruhat operator-() const {
    BasicBruhat r(p_);
    for (const auto& t : terms_) r.add_term(t.ball, Coeff(0) - t.coeff);
    r.canonical_ = canonical_;
    return r;
  }
  BasicBruhat operator-(const BasicBruhat& o) const { return *this + (-o); }
  BasicBruhat scaled(const Coeff& c) const {
    BasicBruhat r(p_);
    for (const auto& t : terms_) r.add_term(t.ball, t.coeff * c);
    r.canonicalize();
    return r;
  }

  // phi(x/t): balls scale by t
  BasicBruhat dilated(const Rational& t) const {
    if (t == 0) throw std::invalid_argument("dilation by 0");
    long vt = valuation(p_, t);
    BasicBruhat r(p_);
    for (const auto& tm : terms_)
      r.add_term({tm.ball.center * t, tm.ball.k + vt}, tm.coeff);
    r.canonicalize();
    return r;
  }
  // phi(a - x) (reflect through a/2); used to shift convolutions
  BasicBruhat reflected_at(const Rational& a) const {
    BasicBruhat r(p_);
    for (const auto& tm : terms_)
      r.add_term({a - tm.ball.center, tm.ball.k}, tm.coeff);
    r.canonicalize();
    return r;
  }

  friend bool operator==(const BasicBruhat& a, const BasicBruhat& b) {
    a.require_canonical();
    b.require_canonical();
    if (a.p_ != b.p_ || a.terms_.size() != b.terms_.size()) return false;
    auto key = [](const Term& t) {
      return std::make_pair(t.ball.k, t.ball.center);
    };
    auto as = a.terms_, bs = b.terms_;
    auto cmp = [&](const Term& x, const Term& y) {
      if (x.ball.k != y.ball.k) return x.ball.k < y.ball.k;
      return x.ball.center < y.ball.center;
    };
    std::sort(as.begin(), as.end(), cmp);
    std::sort(bs.begin(), bs.end(), cmp);
    for (size_t i = 0; i < as.size(); ++i)
      if (!(key(as[i]) == key(bs[i])) || !(as[i].coeff == bs[i].coeff))
        return false;
    return true;
  }

  // canonical-form invariant, used by property tests
  bool check_canonical_invariants() const {
    if (!canonical_) return false;
    for (size_t i = 0; i < terms_.size(); ++i) {
      const auto& b = terms_[i].ball;
      if (detail::coeff_is_zero(terms_[i].coeff)) return false;
      if (!(b == canonical_ball(b))) return false;
      for (size_t j = i + 1; j < terms_.size(); ++j)
        if (balls_intersect(b, terms_[j].ball)) return false;
    }
    return true;
  }

  Ball canonical_ball(const Ball& b) const {
    if (b.center == 0 || valuation(p_, b.center) >= b.k)
      return {Rational(0), b.k};
    long v = valuation(p_, b.center);
    Rational u = reduce_mod_pk(p_, unit_part(p_, b.center), b.k - v);
    return {u * pow_int(p_, v), b.k};
  }

  bool ball_contains_point(const Ball& b, const Rational& x) const {
    if (x == b.center) return true;
    return valuation(p_, x - b.center) >= b.k;
  }

 private:
  void require_canonical() const {
    if (!canonical_)
      throw std::logic_error("operation requires canonical form");
  }
  void check_same_prime(const BasicBruhat& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed primes");
  }

  static bool contains(const Ball& a, const Ball& b, long p) {
    if (a.k > b.k) return false;
    if (a.center == b.center) return true;
    return valuation(p, a.center - b.center) >= a.k;
  }
  bool balls_intersect(const Ball& a, const Ball& b) const {
    return contains(a, b, p_) || contains(b, a, p_);
  }

  Rational truncate_center(const Rational& x, long j) const {
    if (x == 0) return Rational(0);
    long v = valuation(p_, x);
    if (v >= j) return Rational(0);
    Rational u = reduce_mod_pk(p_, unit_part(p_, x), j - v);
    return u * pow_int(p_, v);
  }
  // p-adic digit of x at p^j
  long digit_at(const Rational& x, long j) const {
    Rational d = (truncate_center(x, j + 1) - truncate_center(x, j)) /
                 pow_int(p_, j);
    return static_cast<long>(d.get_num().get_si());
  }
  Ball child_ball(const Ball& b, long t) const {
    return canonical_ball({b.center + Rational(t) * pow_int(p_, b.k), b.k + 1});
  }

  void insert_piece(Ball b, Coeff c) {
    if (terms_.size() > 200000)
      throw std::runtime_error("Bruhat function exceeds term budget");
    for (size_t i = 0; i < terms_.size(); ++i) {
      Ball pb = terms_[i].ball;
      if (contains(pb, b, p_)) {
        if (pb.k == b.k) {
          terms_[i].coeff = terms_[i].coeff + c;
          return;
        }
        // split the enclosing piece along the path down to b
        Coeff d = terms_[i].coeff;
        terms_.erase(terms_.begin() + i);
        for (long j = pb.k; j < b.k; ++j) {
          Rational parent = truncate_center(b.center, j);
          long keep = digit_at(b.center, j);
          for (long t = 0; t < p_; ++t)
            if (t != keep)
              terms_.push_back(
                  {child_ball({parent, j}, t), d});
        }
        terms_.push_back({b, d + c});
        return;
      }
    }
    std::vector<Term> inside;
    for (size_t i = terms_.size(); i-- > 0;) {
      if (contains(b, terms_[i].ball, p_)) {
        inside.push_back(terms_[i]);
        terms_.erase(terms_.begin() + i);
      }
    }
    if (inside.empty()) {
      terms_.push_back({b, c});
      return;
    }
    split_region(b, c, inside);
  }

  // cover B minus the inner pieces with fresh pieces of coefficient c,
  // folding c into the inner pieces themselves
  void split_region(const Ball& b, const Coeff& c, std::vector<Term>& inner) {
    if (inner.size() == 1 && inner[0].ball == b) {
      terms_.push_back({b, inner[0].coeff + c});
      return;
    }
    for (long t = 0; t < p_; ++t) {
      Ball child = child_ball(b, t);
      std::vector<Term> group;
      for (const auto& tm : inner)
        if (contains(child, tm.ball, p_)) group.push_back(tm);
      if (group.empty())
        terms_.push_back({child, c});
      else
        split_region(child, c, group);
    }
  }

  void drop_zeros() {
    std::erase_if(terms_,
                  [](const Term& t) { return detail::coeff_is_zero(t.coeff); });
  }

  void merge_siblings() {
    bool again = true;
    while (again) {
      again = false;
      std::map<std::pair<long, std::string>, std::vector<size_t>> fam;
      for (size_t i = 0; i < terms_.size(); ++i) {
        const auto& b = terms_[i].ball;
        fam[{b.k, truncate_center(b.center, b.k - 1).get_str()}].push_back(i);
      }
      for (auto& [key, idxs] : fam) {
        if (static_cast<long>(idxs.size()) != p_) continue;
        bool same = true;
        for (size_t j = 1; j < idxs.size(); ++j)
          if (!(terms_[idxs[j]].coeff == terms_[idxs[0]].coeff)) same = false;
        if (!same) continue;
        Ball parent{rational_from_string(key.second), key.first - 1};
        Coeff c = terms_[idxs[0]].coeff;
        std::vector<size_t> dead = idxs;
        std::sort(dead.rbegin(), dead.rend());
        for (size_t i : dead) terms_.erase(terms_.begin() + i);
        terms_.push_back({canonical_ball(parent), c});
        again = true;
        break;
      }
    }
  }

  long p_;
  std::vector<Term> terms_;
  bool canonical_ = true;  // empty function is canonical
};

using BruhatFunction = BasicBruhat<CRational>;
using BruhatFunctionF = BasicBruhat<std::complex<double>>;

// 1_{Z_p}
inline BruhatFunction unit_ball_indicator(long p) {
  return BruhatFunction::indicator(p, {Rational(0), 0});
}

// additive Fourier transform with lambda(x) = exp(2 pi i {x}):
// F phi(y) = int phi(x) lambda(-x y) dx, so a ball maps to
// p^-k lambda(-c y) 1_{|y| <= p^k}, expanded on the constancy scale of the
// phase.  Image coefficients are roots of unity times rationals, hence the
// floating-coefficient return type.
template <class Coeff>
BruhatFunctionF fourier_transform(const BasicBruhat<Coeff>& phi) {
  const long p = phi.prime();
  BruhatFunctionF out(p);
  for (const auto& t : phi.terms()) {
    std::complex<double> base;
    if constexpr (std::is_same_v<Coeff, CRational>)
      base = to_complex(t.coeff);
    else
      base = t.coeff;
    base *= to_double(pow_int(p, -t.ball.k));
    const Rational& a = t.ball.center;
    const long k = t.ball.k;
    if (a == 0) {
      out.add_term({Rational(0), -k}, base);
      continue;
    }
    const long m = -valuation(p, a);  // phase constant on radius p^-m
    const long kk = std::max(m, -k);
    double count = std::pow(static_cast<double>(p),
                            static_cast<double>(kk + k));
    if (count > 20000.0)
      throw std::runtime_error(
          "Fourier image too fine to represent (term budget)");
    const long n_balls = static_cast<long>(count + 0.5);
    const Rational step = pow_int(p, -k);
    for (long n = 0; n < n_balls; ++n) {
      Rational y0 = Rational(n) * step;
      Rational arg = a * y0;  // lambda(-a y0) = e^{-2 pi i {a y0}}
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), arg.get_num().get_mpz_t(),
                 arg.get_den().get_mpz_t());
      Rational frac = arg - Rational(fl);
      const double ang = -2.0 * std::numbers::pi * to_double(frac);
      out.add_term({y0, kk},
                   base * std::complex<double>(std::cos(ang), std::sin(ang)));
    }
  }
  out.canonicalize();
  return out;
}

// Laurent polynomial in X = q^{-s}
struct LaurentPoly {
  long q = 0;
  std::map<long, std::complex<double>> coeff;
  std::complex<double> eval(std::complex<double> s) const {
    std::complex<double> r = 0.0;
    const double lq = std::log(static_cast<double>(q));
    for (const auto& [n, c] : coeff)
      r += c * std::exp(-s * (static_cast<double>(n) * lq));
    return r;
  }
};

// int phi(t) chi^{-1}(t) |t|^{-s} dt as a Laurent polynomial in X = p^{-s}
// (the shell |t| = p^{-v} sits at X^{-v}).  chi's residue-character part
// only; a |.|^{i tau} twist is the shift s -> s + i tau at evaluation time.
// Requires support away from 0.
template <class Coeff>
LaurentPoly shell_mellin(const BasicBruhat<Coeff>& phi,
                         const UnitaryCharacter& chi) {
  if (!chi.place().is_finite() || chi.place().p != phi.prime())
    throw std::invalid_argument("character/function place mismatch");
  LaurentPoly P;
  P.q = phi.prime();
  const long p = phi.prime();
  const int f = chi.conductor_exponent();
  for (const auto& t : phi.terms()) {
    if (t.ball.center == 0)
      throw std::domain_error("shell transform needs support away from 0");
    const long v = valuation(p, t.ball.center);
    const long j = t.ball.k - v;  // ball = c (1 + p^j Z_p) multiplicatively
    if (j < f) continue;          // character averages to 0 on the coset
    std::complex<double> cv =
        f ? std::conj(chi.unit_value(unit_part(p, t.ball.center)))
          : std::complex<double>(1.0);
    std::complex<double> c;
    if constexpr (std::is_same_v<Coeff, CRational>)
      c = to_complex(t.coeff);
    else
      c = t.coeff;
    P.coeff[-v] += c * cv * to_double(pow_int(p, -t.ball.k));
  }
  return P;
}

}  // namespace lfn
