#pragma once

// Completions of Q and unitary characters of their multiplicative groups.
//
// A finite place carries residue cardinality q = p^e and the exponent delta
// of the different (the self-dual additive measure gives the integers mass
// q^{-delta/2}).  Exact arithmetic (Bruhat functions, conductor operator
// identities) is only offered on the "exact model" places: q = p prime,
// delta = 0, i.e. Q_p with its standard self-dual measure.
//
// Ramified character data lives on exact-model places as characters of
// (Z/p^f)^*.  For odd p that group is cyclic and a character is one index
// against a fixed primitive root; for p = 2, f >= 3 it is {+-1} x <5> and
// two indices are needed.  Character values at units are roots of unity;
// when the character order divides 4 they are exact Gaussian rationals.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lfn/rational.hpp"

namespace lfn {

enum class PlaceKind { finite, real, complex_field };

struct Place {
  PlaceKind kind = PlaceKind::finite;
  long q = 0;      // residue cardinality (finite places)
  long p = 0;      // residue characteristic
  int e = 0;       // q = p^e
  int delta = 0;   // exponent of the different

  static Place finite(long q, int delta = 0) {
    if (q < 2) throw std::invalid_argument("residue cardinality must be >= 2");
    if (delta < 0) throw std::invalid_argument("different exponent < 0");
    long p = smallest_prime_factor(q);
    long r = q;
    int e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1)
      throw std::invalid_argument("residue cardinality must be a prime power");
    Place v;
    v.kind = PlaceKind::finite;
    v.q = q;
    v.p = p;
    v.e = e;
    v.delta = delta;
    return v;
  }
  static Place real() {
    Place v;
    v.kind = PlaceKind::real;
    return v;
  }
  static Place complex_field() {
    Place v;
    v.kind = PlaceKind::complex_field;
    return v;
  }

  bool is_finite() const { return kind == PlaceKind::finite; }
  // Q_p with self-dual measure: the only places with exact Bruhat arithmetic
  bool exact_model() const {
    return kind == PlaceKind::finite && e == 1 && delta == 0;
  }

  // mass of the units under the multiplicative measure dx/|x|:
  // finite q^{-delta/2}(1 - 1/q); 2 for R (the two signs); 2*pi for C.
  // The normalized d*x divides by this, so gamma = 1/R below multiplies
  // additive-minus-multiplicative comparisons.
  double mult_unit_mass() const {
    switch (kind) {
      case PlaceKind::finite:
        return std::pow(static_cast<double>(q), -0.5 * delta) *
               (1.0 - 1.0 / static_cast<double>(q));
      case PlaceKind::real:
        return 2.0;
      default:
        return 2.0 * std::numbers::pi;
    }
  }
  Rational mult_unit_mass_exact() const {
    if (!exact_model())
      throw std::domain_error("exact measure only on the exact model");
    return Rational(q - 1, q);
  }

  friend bool operator==(const Place&, const Place&) = default;

 private:
  static long smallest_prime_factor(long n) {
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) return d;
    return n;
  }
};

// (R, gamma): R is the residue of the local Delta_s family at s = 0 and
// gamma = 1/R the density of normalized d*t against dt/|t|.  At a finite
// place the log q sits inside R, so gamma carries it.
inline std::pair<double, double> haar_constants(const Place& v) {
  double R;
  switch (v.kind) {
    case PlaceKind::finite:
      R = v.mult_unit_mass() / std::log(static_cast<double>(v.q));
      break;
    case PlaceKind::real: R = 2.0; break;
    default: R = 2.0 * std::numbers::pi; break;
  }
  return {R, 1.0 / R};
}

namespace detail {

// multiplicative structure of (Z/p^f)^*, cached per (p, f)
struct UnitGroupTable {
  long p = 0;
  int f = 0;
  long modulus = 1;    // p^f
  long order = 1;      // #(Z/p^f)^*
  // odd p (and p=2, f<=2): cyclic, dlog[u] = a with g^a = u, -1 for non-units
  // p=2, f>=3: u = (-1)^{sgn[u]} 5^{dlog[u]}
  long generator = 1;
  std::vector<long> dlog;
  std::vector<int> sgn;
  long half_order = 1;  // order of <5> for p=2, f>=3

  static const UnitGroupTable& get(long p, int f) {
    static std::map<std::pair<long, int>, UnitGroupTable> cache;
    auto key = std::make_pair(p, f);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build(p, f)).first;
    return it->second;
  }

  static UnitGroupTable build(long p, int f) {
    UnitGroupTable t;
    t.p = p;
    t.f = f;
    long mod = 1;
    for (int i = 0; i < f; ++i) {
      if (mod > 1000000 / p)
        throw std::domain_error("character modulus too large");
      mod *= p;
    }
    t.modulus = mod;
    if (p == 2) {
      if (f <= 1) {
        t.order = 1;
        return t;
      }
      t.order = mod / 2;
      t.half_order = (f >= 3) ? mod / 4 : 1;
      t.dlog.assign(mod, -1);
      t.sgn.assign(mod, 0);
      if (f == 2) {
        t.dlog[1] = 0;
        t.dlog[3] = 1;  // cyclic of order 2, generator 3
        t.generator = 3;
        return t;
      }
      // {+-1} x <5 mod 2^f>, <5> of order 2^{f-2}
      long x = 1;
      for (long b = 0; b < t.half_order; ++b) {
        t.dlog[x] = b;
        t.sgn[x] = 0;
        long nx = mod - x;
        t.dlog[nx] = b;
        t.sgn[nx] = 1;
        x = (x * 5) % mod;
      }
      return t;
    }
    t.order = (p - 1) * (mod / p);
    t.generator = find_primitive_root(p, mod, t.order);
    t.dlog.assign(mod, -1);
    long x = 1;
    for (long a = 0; a < t.order; ++a) {
      t.dlog[x] = a;
      x = (x * t.generator) % mod;
    }
    return t;
  }

 private:
  static long find_primitive_root(long p, long mod, long order) {
    // prime factors of order = (p-1) p^{f-1}
    std::vector<long> fac;
    if (order % p == 0) fac.push_back(p);
    long m = p - 1;
    for (long d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        fac.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) fac.push_back(m);
    for (long g = 2; g < mod; ++g) {
      if (g % p == 0) continue;
      bool ok = true;
      for (long ell : fac)
        if (pow_mod(g, order / ell, mod) == 1) {
          ok = false;
          break;
        }
      if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
  }
  static long pow_mod(long b, long e, long m) {
    long r = 1;
    b %= m;
    while (e > 0) {
      if (e & 1) r = (r * b) % m;
      b = (b * b) % m;
      e >>= 1;
    }
    return r;
  }
};

}  // namespace detail

class UnitaryCharacter {
 public:
  // finite places
  static UnitaryCharacter unramified(Place v, double tau = 0.0) {
    if (!v.is_finite()) throw std::invalid_argument("finite place expected");
    UnitaryCharacter c;
    c.place_ = v;
    c.tau_ = tau;
    return c;
  }
  // chi on (Z/p^f)^*: index against the cached primitive root (odd p or
  // p = 2, f = 2); for p = 2, f >= 3 index acts on -1 and index2 on 5
  static UnitaryCharacter ramified(Place v, int f, long index, long index2 = 0,
                                   double tau = 0.0) {
    if (!v.exact_model())
      throw std::invalid_argument(
          "ramified characters need the exact model (q = p, delta = 0)");
    if (f < 1) throw std::invalid_argument("conductor exponent must be >= 1");
    UnitaryCharacter c;
    c.place_ = v;
    c.f_ = f;
    c.tau_ = tau;
    const auto& t = detail::UnitGroupTable::get(v.p, f);
    if (v.p == 2 && f >= 3) {
      c.index_ = ((index % 2) + 2) % 2;
      c.index2_ = ((index2 % t.half_order) + t.half_order) % t.half_order;
    } else {
      c.index_ = ((index % t.order) + t.order) % t.order;
      c.index2_ = 0;
    }
    if (c.conductor_from_indices() != f)
      throw std::invalid_argument(
          "character index does not have the stated conductor");
    return c;
  }
  // archimedean
  static UnitaryCharacter real_char(int parity, double tau = 0.0) {
    if (parity != 0 && parity != 1)
      throw std::invalid_argument("parity must be 0 or 1");
    UnitaryCharacter c;
    c.place_ = Place::real();
    c.parity_ = parity;
    c.tau_ = tau;
    return c;
  }
  static UnitaryCharacter complex_char(long weight, double tau = 0.0) {
    UnitaryCharacter c;
    c.place_ = Place::complex_field();
    c.weight_ = weight;
    c.tau_ = tau;
    return c;
  }

  const Place& place() const { return place_; }
  int conductor_exponent() const { return f_; }
  bool is_ramified() const { return place_.is_finite() && f_ > 0; }
  double tau() const { return tau_; }
  int parity() const { return parity_; }
  long weight() const { return weight_; }
  long index() const { return index_; }
  long index2() const { return index2_; }

  UnitaryCharacter with_tau(double tau) const {
    UnitaryCharacter c = *this;
    c.tau_ = tau;
    return c;
  }

  UnitaryCharacter conjugate() const {
    UnitaryCharacter c = *this;
    c.tau_ = -tau_;
    c.weight_ = -weight_;
    if (is_ramified()) {
      const auto& t = detail::UnitGroupTable::get(place_.p, f_);
      if (place_.p == 2 && f_ >= 3) {
        c.index2_ = (t.half_order - index2_) % t.half_order;
      } else {
        c.index_ = (t.order - index_) % t.order;
      }
    }
    return c;
  }

  // order of the restriction to the units; 1 when unramified
  long unit_order() const {
    if (!is_ramified()) return 1;
    const auto& t = detail::UnitGroupTable::get(place_.p, f_);
    if (place_.p == 2 && f_ >= 3) {
      long o5 = t.half_order / std::gcd(index2_, t.half_order);
      return std::lcm<long>(index_ ? 2 : 1, o5);
    }
    return t.order / std::gcd(index_, t.order);
  }
  bool has_exact_values() const {
    return !place_.is_finite() || 4 % unit_order() == 0;
  }

  // trivial on U_j = 1 + p^j Z_p (j >= 1); U_0 = all units
  bool trivial_on_unit_layer(int j) const {
    if (!place_.is_finite())
      throw std::domain_error("unit layers are a finite-place notion");
    if (j >= f_) return true;
    if (f_ == 0) return true;
    const auto& t = detail::UnitGroupTable::get(place_.p, f_);
    if (place_.p == 2 && f_ >= 3) {
      if (j <= 1) return index_ == 0 && index2_ == 0;
      // U_j = <5^{2^{j-2}}>: trivial iff half_order | index2 * 2^{j-2}
      long step = 1;
      for (int i = 2; i < j; ++i) step *= 2;
      return (index2_ * step) % t.half_order == 0;
    }
    if (j == 0) return index_ == 0;
    // U_j is the subgroup of the cyclic unit group of order #units/#(Z/p^j)^*
    long pj = 1;
    for (int i = 0; i < j; ++i) pj *= place_.p;
    long units_mod_pj = (place_.p - 1) * (pj / place_.p);
    long layer = t.order / units_mod_pj;
    return index_ % layer == 0;
  }

  // value at a unit u (v_p(u) = 0), as a root of unity
  std::complex<double> unit_value(const Rational& u) const {
    auto [num, den] = unit_root_exponent(u);
    return std::exp(std::complex<double>(
        0.0, 2.0 * std::numbers::pi * static_cast<double>(num) /
                 static_cast<double>(den)));
  }
  // exact value when the character order divides 4
  CRational unit_value_exact(const Rational& u) const {
    auto [num, den] = unit_root_exponent(u);
    if ((4 * num) % den != 0)
      throw std::domain_error("character value is not a Gaussian rational");
    return i_power(4 * num / den);
  }

  // full value at x in Q_p^*: unit part through the residue character,
  // |x|^{i tau} on the uniformizer
  std::complex<double> value(const Rational& x) const {
    if (!place_.is_finite())
      throw std::domain_error("rational evaluation is finite-place only");
    if (x == 0) throw std::domain_error("character at 0");
    // the uniformizer is p with |p| = 1/q (unramified over Q_p when e > 1)
    long v = valuation(place_.p, x);
    std::complex<double> r = f_ ? unit_value(unit_part(place_.p, x))
                                : std::complex<double>(1.0);
    if (tau_ != 0.0) {
      const double lq = std::log(static_cast<double>(place_.q));
      r *= std::exp(std::complex<double>(0.0, -tau_ * v * lq));
    }
    return r;
  }

  std::complex<double> value_at_minus_one() const {
    switch (place_.kind) {
      case PlaceKind::real:
        return parity_ ? -1.0 : 1.0;
      case PlaceKind::complex_field:
        return (weight_ % 2 == 0) ? 1.0 : -1.0;  // e^{i N pi}
      default:
        return f_ ? unit_value(Rational(-1)) : 1.0;
    }
  }
  // exact at finite places (order | 4 always holds for the value at -1)
  CRational value_at_minus_one_exact() const {
    if (!place_.is_finite()) {
      bool minus = place_.kind == PlaceKind::real ? parity_ == 1
                                                  : (weight_ % 2 != 0);
      return minus ? CRational(Rational(-1)) : CRational(Rational(1));
    }
    if (!f_) return CRational(Rational(1));
    auto [num, den] = unit_root_exponent(Rational(-1));
    return i_power(4 * num / den);  // (-1)^2 = 1 forces den | 2 here
  }

  friend bool operator==(const UnitaryCharacter&,
                         const UnitaryCharacter&) = default;

 private:
  // chi(u) = exp(2 pi i num/den)
  std::pair<long, long> unit_root_exponent(const Rational& u) const {
    const auto& t = detail::UnitGroupTable::get(place_.p, f_);
    Rational r = reduce_mod_pk(place_.p, u, f_);
    long res = static_cast<long>(r.get_num().get_si());
    if (res < 0 || res >= t.modulus || t.dlog.empty() || t.dlog[res] < 0)
      throw std::domain_error("not a unit modulo the conductor");
    if (place_.p == 2 && f_ >= 3) {
      // u = (-1)^a 5^b: chi(u) = (-1)^{index a} e^{2 pi i index2 b / |<5>|}
      long num = index_ * t.sgn[res] * t.half_order + 2 * index2_ * t.dlog[res];
      long den = 2 * t.half_order;
      long g = std::gcd(num == 0 ? den : std::abs(num), den);
      return {num / g, den / g};
    }
    long num = (index_ * t.dlog[res]) % t.order;
    long den = t.order;
    long g = std::gcd(num == 0 ? den : num, den);
    return {num / g, den / g};
  }

  int conductor_from_indices() const {
    for (int j = 0; j <= f_; ++j)
      if (trivial_on_unit_layer(j)) return j;
    return f_;
  }

  Place place_ = Place::finite(2);
  int f_ = 0;
  long index_ = 0, index2_ = 0;
  int parity_ = 0;
  long weight_ = 0;
  double tau_ = 0.0;
};

// archimedean character value
inline std::complex<double> value(const UnitaryCharacter& chi, double x) {
  if (chi.place().kind != PlaceKind::real)
    throw std::domain_error("real argument needs the real place");
  if (x == 0.0) throw std::domain_error("character at 0");
  double s = (x < 0.0 && chi.parity()) ? -1.0 : 1.0;
  return s * std::exp(std::complex<double>(
                 0.0, chi.tau() * std::log(std::abs(x))));
}
inline std::complex<double> value(const UnitaryCharacter& chi,
                                  std::complex<double> z) {
  if (chi.place().kind != PlaceKind::complex_field)
    throw std::domain_error("complex argument needs the complex place");
  if (z == 0.0) throw std::domain_error("character at 0");
  const double th = std::arg(z), r2 = std::norm(z);  // |z|_C = z zbar
  return std::exp(std::complex<double>(
      0.0, chi.weight() * th + chi.tau() * std::log(r2)));
}

}  // namespace lfn
