#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "lfn/bruhat.hpp"
#include "lfn/localfield.hpp"
#include "lfn/rational.hpp"

using namespace lfn;
using std::complex;

namespace {
double adiff(complex<double> a, complex<double> b) { return std::abs(a - b); }
}  // namespace

TEST_CASE("valuation, unit part, p-adic absolute value") {
  REQUIRE(valuation(3, Rational(18)) == 2);
  REQUIRE(valuation(2, Rational(18)) == 1);
  REQUIRE(valuation(2, Rational(5, 12)) == -2);
  REQUIRE(valuation(7, Rational(-49, 3)) == 2);
  REQUIRE_THROWS_AS(valuation(5, Rational(0)), std::domain_error);

  REQUIRE(abs_p(3, Rational(18)) == Rational(1, 9));
  REQUIRE(abs_p(2, Rational(5, 12)) == Rational(4));
  REQUIRE(abs_p(5, Rational(0)) == Rational(0));

  REQUIRE(pow_int(3, 4) == Rational(81));
  REQUIRE(pow_int(3, -2) == Rational(1, 9));
  REQUIRE(pow_int(2, 0) == Rational(1));

  // x = p^v u with u a unit, exactly
  const Rational xs[] = {Rational(18), Rational(5, 12), Rational(-7, 50),
                         Rational(1)};
  for (long p : {2L, 3L, 5L})
    for (const auto& x : xs) {
      const long v = valuation(p, x);
      const Rational u = unit_part(p, x);
      REQUIRE(valuation(p, u) == 0);
      REQUIRE(x == pow_int(p, v) * u);
    }
}

TEST_CASE("reduction modulo p^k") {
  // canonical representative: in [0, p^k), difference in p^k Z_p
  const Rational xs[] = {Rational(7), Rational(1, 2), Rational(-5, 7),
                         Rational(22, 13)};
  for (long p : {2L, 3L, 5L})
    for (long k : {1L, 2L, 4L})
      for (const auto& x : xs) {
        if (valuation(p, x) < 0) continue;
        const Rational r = reduce_mod_pk(p, x, k);
        REQUIRE(r >= 0);
        REQUIRE(r < pow_int(p, k));
        if (x != r) REQUIRE(valuation(p, x - r) >= k);
        REQUIRE(reduce_mod_pk(p, r, k) == r);  // idempotent
      }
  REQUIRE(reduce_mod_pk(3, Rational(1, 2), 2) == Rational(5));  // 2*5 = 10 = 1
  REQUIRE(reduce_mod_pk(3, Rational(0), 2) == Rational(0));
  REQUIRE_THROWS_AS(reduce_mod_pk(3, Rational(1, 3), 2), std::domain_error);
  REQUIRE_THROWS_AS(reduce_mod_pk(3, Rational(1), 0), std::invalid_argument);
}

TEST_CASE("rational strings and Gaussian rationals") {
  REQUIRE(rational_from_string("22/7") == Rational(22, 7));
  REQUIRE(rational_from_string("-4/6") == Rational(-2, 3));
  REQUIRE(to_string(Rational(1, 2) - Rational(7, 6)) == "-2/3");
  REQUIRE_THROWS_AS(rational_from_string("x"), std::invalid_argument);

  const CRational a(Rational(1), Rational(2)), b(Rational(3), Rational(-1));
  REQUIRE(a * b == CRational(Rational(5), Rational(5)));
  REQUIRE((a * b) / b == a);
  REQUIRE(a.conj() == CRational(Rational(1), Rational(-2)));
  REQUIRE(i_power(1) * i_power(1) == i_power(2));
  REQUIRE(i_power(-1) == i_power(3));
  REQUIRE(i_power(2) == CRational(Rational(-1)));
  REQUIRE(adiff(to_complex(a), {1.0, 2.0}) == 0.0);
  REQUIRE_THROWS_AS(a / CRational(Rational(0)), std::domain_error);
}

TEST_CASE("places") {
  const Place q2 = Place::finite(2);
  REQUIRE(q2.exact_model());
  REQUIRE(q2.p == 2);
  REQUIRE(q2.e == 1);

  const Place q4 = Place::finite(4);
  REQUIRE(q4.p == 2);
  REQUIRE(q4.e == 2);
  REQUIRE_FALSE(q4.exact_model());

  const Place rq = Place::finite(9, 1);
  REQUIRE(rq.p == 3);
  REQUIRE_FALSE(rq.exact_model());  // delta != 0

  REQUIRE_THROWS_AS(Place::finite(12), std::invalid_argument);
  REQUIRE_THROWS_AS(Place::finite(1), std::invalid_argument);
  REQUIRE_THROWS_AS(Place::finite(7, -1), std::invalid_argument);

  REQUIRE(q2.mult_unit_mass_exact() == Rational(1, 2));
  REQUIRE(Place::finite(5).mult_unit_mass_exact() == Rational(4, 5));
  REQUIRE_THROWS_AS(q4.mult_unit_mass_exact(), std::domain_error);
  REQUIRE(q4.mult_unit_mass() == Catch::Approx(0.75));
  REQUIRE(rq.mult_unit_mass() == Catch::Approx((8.0 / 9.0) / 3.0));

  auto [Rf, gf] = haar_constants(Place::finite(3));
  REQUIRE(Rf == Catch::Approx((2.0 / 3.0) / std::log(3.0)));
  REQUIRE(gf == Catch::Approx(std::log(3.0) * 3.0 / 2.0));
  auto [Rr, gr] = haar_constants(Place::real());
  REQUIRE(Rr == 2.0);
  REQUIRE(gr == 0.5);
  auto [Rc, gc] = haar_constants(Place::complex_field());
  REQUIRE(Rc == Catch::Approx(2.0 * std::numbers::pi));
  REQUIRE(gc == Catch::Approx(1.0 / (2.0 * std::numbers::pi)));
}

TEST_CASE("ramified character values are the expected roots of unity") {
  // quartic character mod 5: the primitive root is 2, chi(2) = i
  auto quartic = UnitaryCharacter::ramified(Place::finite(5), 1, 1);
  REQUIRE(adiff(quartic.unit_value(Rational(2)), {0.0, 1.0}) < 1e-15);
  REQUIRE(adiff(quartic.unit_value(Rational(4)), {-1.0, 0.0}) < 1e-15);
  REQUIRE(adiff(quartic.unit_value(Rational(3)), {0.0, -1.0}) < 1e-15);
  REQUIRE(quartic.unit_value_exact(Rational(2)) ==
          CRational(Rational(0), Rational(1)));
  REQUIRE(quartic.unit_order() == 4);
  REQUIRE(quartic.has_exact_values());

  // quadratic character mod 5 is the Legendre symbol
  auto quad5 = UnitaryCharacter::ramified(Place::finite(5), 1, 2);
  for (long u : {1L, 4L}) REQUIRE(adiff(quad5.unit_value(Rational(u)), 1.0) < 1e-15);
  for (long u : {2L, 3L}) REQUIRE(adiff(quad5.unit_value(Rational(u)), -1.0) < 1e-15);
  REQUIRE(adiff(quad5.value_at_minus_one(), 1.0) < 1e-15);

  auto quad3 = UnitaryCharacter::ramified(Place::finite(3), 1, 1);
  REQUIRE(adiff(quad3.unit_value(Rational(2)), -1.0) < 1e-15);
  REQUIRE(quad3.value_at_minus_one_exact() == CRational(Rational(-1)));

  // mod 8, trivial on {1, 7}: conductor really is 3
  auto chi8 = UnitaryCharacter::ramified(Place::finite(2), 3, 0, 1);
  REQUIRE(adiff(chi8.unit_value(Rational(7)), 1.0) < 1e-15);
  REQUIRE(adiff(chi8.unit_value(Rational(3)), -1.0) < 1e-15);
  REQUIRE(adiff(chi8.unit_value(Rational(5)), -1.0) < 1e-15);

  auto chi4 = UnitaryCharacter::ramified(Place::finite(2), 2, 1);
  REQUIRE(adiff(chi4.unit_value(Rational(3)), -1.0) < 1e-15);
  REQUIRE(chi4.value_at_minus_one_exact() == CRational(Rational(-1)));
}

TEST_CASE("characters are multiplicative on units") {
  auto chars = {UnitaryCharacter::ramified(Place::finite(5), 1, 1),
                UnitaryCharacter::ramified(Place::finite(7), 1, 2),
                UnitaryCharacter::ramified(Place::finite(3), 2, 1),
                UnitaryCharacter::ramified(Place::finite(2), 3, 1, 1)};
  for (const auto& chi : chars) {
    const long p = chi.place().p;
    long mod = 1;
    for (int i = 0; i < chi.conductor_exponent(); ++i) mod *= p;
    for (long u = 1; u < mod; ++u) {
      if (u % p == 0) continue;
      for (long v = 1; v < mod; ++v) {
        if (v % p == 0) continue;
        REQUIRE(adiff(chi.unit_value(Rational(u)) * chi.unit_value(Rational(v)),
                      chi.unit_value(Rational(u * v))) < 1e-14);
      }
    }
  }
}

TEST_CASE("stated conductor is validated") {
  // index 0 is the trivial character: conductor 0, not 1
  REQUIRE_THROWS_AS(UnitaryCharacter::ramified(Place::finite(5), 1, 0),
                    std::invalid_argument);
  // mod 9 with index 3 has order 2 and kernel containing 1 + 3 Z_3
  REQUIRE_THROWS_AS(UnitaryCharacter::ramified(Place::finite(3), 2, 3),
                    std::invalid_argument);
  // mod 8 acting on -1 alone is trivial on 1 + 4 Z_2, conductor 2
  REQUIRE_THROWS_AS(UnitaryCharacter::ramified(Place::finite(2), 3, 1, 0),
                    std::invalid_argument);
  // but index 1 mod 9 is genuinely conductor 2
  REQUIRE_NOTHROW(UnitaryCharacter::ramified(Place::finite(3), 2, 1));
  // non-exact places carry no ramified data
  REQUIRE_THROWS_AS(UnitaryCharacter::ramified(Place::finite(4), 1, 1),
                    std::invalid_argument);
}

TEST_CASE("unit layers and conjugation") {
  auto quartic = UnitaryCharacter::ramified(Place::finite(5), 1, 1);
  REQUIRE_FALSE(quartic.trivial_on_unit_layer(0));
  REQUIRE(quartic.trivial_on_unit_layer(1));

  auto chi9 = UnitaryCharacter::ramified(Place::finite(3), 2, 1);
  REQUIRE_FALSE(chi9.trivial_on_unit_layer(1));
  REQUIRE(chi9.trivial_on_unit_layer(2));

  auto chi8 = UnitaryCharacter::ramified(Place::finite(2), 3, 0, 1);
  REQUIRE_FALSE(chi8.trivial_on_unit_layer(2));
  REQUIRE(chi8.trivial_on_unit_layer(3));

  // conjugate character inverts every unit value and flips tau
  auto chars = {quartic, chi9, chi8};
  for (const auto& chi : chars) {
    auto bar = chi.conjugate();
    const long p = chi.place().p;
    long mod = 1;
    for (int i = 0; i < chi.conductor_exponent(); ++i) mod *= p;
    for (long u = 1; u < mod; ++u) {
      if (u % p == 0) continue;
      REQUIRE(adiff(bar.unit_value(Rational(u)),
                    std::conj(chi.unit_value(Rational(u)))) < 1e-14);
    }
  }
  auto tw = UnitaryCharacter::unramified(Place::finite(2), 0.7);
  REQUIRE(tw.conjugate().tau() == -0.7);
  REQUIRE(UnitaryCharacter::complex_char(3, 0.2).conjugate().weight() == -3);

  // order-5 values are not Gaussian rationals
  auto chi11 = UnitaryCharacter::ramified(Place::finite(11), 1, 2);
  REQUIRE(chi11.unit_order() == 5);
  REQUIRE_FALSE(chi11.has_exact_values());
  REQUIRE_THROWS_AS(chi11.unit_value_exact(Rational(2)), std::domain_error);
}

TEST_CASE("character values on the full multiplicative group") {
  // |x|^{i tau} on the unramified part
  auto tw = UnitaryCharacter::unramified(Place::finite(2), 0.7);
  REQUIRE(adiff(tw.value(Rational(8)),
                std::exp(complex<double>(0.0, -0.7 * 3.0 * std::log(2.0)))) <
          1e-15);
  REQUIRE(adiff(tw.value(Rational(5)), 1.0) < 1e-15);
  REQUIRE_THROWS_AS(tw.value(Rational(0)), std::domain_error);

  // residue cardinality 4: |2| = 1/4
  auto t4 = UnitaryCharacter::unramified(Place::finite(4), 1.1);
  REQUIRE(adiff(t4.value(Rational(2)),
                std::exp(complex<double>(0.0, -1.1 * std::log(4.0)))) < 1e-15);

  auto quartic = UnitaryCharacter::ramified(Place::finite(5), 1, 1, 0, 0.3);
  const complex<double> expect =
      quartic.unit_value(Rational(2)) *
      std::exp(complex<double>(0.0, -0.3 * 2.0 * std::log(5.0)));
  REQUIRE(adiff(quartic.value(Rational(50)), expect) < 1e-15);

  // archimedean: sign^parity times |x|^{i tau}
  auto rody = UnitaryCharacter::real_char(1, 0.4);
  REQUIRE(adiff(value(rody, -2.0),
                -std::exp(complex<double>(0.0, 0.4 * std::log(2.0)))) < 1e-15);
  REQUIRE(adiff(value(UnitaryCharacter::real_char(0), -7.0), 1.0) < 1e-15);

  auto cw = UnitaryCharacter::complex_char(3);
  REQUIRE(adiff(value(cw, {0.0, 1.0}),
                std::exp(complex<double>(0.0, 3.0 * std::numbers::pi / 2.0))) <
          1e-15);
  REQUIRE(adiff(value(UnitaryCharacter::complex_char(0, 0.5), {2.0, 0.0}),
                std::exp(complex<double>(0.0, 0.5 * std::log(4.0)))) < 1e-15);
  REQUIRE_THROWS_AS(value(cw, 1.0), std::domain_error);
  REQUIRE_THROWS_AS(UnitaryCharacter::real_char(2), std::invalid_argument);
}

TEST_CASE("Bruhat canonical form") {
  // 1_{Z_p} split along cosets reassembles
  for (long p : {2L, 3L, 5L}) {
    BruhatFunction f(p);
    for (long t = 0; t < p; ++t)
      f.add_term({Rational(t), 1}, CRational(Rational(1)));
    f.canonicalize();
    REQUIRE(f == unit_ball_indicator(p));
    REQUIRE(f.check_canonical_invariants());
    REQUIRE(f.terms().size() == 1);
  }

  // centers reduce mod the radius
  auto g = BruhatFunction::indicator(2, {Rational(5), 0});
  REQUIRE(g == unit_ball_indicator(2));

  // units = Z_p minus p Z_p, as p - 1 unit cosets
  const long p = 3;
  auto units =
      unit_ball_indicator(p) - BruhatFunction::indicator(p, {Rational(0), 1});
  REQUIRE(units.check_canonical_invariants());
  REQUIRE(units.terms().size() == 2);
  REQUIRE(units.eval(Rational(1)) == CRational(Rational(1)));
  REQUIRE(units.eval(Rational(5)) == CRational(Rational(1)));
  REQUIRE(units.eval(Rational(3)) == CRational(Rational(0)));
  REQUIRE(units.eval(Rational(1, 3)) == CRational(Rational(0)));
  REQUIRE(units.value_at_zero() == CRational(Rational(0)));
  REQUIRE(units.supported_away_from_zero());
  REQUIRE(units.integral() == CRational(Rational(2, 3)));

  REQUIRE_THROWS_AS(BruhatFunction(1), std::invalid_argument);
}

TEST_CASE("canonicalization preserves pointwise values") {
  const long p = 3;
  struct Piece {
    Ball b;
    CRational c;
  };
  const Piece pieces[] = {
      {{Rational(1, 3), 2}, CRational(Rational(2))},
      {{Rational(0), 0}, CRational(Rational(-1))},
      {{Rational(2, 9), -1}, CRational(Rational(1), Rational(1))},
      {{Rational(4), 1}, CRational(Rational(1, 2))},
  };
  BruhatFunction f(p);
  for (const auto& pc : pieces) f.add_term(pc.b, pc.c);
  f.canonicalize();
  REQUIRE(f.check_canonical_invariants());

  const Rational samples[] = {Rational(0),     Rational(1),      Rational(1, 3),
                              Rational(4, 3),  Rational(2, 9),   Rational(7),
                              Rational(4),     Rational(-2, 9),  Rational(9),
                              Rational(1, 27), Rational(100, 3), Rational(5, 9)};
  for (const auto& x : samples) {
    CRational want(Rational(0));
    for (const auto& pc : pieces)
      if (f.ball_contains_point(f.canonical_ball(pc.b), x)) want += pc.c;
    INFO("x = " << to_string(x));
    REQUIRE(f.eval(x) == want);
  }

  // canonicalization is idempotent and addition is pointwise
  auto g = f + f;
  for (const auto& x : samples) REQUIRE(g.eval(x) == f.eval(x) + f.eval(x));
  auto z = f - f;
  REQUIRE(z.empty());
}

TEST_CASE("dilation, reflection, support exponents") {
  const long p = 3;
  auto units =
      unit_ball_indicator(p) - BruhatFunction::indicator(p, {Rational(0), 1});
  REQUIRE(units.support_radius_exp() == 0);
  REQUIRE(units.support_floor_exp() == 0);
  REQUIRE(units.granularity_exp() == 1);

  // phi(x/t): values move, integral scales by |t|
  const Rational t(9);
  auto d = units.dilated(t);
  REQUIRE(d.eval(Rational(9)) == CRational(Rational(1)));
  REQUIRE(d.eval(Rational(3)) == CRational(Rational(0)));
  REQUIRE(d.integral() == Rational(1, 9) * units.integral());
  REQUIRE(d.support_floor_exp() == 2);
  auto half = units.dilated(Rational(1, 3));
  REQUIRE(half.eval(Rational(1, 3)) == CRational(Rational(1)));
  REQUIRE(half.integral() == Rational(3) * units.integral());
  REQUIRE_THROWS_AS(units.dilated(Rational(0)), std::invalid_argument);

  // phi(a - x)
  auto r = units.reflected_at(Rational(1, 3));
  const Rational xs[] = {Rational(0), Rational(1, 3), Rational(4, 3),
                         Rational(1), Rational(2)};
  for (const auto& x : xs)
    REQUIRE(r.eval(x) == units.eval(Rational(1, 3) - x));

  REQUIRE(unit_ball_indicator(p).support_radius_exp() == 0);
  REQUIRE_FALSE(unit_ball_indicator(p).supported_away_from_zero());
  REQUIRE_THROWS_AS(unit_ball_indicator(p).support_floor_exp(),
                    std::domain_error);
  REQUIRE_THROWS_AS(BruhatFunction(p).support_radius_exp(), std::domain_error);
}

TEST_CASE("additive Fourier transform on balls") {
  // 1_{Z_p} is self-dual
  for (long p : {2L, 3L, 5L}) {
    auto hat = fourier_transform(unit_ball_indicator(p));
    REQUIRE(hat.terms().size() == 1);
    REQUIRE(hat.terms()[0].ball == Ball{Rational(0), 0});
    REQUIRE(adiff(hat.terms()[0].coeff, 1.0) < 1e-15);
  }

  // B(0, p^-k) maps to p^-k on B(0, p^k)
  auto hat2 = fourier_transform(
      BruhatFunction::indicator(3, {Rational(0), 2}));
  REQUIRE(hat2.terms().size() == 1);
  REQUIRE(hat2.terms()[0].ball == Ball{Rational(0), -2});
  REQUIRE(adiff(hat2.terms()[0].coeff, 1.0 / 9.0) < 1e-15);

  // 1_{B(1, 1/p)}: transform is p^-1 lambda(-y) on |y| <= p
  const long p = 5;
  auto phi = BruhatFunction::indicator(p, {Rational(1), 1});
  auto hat = fourier_transform(phi);
  const Rational ys[] = {Rational(0), Rational(1, 5), Rational(3, 5),
                         Rational(2), Rational(7, 5), Rational(25)};
  for (const auto& y : ys) {
    const complex<double> want =
        0.2 * std::exp(complex<double>(
                  0.0, -2.0 * std::numbers::pi * to_double(y)));
    REQUIRE(adiff(hat.eval(y), want) < 1e-14);
  }
  // outside |y| <= 5
  REQUIRE(hat.eval(Rational(1, 25)) == complex<double>(0.0));

  // ghat(0) = integral, integral of ghat = phi(0)
  REQUIRE(adiff(hat.value_at_zero(), to_complex(phi.integral())) < 1e-15);
  REQUIRE(adiff(hat.integral(), to_complex(phi.value_at_zero())) < 1e-15);

  // double transform is reflection: F F phi (x) = phi(-x)
  auto hh = fourier_transform(hat);
  const Rational xs[] = {Rational(1), Rational(-1), Rational(4),
                         Rational(1, 5), Rational(6)};
  for (const auto& x : xs) {
    INFO("x = " << to_string(x));
    REQUIRE(adiff(hh.eval(x), to_complex(phi.eval(-x))) < 1e-14);
  }
}

TEST_CASE("shell Mellin transform") {
  const long p = 3;
  auto chi0 = UnitaryCharacter::unramified(Place::finite(p));

  // units: single Laurent coefficient (1 - 1/p) at X^0
  auto units =
      unit_ball_indicator(p) - BruhatFunction::indicator(p, {Rational(0), 1});
  auto P = shell_mellin(units, chi0);
  REQUIRE(P.coeff.size() == 1);
  REQUIRE(adiff(P.coeff.at(0), 2.0 / 3.0) < 1e-15);

  // shell |x| = p: (p - 1) X
  BruhatFunction shell(p);
  for (long u = 1; u < p; ++u)
    shell.add_term({Rational(u, p), 0}, CRational(Rational(1)));
  shell.canonicalize();
  auto Q = shell_mellin(shell, chi0);
  REQUIRE(Q.coeff.size() == 1);
  REQUIRE(adiff(Q.coeff.at(1), 2.0) < 1e-15);
  // eval: (p-1) p^{-s}
  const complex<double> s{0.4, 1.3};
  REQUIRE(adiff(Q.eval(s), 2.0 * std::exp(-s * std::log(3.0))) < 1e-14);

  // ramified character: unit average kills coarse cosets
  auto quad3 = UnitaryCharacter::ramified(Place::finite(3), 1, 1);
  auto R = shell_mellin(units, quad3);
  double total = 0.0;
  for (const auto& [n, c] : R.coeff) total += std::abs(c);
  REQUIRE(total < 1e-15);

  // fine cosets see the character value
  auto fine = BruhatFunction::indicator(p, {Rational(2), 2});
  auto Rf = shell_mellin(fine, quad3);
  REQUIRE(adiff(Rf.coeff.at(0), std::conj(quad3.unit_value(Rational(2))) / 9.0) <
          1e-15);

  REQUIRE_THROWS_AS(shell_mellin(unit_ball_indicator(p), chi0),
                    std::domain_error);
  REQUIRE_THROWS_AS(
      shell_mellin(units, UnitaryCharacter::unramified(Place::finite(5))),
      std::invalid_argument);
}
