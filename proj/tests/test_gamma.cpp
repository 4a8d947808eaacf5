#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "lfn/gamma.hpp"
#include "lfn/quadrature.hpp"

using namespace lfn;
using std::complex;

namespace {

double adiff(complex<double> a, complex<double> b) { return std::abs(a - b); }

std::vector<UnitaryCharacter> archetypes() {
  return {
      UnitaryCharacter::unramified(Place::finite(2)),
      UnitaryCharacter::unramified(Place::finite(3), 0.6),
      UnitaryCharacter::unramified(Place::finite(4, 1)),
      UnitaryCharacter::ramified(Place::finite(3), 1, 1),
      UnitaryCharacter::ramified(Place::finite(5), 1, 1),
      UnitaryCharacter::ramified(Place::finite(5), 1, 2, 0, -0.4),
      UnitaryCharacter::ramified(Place::finite(2), 3, 0, 1),
      UnitaryCharacter::real_char(0),
      UnitaryCharacter::real_char(1, 0.9),
      UnitaryCharacter::complex_char(0),
      UnitaryCharacter::complex_char(1),
      UnitaryCharacter::complex_char(-3, 0.25),
  };
}

// int_0^infty x^{w-1} e^{-pi x^2} dx with the endpoint singularity absorbed
complex<double> half_line_power_gaussian(complex<double> w) {
  return integrate_tanh_sinh(
      [&](double x) {
        return std::exp((w - 1.0) * std::log(x) - std::numbers::pi * x * x);
      },
      0.0, 8.0, {1e-14, 1e-14, 48});
}

}  // namespace

TEST_CASE("real even factor reproduces the zeta functional equation") {
  // zeta values computed with mpmath at 30 significant digits
  const auto chi = UnitaryCharacter::real_char(0);
  {
    const complex<double> s{0.3, 2.1};
    const complex<double> zs{0.40034216245814577176, -0.25700247761958196146};
    const complex<double> z1ms{0.51016067059092812053, 0.30382476285447044073};
    REQUIRE(adiff(gamma_factor(chi, s) * zs, z1ms) < 1e-13);
  }
  {
    const complex<double> s{0.3, 0.4};
    const complex<double> zs{-0.5522966635024823608, -0.58376133334443895228};
    const complex<double> z1ms{-0.64433510230795965786, 1.5697224213725827341};
    REQUIRE(adiff(gamma_factor(chi, s) * zs, z1ms) < 1e-13);
  }
}

TEST_CASE("archimedean factors against reference values") {
  struct Row {
    UnitaryCharacter chi;
    complex<double> s, want;
  };
  const auto even = UnitaryCharacter::real_char(0);
  const auto odd = UnitaryCharacter::real_char(1);
  const auto c3 = UnitaryCharacter::complex_char(3);
  const auto c0 = UnitaryCharacter::complex_char(0);
  const Row rows[] = {
      {even, {0.3, 2.1}, {0.55740903332048364463, 1.1167453927916257659}},
      {odd, {0.3, 2.1}, {-0.55897528989304088438, -1.1137252409008196359}},
      {c3, {0.3, 2.1}, {1.3370628555341442184, -0.50262391933149338906}},
      {c0, {0.3, 2.1}, {-1.245033589587565469, -0.93216965562241682331}},
      {even, {0.82, -5.5}, {0.70995902650166584454, 0.64327618411477230323}},
      {odd, {0.82, -5.5}, {0.70995904246341170438, 0.64327624198044422077}},
      {c3, {0.82, -5.5}, {0.89578425493004618133, 0.28245356790949421294}},
      {c0, {0.82, -5.5}, {0.91339951824172728455, -0.090237544370507560036}},
  };
  for (const auto& r : rows) {
    INFO("s = " << r.s);
    REQUIRE(adiff(gamma_factor(r.chi, r.s), r.want) < 1e-13);
  }
}

TEST_CASE("real factors against Tate integrals for a Gaussian") {
  // pairing the defining transform identity with phi = e^{-pi x^2} (even)
  // or phi = x e^{-pi x^2} (odd, F phi = i y e^{-pi y^2}) gives the factor
  // as a ratio of two half-line integrals; this never touches log_gamma
  const complex<double> pts[] = {{0.5, 0.0}, {0.3, 1.1}, {0.8, -0.7}};
  const auto even = UnitaryCharacter::real_char(0);
  const auto odd = UnitaryCharacter::real_char(1);
  for (auto s : pts) {
    INFO("s = " << s);
    const complex<double> want_even =
        half_line_power_gaussian(s) / half_line_power_gaussian(1.0 - s);
    REQUIRE(adiff(gamma_factor(even, s), want_even) < 1e-11);
    const complex<double> want_odd = complex<double>(0.0, 1.0) *
                                     half_line_power_gaussian(s + 1.0) /
                                     half_line_power_gaussian(2.0 - s);
    REQUIRE(adiff(gamma_factor(odd, s), want_odd) < 1e-11);
  }
}

TEST_CASE("complex factor against Tate integrals for the self-dual Gaussian") {
  // phi(z) = e^{-2 pi |z|^2} with the doubled Lebesgue measure:
  // z(s) = (2 pi)^{1-s} Gamma(s) comes out of the radial integral
  auto zint = [](complex<double> s) {
    return 4.0 * std::numbers::pi *
           integrate_tanh_sinh(
               [&](double r) {
                 return std::exp((2.0 * s - 1.0) * std::log(r) -
                                 2.0 * std::numbers::pi * r * r);
               },
               0.0, 6.0, {1e-14, 1e-14, 48});
  };
  const auto c0 = UnitaryCharacter::complex_char(0);
  for (auto s : {complex<double>{0.5, 0.0}, {0.35, 0.8}, {0.75, -1.2}}) {
    INFO("s = " << s);
    REQUIRE(adiff(gamma_factor(c0, s), zint(s) / zint(1.0 - s)) < 1e-11);
  }
}

TEST_CASE("unramified factor against p-adic shell sums") {
  // z(s) = int_{Z_p} |x|^{s-1} dx as a geometric shell sum, summed directly
  for (long p : {2L, 5L}) {
    auto zshell = [&](complex<double> s) {
      complex<double> acc = 0.0;
      const double lp = std::log(static_cast<double>(p));
      for (int v = 0; v < 400; ++v)
        acc += (1.0 - 1.0 / p) * std::exp(-s * (v * lp));
      return acc;
    };
    const auto chi = UnitaryCharacter::unramified(Place::finite(p));
    for (auto s : {complex<double>{0.5, 0.3}, {0.2, -1.0}, {0.9, 0.0}}) {
      INFO("p = " << p << ", s = " << s);
      REQUIRE(adiff(gamma_factor(chi, s), zshell(s) / zshell(1.0 - s)) < 1e-12);
    }
  }
}

TEST_CASE("different exponent shifts the unramified factor") {
  const auto plain = UnitaryCharacter::unramified(Place::finite(3));
  const auto twisted = UnitaryCharacter::unramified(Place::finite(3, 2));
  const complex<double> s{0.4, 0.9};
  const complex<double> ratio =
      gamma_factor(twisted, s) / gamma_factor(plain, s);
  REQUIRE(adiff(ratio, std::exp(2.0 * (s - 0.5) * std::log(3.0))) < 1e-13);
}

TEST_CASE("reflection identity across all archetypes") {
  double worst = 0.0;
  for (const auto& chi : archetypes()) {
    const auto bar = chi.conjugate();
    for (double sig : {0.15, 0.5, 0.85})
      for (double t : {-2.3, 0.0, 1.7}) {
        const complex<double> s{sig, t};
        const complex<double> lhs =
            gamma_factor(chi, s) * gamma_factor(bar, 1.0 - s);
        worst = std::max(worst, adiff(lhs, chi.value_at_minus_one()));
      }
  }
  REQUIRE(worst < 1e-12);
}

TEST_CASE("unitarity on the critical line") {
  double worst = 0.0;
  for (const auto& chi : archetypes())
    for (double tau = -30.0; tau <= 30.0; tau += 1.5)
      worst = std::max(
          worst,
          std::abs(std::abs(gamma_factor(chi, {0.5, tau})) - 1.0));
  REQUIRE(worst < 1e-12);
}

TEST_CASE("conjugation identity") {
  // conjugating the defining transform relation sends y to -y, so the
  // parity of chi enters: conj Gamma(chi, s) = chi(-1) Gamma(chibar, sbar)
  for (const auto& chi : archetypes()) {
    const auto bar = chi.conjugate();
    for (auto s : {complex<double>{0.3, 1.4}, {0.62, -0.8}}) {
      INFO("s = " << s);
      REQUIRE(adiff(std::conj(gamma_factor(chi, s)),
                    chi.value_at_minus_one() *
                        gamma_factor(bar, std::conj(s))) < 1e-13);
    }
  }
}

TEST_CASE("finite factors are periodic in 2 pi i / log q") {
  for (const auto& chi : archetypes()) {
    if (!chi.place().is_finite()) continue;
    const double period =
        2.0 * std::numbers::pi / std::log(static_cast<double>(chi.place().q));
    const complex<double> s{0.37, 0.52};
    REQUIRE(adiff(gamma_factor(chi, s),
                  gamma_factor(chi, s + complex<double>(0.0, period))) <
            1e-12);
  }
}

TEST_CASE("Gauss sums and root numbers") {
  // |g(chi)| = p^{f/2} and |w(chi)| = 1 for primitive characters
  for (const auto& chi : archetypes()) {
    if (!chi.is_ramified()) continue;
    const double pf = std::pow(static_cast<double>(chi.place().p),
                               chi.conductor_exponent());
    REQUIRE(std::abs(std::abs(gauss_sum(chi)) - std::sqrt(pf)) < 1e-12);
    REQUIRE(std::abs(std::abs(root_number(chi)) - 1.0) < 1e-13);
  }

  // closed forms: quadratic mod 3 has g = i sqrt(3), w = -i; quadratic
  // mod 5 has g = sqrt(5), w = +1
  const auto quad3 = UnitaryCharacter::ramified(Place::finite(3), 1, 1);
  REQUIRE(adiff(gauss_sum(quad3), {0.0, std::sqrt(3.0)}) < 1e-14);
  REQUIRE(adiff(root_number(quad3), {0.0, -1.0}) < 1e-14);

  const auto quad5 = UnitaryCharacter::ramified(Place::finite(5), 1, 2);
  REQUIRE(adiff(gauss_sum(quad5), {std::sqrt(5.0), 0.0}) < 1e-14);
  REQUIRE(adiff(root_number(quad5), {1.0, 0.0}) < 1e-14);

  // quartic mod 5 (chi(2) = i): reference values from 30-digit arithmetic
  const auto quartic = UnitaryCharacter::ramified(Place::finite(5), 1, 1);
  REQUIRE(adiff(gauss_sum(quartic),
                {-1.1755705045849462583, 1.9021130325903071442}) < 1e-14);
  REQUIRE(adiff(root_number(quartic),
                {0.52573111211913360603, -0.85065080835203993218}) < 1e-14);

  REQUIRE_THROWS_AS(gauss_sum(UnitaryCharacter::unramified(Place::finite(3))),
                    std::domain_error);
  REQUIRE_THROWS_AS(root_number(UnitaryCharacter::real_char(1)),
                    std::domain_error);
}

TEST_CASE("ramified factor is the root number times a modulus shift") {
  const auto chi8 = UnitaryCharacter::ramified(Place::finite(2), 3, 0, 1);
  const complex<double> s{0.7, -1.3};
  const complex<double> got = gamma_factor(chi8, s);
  REQUIRE(adiff(got / root_number(chi8),
                std::exp(3.0 * (s - 0.5) * std::log(2.0))) < 1e-13);
  // |Gamma| = q^{(f+delta)(sigma - 1/2)}
  REQUIRE(std::abs(std::abs(got) - std::pow(2.0, 3.0 * (0.7 - 0.5))) < 1e-13);
}

TEST_CASE("tau twist is the vertical shift") {
  const auto base = UnitaryCharacter::unramified(Place::finite(3));
  const auto tw = UnitaryCharacter::unramified(Place::finite(3), 0.8);
  const complex<double> s{0.45, 0.2};
  REQUIRE(adiff(gamma_factor(tw, s),
                gamma_factor(base, s + complex<double>(0.0, 0.8))) < 1e-14);

  const auto rbase = UnitaryCharacter::real_char(1);
  const auto rtw = UnitaryCharacter::real_char(1, -0.6);
  REQUIRE(adiff(gamma_factor(rtw, s),
                gamma_factor(rbase, s + complex<double>(0.0, -0.6))) < 1e-14);
}

TEST_CASE("arguments outside the strip are rejected") {
  const auto chi = UnitaryCharacter::real_char(0);
  for (auto s : {complex<double>{0.0, 0.0}, {1.0, 2.0}, {-0.2, 0.0}, {1.3, -1.0}})
    REQUIRE_THROWS_AS(gamma_factor(chi, s), std::domain_error);
  REQUIRE_NOTHROW(gamma_factor(chi, {0.001, 0.0}));
  REQUIRE_NOTHROW(gamma_factor(chi, {0.999, 10.0}));
}
