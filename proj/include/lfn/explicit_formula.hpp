#pragma once

// Desk-scale verification of the explicit formula for zeta: with
// ghat(s) = int g(u) u^s du/u,
//
//   ghat(0) + ghat(1) - sum_rho 2 Re ghat(1/2 + i gamma_n)
//     = W_real(g) + sum_p W_p(g)
//
// The zero side is truncated at the table and carries an estimate of the
// discarded tail from the counting density and the measured decay of ghat.
// The prime side is a finite sum for compactly supported g, so its only
// error is the archimedean quadrature.
//
// poisson_check tests the transform conventions on a subgroup u^Z alone:
//   log u * sum_k g(u^k) = sum_j ghat(2 pi i j / log u).

#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfn/localfield.hpp"
#include "lfn/testfunction.hpp"
#include "lfn/weil.hpp"

namespace lfn {

inline std::vector<double> load_zero_ordinates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open zero table: " + path);
  std::vector<double> zeros;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    double t = 0.0;
    try {
      size_t used = 0;
      t = std::stod(line.substr(pos), &used);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": not a number");
    }
    if (!(t > 0.0) || (!zeros.empty() && t <= zeros.back()))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": ordinates must be positive and increasing");
    zeros.push_back(t);
  }
  if (zeros.empty()) throw std::runtime_error(path + ": no ordinates");
  return zeros;
}

struct ZeroSide {
  std::complex<double> value;
  size_t zeros_used = 0;
  double truncation_bound = 0.0;  // estimate for the discarded zeros
};

inline ZeroSide zero_side(const MultiplicativeTestFunction& g,
                          const std::vector<double>& zeros) {
  ZeroSide out;
  out.value = mellin_hat(g, {0.0, 0.0}) + mellin_hat(g, {1.0, 0.0});
  for (double t : zeros)
    out.value -= 2.0 * mellin_hat(g, {0.5, t}).real();
  out.zeros_used = zeros.size();
  // counting density ~ (1/2pi) log(t/2pi) per unit height; doubled here
  const double T0 = zeros.back();
  double bound = 0.0;
  for (double t = T0; t < T0 + 600.0; t += 2.0) {
    double env = 0.0;
    for (int j = 0; j < 4; ++j)
      env = std::max(env, std::abs(mellin_hat(g, {0.5, t + 0.5 * j})));
    const double piece =
        2.0 * env * (std::log((t + 2.0) / (2.0 * std::numbers::pi)) /
                     std::numbers::pi) * 2.0;
    bound += piece;
    if (piece < 1e-19 * (1.0 + bound)) break;
  }
  out.truncation_bound = bound;
  return out;
}

struct PrimeSide {
  std::complex<double> value;
  double tolerance = 0.0;
  std::map<std::string, std::complex<double>> breakdown;
};

inline PrimeSide prime_side(const MultiplicativeTestFunction& g) {
  if (!g.compact_support())
    throw std::invalid_argument("the prime side needs compact support");
  PrimeSide out;
  const UnitaryCharacter arch = UnitaryCharacter::real_char(0);
  WeilResult wr = weil_spectral(arch, g, 1e-11);
  out.value = wr.value;
  out.tolerance = wr.tolerance;
  out.breakdown["real"] = wr.value;

  const double hi = g.support_hi(), lo = g.support_lo();
  const long pmax = static_cast<long>(std::max(hi, 1.0 / lo)) + 1;
  std::vector<bool> sieve(static_cast<size_t>(pmax) + 1, true);
  for (long p = 2; p <= pmax; ++p) {
    if (!sieve[static_cast<size_t>(p)]) continue;
    for (long m = 2 * p; m <= pmax; m += p) sieve[static_cast<size_t>(m)] = false;
    const UnitaryCharacter triv =
        UnitaryCharacter::unramified(Place::finite(p));
    WeilResult wp = weil_finite_closed(triv, g);
    if (wp.value != std::complex<double>(0.0)) {
      out.value += wp.value;
      out.breakdown["p=" + std::to_string(p)] = wp.value;
    }
    out.tolerance += wp.tolerance;
  }
  return out;
}

struct ExplicitReport {
  ZeroSide zside;
  PrimeSide wside;
  double residual = 0.0;  // |Z - W|
};

inline ExplicitReport explicit_check(const MultiplicativeTestFunction& g,
                                     const std::vector<double>& zeros) {
  ExplicitReport r;
  r.zside = zero_side(g, zeros);
  r.wside = prime_side(g);
  r.residual = std::abs(r.zside.value - r.wside.value);
  return r;
}

struct PoissonCheck {
  std::complex<double> lhs, rhs;
  double abs_error() const { return std::abs(lhs - rhs); }
};

inline PoissonCheck poisson_check(const MultiplicativeTestFunction& g,
                                  double u) {
  if (!(u > 1.0)) throw std::invalid_argument("need u > 1");
  const double lu = std::log(u);
  PoissonCheck out;
  std::complex<double> lhs = 0.0;
  const double hi = detail::effective_hi(g), lo = detail::effective_lo(g);
  const long kmin = static_cast<long>(std::floor(std::log(lo) / lu)) - 1;
  const long kmax = static_cast<long>(std::ceil(std::log(hi) / lu)) + 1;
  for (long k = kmin; k <= kmax; ++k) lhs += g(std::pow(u, k));
  out.lhs = lu * lhs;
  const double dt = 2.0 * std::numbers::pi / lu;
  std::complex<double> rhs = mellin_hat(g, {0.0, 0.0});
  if (g.family() == TestFamily::log_gaussian) {
    for (long j = 1; j <= 100000; ++j) {
      const std::complex<double> term = mellin_hat(g, {0.0, j * dt});
      rhs += 2.0 * term.real();
      if (std::abs(term) < 1e-17 * (1.0 + std::abs(rhs)) && j >= 4) break;
    }
    out.rhs = rhs;
    return out;
  }
  // bump: the frequencies j dt share one node grid, so each term costs a
  // single weighted sum; the phases advance by multiplication and are
  // recomputed every 32 steps to stop rounding drift.  The grid is rebuilt
  // at the mellin_hat panel density whenever the frequency cap doubles,
  // which keeps every term at least as resolved as a per-point quadrature.
  // Computed terms bottom out near eps times the mass of g, so the break
  // level has a floor there; three consecutive small terms are required
  // because |ghat| dips through zeros well before its envelope decays.
  const double c = std::log(g.center()), L = g.width();
  const double floor_level = 2e-14 * std::abs(rhs);
  std::vector<double> node, gw;
  std::vector<std::complex<double>> step1, phase;
  double tau_cap = std::max(64.0, 8.0 * dt);
  long j = 1;
  int small_run = 0;
  auto resync = [&](long jj) {
    for (std::size_t i = 0; i < node.size(); ++i)
      phase[i] = std::exp(std::complex<double>(0.0, jj * dt * node[i]));
  };
  for (bool done = false; !done && j <= 100000; tau_cap *= 2.0) {
    const int panels = 32 + static_cast<int>(L * tau_cap / 3.0);
    const double h = L / panels;
    node.clear();
    gw.clear();
    for (int q = 0; q < panels; ++q) {
      const double mid = c - L + (2 * q + 1) * h;
      for (const auto& n : detail::kGL15) {
        const double a = mid + h * static_cast<double>(n.x);
        node.push_back(a);
        gw.push_back(h * static_cast<double>(n.w) * g(std::exp(a)));
      }
    }
    step1.resize(node.size());
    phase.resize(node.size());
    for (std::size_t i = 0; i < node.size(); ++i)
      step1[i] = std::exp(std::complex<double>(0.0, dt * node[i]));
    resync(j);
    for (; j <= 100000 && j * dt <= tau_cap; ++j) {
      std::complex<double> term = 0.0;
      for (std::size_t i = 0; i < node.size(); ++i) {
        term += gw[i] * phase[i];
        phase[i] *= step1[i];
      }
      rhs += 2.0 * term.real();
      const double level =
          std::max(1e-17 * (1.0 + std::abs(rhs)), floor_level);
      small_run = std::abs(term) < level ? small_run + 1 : 0;
      if (small_run >= 3 && j >= 4) {
        done = true;
        break;
      }
      if (j % 32 == 0) resync(j + 1);
    }
  }
  out.rhs = rhs;
  return out;
}

}  // namespace lfn
