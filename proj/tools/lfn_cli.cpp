// Command-line surface over the library.  One subcommand per operation,
// JSON (default) or CSV payload on stdout, diagnostics on stderr.
// Exit codes: 0 payload emitted, 1 domain error, 2 usage error.

#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lfn/lfn.hpp"

namespace {

using json = nlohmann::json;
using lfn::Rational;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json jnum(double x) { return json::parse(fmt17(x)); }
json jcomplex(std::complex<double> z) {
  return json{{"re", jnum(z.real())}, {"im", jnum(z.imag())}};
}
json jlogexact(const lfn::LogExact& a) {
  return json{{"rational", lfn::to_string(a.constant)},
              {"log_coeff", lfn::to_string(a.log_coeff)},
              {"base", a.base},
              {"float", jnum(a.value())}};
}
json jclogexact(const lfn::CLogExact& a) {
  lfn::LogExact re{a.constant.re, a.log_coeff.re, a.base};
  lfn::LogExact im{a.constant.im, a.log_coeff.im, a.base};
  return json{{"re", jlogexact(re)}, {"im", jlogexact(im)}};
}

void emit(const json& payload, bool csv) {
  if (!csv) {
    std::cout << payload.dump(2) << "\n";
    return;
  }
  // scalar payloads flatten to key,value rows; arrays of rows pass through
  if (payload.contains("rows")) {
    for (const auto& h : payload["header"]) std::cout << h.get<std::string>() << ",";
    std::cout << "\n";
    for (const auto& row : payload["rows"]) {
      bool first = true;
      for (const auto& cell : row) {
        if (!first) std::cout << ",";
        first = false;
        if (cell.is_string())
          std::cout << cell.get<std::string>();
        else
          std::cout << cell.dump();
      }
      std::cout << "\n";
    }
    return;
  }
  std::function<void(const std::string&, const json&)> walk =
      [&](const std::string& prefix, const json& node) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it)
            walk(prefix.empty() ? it.key() : prefix + "." + it.key(),
                 it.value());
        } else if (node.is_array()) {
          size_t i = 0;
          for (const auto& v : node) walk(prefix + "[" + std::to_string(i++) + "]", v);
        } else {
          std::cout << prefix << ","
                    << (node.is_string() ? node.get<std::string>()
                                         : node.dump())
                    << "\n";
        }
      };
  walk("", payload);
}

std::complex<double> parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("expected re,im: " + s);
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

struct Grid {
  double start, stop, step;
};
Grid parse_grid(const std::string& s) {
  Grid g{};
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &g.start, &g.stop, &g.step) != 3 ||
      g.step <= 0.0)
    throw CLI::ValidationError("expected start,stop,step: " + s);
  return g;
}

std::pair<double, double> parse_bump(const std::string& s) {
  double u0 = 0.0, L = 0.0;
  if (std::sscanf(s.c_str(), "%lf,%lf", &u0, &L) != 2)
    throw CLI::ValidationError("expected u0,L: " + s);
  return {u0, L};
}

// shared place/character flag block
struct CharFlags {
  std::string place = "finite";
  long q = 2;
  long delta = 0;
  int f = 0;
  long char_index = 0;
  long char_index2 = 0;
  std::string parity = "plus";
  long N = 0;
  double tau = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--place", place)
        ->check(CLI::IsMember({"finite", "real", "complex"}));
    cmd->add_option("--q", q);
    cmd->add_option("--delta", delta);
    cmd->add_option("--f", f);
    cmd->add_option("--char-index", char_index);
    cmd->add_option("--char-index2", char_index2);
    cmd->add_option("--parity", parity)
        ->check(CLI::IsMember({"plus", "minus"}));
    cmd->add_option("--N", N);
    cmd->add_option("--tau", tau);
  }

  lfn::UnitaryCharacter build() const {
    if (place == "real")
      return lfn::UnitaryCharacter::real_char(parity == "minus" ? 1 : 0, tau);
    if (place == "complex")
      return lfn::UnitaryCharacter::complex_char(N, tau);
    lfn::Place v = lfn::Place::finite(q, static_cast<int>(delta));
    if (f > 0)
      return lfn::UnitaryCharacter::ramified(v, f, char_index, char_index2,
                                             tau);
    return lfn::UnitaryCharacter::unramified(v, tau);
  }

  json describe() const {
    json j{{"place", place}, {"tau", jnum(tau)}};
    if (place == "finite") {
      j["q"] = q;
      j["delta"] = delta;
      j["f"] = f;
      if (f > 0) {
        j["char_index"] = char_index;
        if (q == 2 && f >= 3) j["char_index2"] = char_index2;
      }
    } else if (place == "real") {
      j["parity"] = parity;
    } else {
      j["N"] = N;
    }
    return j;
  }
};

lfn::BruhatFunction load_bruhat(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j = json::parse(in);
  lfn::BruhatFunction phi(j.at("p").get<long>());
  for (const auto& t : j.at("terms")) {
    Rational center = lfn::rational_from_string(
        t.at("center").is_string() ? t.at("center").get<std::string>()
                                   : t.at("center").dump());
    long k = t.contains("k") ? t.at("k").get<long>()
                             : t.at("radius_exponent").get<long>();
    lfn::CRational coeff;
    if (t.at("coeff").is_object()) {
      const auto& c = t.at("coeff");
      auto field = [&](const char* name) -> Rational {
        if (!c.contains(name)) return Rational(0);
        return lfn::rational_from_string(
            c.at(name).is_string() ? c.at(name).get<std::string>()
                                   : c.at(name).dump());
      };
      coeff = lfn::CRational{field("re"), field("im")};
    } else {
      const auto& c = t.at("coeff");
      coeff = lfn::CRational{
          lfn::rational_from_string(c.is_string() ? c.get<std::string>()
                                                  : c.dump()),
          Rational(0)};
    }
    phi.add_term({center, k}, coeff);
  }
  phi.canonicalize();
  return phi;
}

json bruhat_json(const lfn::BruhatFunction& phi) {
  json terms = json::array();
  for (const auto& t : phi.terms())
    terms.push_back(json{{"center", lfn::to_string(t.ball.center)},
                         {"k", t.ball.k},
                         {"coeff",
                          {{"re", lfn::to_string(t.coeff.re)},
                           {"im", lfn::to_string(t.coeff.im)}}}});
  return json{{"p", phi.prime()}, {"terms", terms}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local-fields numerics toolkit"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  // ---- gamma
  auto* cmd_gamma = app.add_subcommand("gamma", "Tate Gamma factor");
  CharFlags gamma_chi;
  gamma_chi.attach(cmd_gamma);
  std::string gamma_s;
  cmd_gamma->add_option("--s", gamma_s)->required();

  // ---- spectral
  auto* cmd_spec = app.add_subcommand("spectral", "log-derivatives of Gamma");
  CharFlags spec_chi;
  spec_chi.attach(cmd_spec);
  int spec_order = 1;
  std::string spec_s, spec_grid;
  cmd_spec->add_option("--order", spec_order)->required();
  cmd_spec->add_option("--s", spec_s);
  cmd_spec->add_option("--tau-grid", spec_grid);

  // ---- symbol
  auto* cmd_sym = app.add_subcommand("symbol", "operator symbol on the circle");
  long sym_p = 2;
  std::string sym_kind = "H", sym_grid;
  cmd_sym->add_option("--p", sym_p)->required();
  cmd_sym->add_option("--kind", sym_kind)->check(CLI::IsMember({"H", "K"}));
  cmd_sym->add_option("--theta-grid", sym_grid)->required();

  // ---- toeplitz
  auto* cmd_toe = app.add_subcommand("toeplitz", "truncation eigenvalues");
  long toe_p = 2;
  std::string toe_kind = "H";
  int toe_size = 100;
  cmd_toe->add_option("--p", toe_p)->required();
  cmd_toe->add_option("--kind", toe_kind)->check(CLI::IsMember({"H", "K"}));
  cmd_toe->add_option("--size", toe_size)->required();

  // ---- weil
  auto* cmd_weil = app.add_subcommand("weil", "local explicit-formula term");
  CharFlags weil_chi;
  weil_chi.attach(cmd_weil);
  std::string weil_route = "closed", weil_bump;
  cmd_weil->add_option("--route", weil_route)
      ->check(CLI::IsMember({"spectral", "convolution", "closed"}));
  cmd_weil->add_option("--bump", weil_bump)->required();

  // ---- conductor-integral
  auto* cmd_ci = app.add_subcommand("conductor-integral",
                                    "unit integral of 1 - chi");
  long ci_p = 2;
  int ci_f = 1;
  long ci_index = 0, ci_index2 = 0;
  cmd_ci->add_option("--p", ci_p)->required();
  cmd_ci->add_option("--f", ci_f);
  cmd_ci->add_option("--char-index", ci_index)->required();
  cmd_ci->add_option("--char-index2", ci_index2);

  // ---- g-apply
  auto* cmd_g = app.add_subcommand("g-apply", "distribution G on a function");
  long g_p = 2;
  std::string g_phi, g_omega = "padic-unit-indicator-minus-psi";
  cmd_g->add_option("--p", g_p)->required();
  cmd_g->add_option("--phi", g_phi)->required();
  cmd_g->add_option("--omega", g_omega);

  // ---- conductor-apply
  auto* cmd_ca = app.add_subcommand("conductor-apply",
                                    "conductor operator, exact image");
  long ca_p = 2;
  std::string ca_phi;
  cmd_ca->add_option("--p", ca_p)->required();
  cmd_ca->add_option("--phi", ca_phi)->required();

  // ---- multiplier-check
  auto* cmd_mc = app.add_subcommand("multiplier-check",
                                    "local functional equation at 1/2");
  long mc_p = 2;
  std::string mc_phi;
  double mc_tau = 0.0;
  int mc_f = 0;
  long mc_index = 0, mc_index2 = 0;
  cmd_mc->add_option("--p", mc_p)->required();
  cmd_mc->add_option("--phi", mc_phi)->required();
  cmd_mc->add_option("--tau", mc_tau)->required();
  cmd_mc->add_option("--f", mc_f);
  cmd_mc->add_option("--char-index", mc_index);
  cmd_mc->add_option("--char-index2", mc_index2);

  // ---- explicit
  auto* cmd_ex = app.add_subcommand("explicit", "two sides of the formula");
  std::string ex_zeros, ex_bump;
  long ex_count = 0;
  cmd_ex->add_option("--zeros", ex_zeros)->required();
  cmd_ex->add_option("--bump", ex_bump)->required();
  cmd_ex->add_option("--zero-count", ex_count);

  // ---- poisson
  auto* cmd_po = app.add_subcommand("poisson", "multiplicative Poisson check");
  double po_u = 2.0;
  std::string po_bump;
  cmd_po->add_option("--u", po_u)->required();
  cmd_po->add_option("--bump", po_bump)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  const bool csv = format == "csv";
  try {
    if (*cmd_gamma) {
      auto chi = gamma_chi.build();
      auto s = parse_complex(gamma_s);
      auto v = lfn::gamma_factor(chi, s);
      emit(json{{"character", gamma_chi.describe()},
                {"s", jcomplex(s)},
                {"value", jcomplex(v)},
                {"abs", jnum(std::abs(v))}},
           csv);
    } else if (*cmd_spec) {
      auto chi = spec_chi.build();
      if (spec_s.empty() == spec_grid.empty())
        throw CLI::ValidationError("need exactly one of --s, --tau-grid");
      if (!spec_s.empty()) {
        auto s = parse_complex(spec_s);
        auto v = lfn::dlog_gamma(chi, s, spec_order);
        emit(json{{"character", spec_chi.describe()},
                  {"order", spec_order},
                  {"s", jcomplex(s)},
                  {"value", jcomplex(v)}},
             csv);
      } else {
        Grid g = parse_grid(spec_grid);
        json rows = json::array();
        for (double t = g.start; t <= g.stop + 1e-12; t += g.step) {
          auto v = lfn::dlog_gamma(chi, {0.5, t}, spec_order);
          rows.push_back(json::array(
              {jnum(t), jnum(v.real()), jnum(v.imag())}));
        }
        emit(json{{"header", {"tau", "re", "im"}}, {"rows", rows}}, csv);
      }
    } else if (*cmd_sym) {
      Grid g = parse_grid(sym_grid);
      const auto kind = sym_kind == "H" ? lfn::LocalOperator::conductor
                                        : lfn::LocalOperator::commutator;
      json rows = json::array();
      for (double th = g.start; th <= g.stop + 1e-12; th += g.step) {
        const double v =
            lfn::symbol(sym_p, std::polar(1.0, th), kind);
        rows.push_back(json::array({jnum(th), jnum(v)}));
      }
      emit(json{{"header", {"theta", "value"}}, {"rows", rows}}, csv);
    } else if (*cmd_toe) {
      const auto kind = toe_kind == "H" ? lfn::LocalOperator::conductor
                                        : lfn::LocalOperator::commutator;
      auto ev = lfn::toeplitz_spectrum(toe_p, toe_size, kind);
      json rows = json::array();
      for (size_t i = 0; i < ev.size(); ++i)
        rows.push_back(json::array({json(i), jnum(ev[i])}));
      emit(json{{"header", {"index", "eigenvalue"}}, {"rows", rows}}, csv);
    } else if (*cmd_weil) {
      auto chi = weil_chi.build();
      auto [u0, L] = parse_bump(weil_bump);
      auto g = lfn::MultiplicativeTestFunction::smooth_bump(u0, L);
      lfn::WeilRoute route = weil_route == "closed"
                                 ? lfn::WeilRoute::closed
                                 : weil_route == "convolution"
                                       ? lfn::WeilRoute::convolution
                                       : lfn::WeilRoute::spectral;
      auto r = lfn::weil_term(chi, g, route);
      emit(json{{"character", weil_chi.describe()},
                {"route", weil_route},
                {"bump", {{"u0", jnum(u0)}, {"L", jnum(L)}}},
                {"value", jcomplex(r.value)},
                {"tolerance", jnum(r.tolerance)}},
           csv);
    } else if (*cmd_ci) {
      auto chi = lfn::UnitaryCharacter::ramified(lfn::Place::finite(ci_p),
                                                 ci_f, ci_index, ci_index2);
      emit(jlogexact(lfn::conductor_integral(chi)), csv);
    } else if (*cmd_g) {
      auto phi = load_bruhat(g_phi);
      if (phi.prime() != g_p)
        throw std::invalid_argument("--p disagrees with the phi file");
      auto v = lfn::g_apply(phi, lfn::omega_from_name(g_omega));
      emit(json{{"omega", g_omega}, {"value", jclogexact(v)}}, csv);
    } else if (*cmd_ca) {
      auto phi = load_bruhat(ca_phi);
      if (phi.prime() != ca_p)
        throw std::invalid_argument("--p disagrees with the phi file");
      auto img = lfn::conductor_apply(phi);
      json window = json::array();
      for (const auto& [b, val] : img.window)
        window.push_back(json{{"center", lfn::to_string(b.center)},
                              {"k", b.k},
                              {"value", jclogexact(val)}});
      emit(json{{"p", img.p},
                {"phi", bruhat_json(phi)},
                {"inner",
                 {{"from", img.inner_from},
                  {"const", jclogexact(img.inner_const)},
                  {"slope", jclogexact(img.inner_slope)}}},
                {"window", window},
                {"outer",
                 {{"from", img.outer_from},
                  {"coeff_re", lfn::to_string(img.outer_coeff.re)},
                  {"coeff_im", lfn::to_string(img.outer_coeff.im)}}}},
           csv);
    } else if (*cmd_mc) {
      auto phi = load_bruhat(mc_phi);
      if (phi.prime() != mc_p)
        throw std::invalid_argument("--p disagrees with the phi file");
      lfn::Place v = lfn::Place::finite(mc_p);
      auto chi = mc_f > 0
                     ? lfn::UnitaryCharacter::ramified(v, mc_f, mc_index,
                                                       mc_index2, mc_tau)
                     : lfn::UnitaryCharacter::unramified(v, mc_tau);
      auto r = lfn::tate_multiplier_check(phi, chi);
      emit(json{{"lhs", jcomplex(r.lhs)},
                {"rhs", jcomplex(r.rhs)},
                {"abs_error", jnum(r.abs_error())}},
           csv);
    } else if (*cmd_ex) {
      auto [u0, L] = parse_bump(ex_bump);
      auto g = lfn::MultiplicativeTestFunction::smooth_bump(u0, L);
      auto zeros = lfn::load_zero_ordinates(ex_zeros);
      if (ex_count > 0 && static_cast<size_t>(ex_count) < zeros.size())
        zeros.resize(static_cast<size_t>(ex_count));
      auto rep = lfn::explicit_check(g, zeros);
      json breakdown;
      for (const auto& [k, val] : rep.wside.breakdown)
        breakdown[k] = jcomplex(val);
      emit(json{{"bump", {{"u0", jnum(u0)}, {"L", jnum(L)}}},
                {"zside",
                 {{"value", jcomplex(rep.zside.value)},
                  {"zeros_used", rep.zside.zeros_used},
                  {"truncation_bound", jnum(rep.zside.truncation_bound)}}},
                {"wside",
                 {{"value", jcomplex(rep.wside.value)},
                  {"tolerance", jnum(rep.wside.tolerance)},
                  {"breakdown", breakdown}}},
                {"residual", jnum(rep.residual)}},
           csv);
    } else if (*cmd_po) {
      auto [u0, L] = parse_bump(po_bump);
      auto g = lfn::MultiplicativeTestFunction::smooth_bump(u0, L);
      auto r = lfn::poisson_check(g, po_u);
      emit(json{{"u", jnum(po_u)},
                {"lhs", jcomplex(r.lhs)},
                {"rhs", jcomplex(r.rhs)},
                {"abs_error", jnum(r.abs_error())}},
           csv);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
