#include "voachar/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>

#include "voachar/analysis.hpp"
#include "voachar/error.hpp"
#include "voachar/expr.hpp"
#include "voachar/lattice.hpp"
#include "voachar/modforms.hpp"
#include "voachar/serialize.hpp"
#include "voachar/virasoro.hpp"
#include "voachar/zhu.hpp"

namespace voachar {

namespace {

using nlohmann::json;

// Invariants do not depend on the truncation order.
constexpr std::int64_t kInvariantPrec = 4;

struct Globals {
  std::int64_t prec = 60;
  bool json = false;
  std::string gram;
  double tol = 1e-6;
};

class Command {
 public:
  Command(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  void emit(const json& j, const std::string& text) {
    if (g_.json)
      out_ << j.dump(2) << "\n";
    else
      out_ << text;
  }

  EvenLattice lattice(const std::string& name) const {
    if (!g_.gram.empty()) return load_gram_file(g_.gram);
    return named_lattice(name.empty() ? "A1" : name);
  }

  const Globals& g_;
  std::ostream& out_;
};

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

std::string fmt(std::complex<double> z) {
  std::ostringstream s;
  s << std::setprecision(8) << z.real();
  if (std::abs(z.imag()) > 1e-12) s << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return s.str();
}

json invariants_json(const Theory& t) {
  json j = to_json(t, false);
  const RankBoundReport rb = check_rank_bound(t);
  j["rank_bound"] = {{"applicable", rb.applicable},
                     {"holds", rb.holds},
                     {"l", to_string(rb.lie_rank)},
                     {"c_tilde", to_string(rb.c_tilde)},
                     {"c_tilde_positive", rb.c_tilde_positive}};
  j["lattice_characterization"] = check_lattice_characterization(t);
  return j;
}

std::string invariants_text(const Theory& t) {
  const RankBoundReport rb = check_rank_bound(t);
  std::ostringstream s;
  s << "theory: " << t.name << "\n";
  s << "c: " << to_string(t.c) << "\n";
  s << "l: " << t.lie_rank << "\n";
  s << "c_tilde: " << to_string(rb.c_tilde) << "\n";
  s << "lambda_min: " << to_string(*t.lambda_min) << "\n";
  if (t.module_count) s << "modules: " << to_string(*t.module_count) << (t.invariants_only() ? " (invariants only)" : "") << "\n";
  s << "rank bound l <= c_tilde: ";
  if (!rb.applicable)
    s << "not applicable (not rational)";
  else
    s << (rb.holds ? "holds" : "VIOLATED");
  s << "\n";
  if (t.flags.nontrivial) s << "c_tilde > 0: " << (rb.c_tilde_positive ? "yes" : "no") << "\n";
  s << "lattice characterization c_tilde = l = c: " << (check_lattice_characterization(t) ? "true" : "false") << "\n";
  return s.str();
}

std::optional<QSeries> named_series(const std::string& name, std::int64_t prec, bool classical, const Command& cmd) {
  if (name == "phi") return euler_phi(prec);
  if (name == "eta") return eta(prec);
  if (name == "partitions" || name == "p") return partition_series(prec);
  if (name == "delta") return delta(prec);
  if (name == "J") return moonshine_J(prec);
  if (name == "theta") return theta(cmd.lattice(""), prec);
  auto number = [&](std::size_t skip) -> std::int64_t {
    const std::string digits = name.substr(skip);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return -1;
    return std::stoll(digits);
  };
  if (name.size() > 1 && name[0] == 'E') {
    const std::int64_t w = number(1);
    if (w >= 2 && w % 2 == 0) {
      const EisensteinIndex k(w / 2);
      return classical ? eisenstein_classical(k, prec) : eisenstein(k, prec);
    }
  }
  if (name.rfind("sigma", 0) == 0) {
    const std::int64_t s = number(5);
    if (s >= 1) return sigma_series(s, prec);
  }
  return std::nullopt;
}

RationalVector parse_vector(const std::vector<std::string>& parts) {
  RationalVector v;
  for (const auto& p : parts) v.push_back(parse_rational(p));
  return v;
}

int cmd_qexp(Command& cmd, const std::string& what, int module, bool classical) {
  std::optional<QSeries> named = named_series(what, cmd.g_.prec, classical, cmd);
  QSeries f;
  if (named) {
    f = *named;
  } else {
    const Theory t = evaluate(*parse_expr(what), cmd.g_.prec);
    const std::size_t j = module < 0 ? t.vacuum_index : static_cast<std::size_t>(module);
    f = full_character(t, j);
  }
  cmd.emit(to_json(f), f.to_string(40) + "\n");
  return kExitOk;
}

int cmd_invariants(Command& cmd, const std::string& src, bool is_check) {
  const Theory t = evaluate(*parse_expr(src), kInvariantPrec);
  json j = invariants_json(t);
  std::string text = invariants_text(t);
  if (t.name.find("Moonshine") != std::string::npos && t.name.find("Vir(2,5)") != std::string::npos &&
      t.c == 0) {
    const std::string flag = "c_tilde = " + to_string(effective_central_charge(t)) +
                             " by additivity of c and lambda_min; the published value 528 does not match";
    j["discrepancy"] = flag;
    text += "note: " + flag + "\n";
  }
  cmd.emit(j, text);
  if (!is_check) return kExitOk;
  const RankBoundReport rb = check_rank_bound(t);
  return rb.applicable && !rb.holds ? kExitViolation : kExitOk;
}

int cmd_theta(Command& cmd, const std::string& name, bool cosets) {
  const EvenLattice l = cmd.lattice(name);
  json j;
  std::ostringstream text;
  if (!cosets) {
    const QSeries th = theta(l, cmd.g_.prec);
    j = to_json(th);
    text << th.to_string(40) << "\n";
  } else {
    j = json::array();
    for (const auto& c : discriminant_cosets(l)) {
      const QSeries th = coset_theta(l, c, cmd.g_.prec);
      json coords = json::array();
      std::string label;
      for (const auto& x : c.coords) {
        coords.push_back(to_string(x));
        label += (label.empty() ? "" : ",") + to_string(x);
      }
      j.push_back({{"coords", coords}, {"min_norm", to_string(c.min_norm)}, {"theta", to_json(th)}});
      text << "coset (" << label << ") min_norm " << to_string(c.min_norm) << ": " << th.to_string(20) << "\n";
    }
  }
  cmd.emit(j, text.str());
  return kExitOk;
}

int cmd_smatrix(Command& cmd, const std::string& src, const std::string& weight) {
  const Theory t = evaluate(*parse_expr(src), cmd.g_.prec);
  if (t.invariants_only()) throw InvalidArgument("invariants-only theory has no characters");
  std::vector<QSeries> chars;
  for (std::size_t j = 0; j < t.modules.size(); ++j) chars.push_back(full_character(t, j));
  const SMatrixEstimate s = extract_smatrix(chars, parse_rational(weight));
  // Deviation of S^2 from the nearest permutation matrix.
  const std::size_t r = s.entries.size();
  double sq_dev = 0;
  for (std::size_t i = 0; i < r; ++i) {
    double best = 0;
    std::vector<double> row(r);
    for (std::size_t k = 0; k < r; ++k) {
      std::complex<double> v = 0;
      for (std::size_t m = 0; m < r; ++m) v += s.entries[i][m] * s.entries[m][k];
      row[k] = std::abs(v);
      best = std::max(best, row[k]);
    }
    for (std::size_t k = 0; k < r; ++k) sq_dev = std::max(sq_dev, row[k] == best ? std::abs(best - 1) : row[k]);
  }
  json j = to_json(s);
  j["theory"] = t.name;
  json weights = json::array();
  for (const auto& m : t.modules) weights.push_back(to_string(m.weight));
  j["module_weights"] = weights;
  j["s_squared_permutation_deviation"] = sq_dev;
  std::ostringstream text;
  text << "theory: " << t.name << "\nmodule weights:";
  for (const auto& m : t.modules) text << " " << to_string(m.weight);
  text << "\nS =\n";
  for (const auto& row : s.entries) {
    text << " ";
    for (const auto& x : row) text << " " << std::setw(14) << fmt(x);
    text << "\n";
  }
  text << "residual: " << fmt(s.residual) << "\ncondition: " << fmt(s.condition_number)
       << "\nS^2 deviation from a permutation: " << fmt(sq_dev) << "\n";
  cmd.emit(j, text.str());
  return s.residual <= cmd.g_.tol ? kExitOk : kExitViolation;
}

int cmd_growth(Command& cmd, const std::string& src, int module, std::int64_t terms) {
  if (terms < 40) throw InvalidArgument("insufficient data: need at least 40 terms");
  const Theory t = evaluate(*parse_expr(src), terms + 1);
  if (t.invariants_only()) throw InvalidArgument("invariants-only theory has no characters");
  const std::size_t j = module < 0 ? t.vacuum_index : static_cast<std::size_t>(module);
  if (j >= t.modules.size()) throw InvalidArgument("module index out of range");
  const Rational ct = effective_central_charge(t);
  const GrowthReport twisted = classify_growth(twisted_coefficients(t, j, ct, static_cast<std::size_t>(terms)));
  const GrowthReport control =
      classify_growth(twisted_coefficients(t, j, ct - Rational(1, 2), static_cast<std::size_t>(terms)));
  json jj{{"theory", t.name},
          {"module", j},
          {"c_tilde", to_string(ct)},
          {"terms", terms},
          {"twisted", to_json(twisted)},
          {"control", to_json(control)}};
  std::ostringstream text;
  auto line = [&](const std::string& label, const GrowthReport& g) {
    text << label << ": " << to_string(g.model) << " ("
         << (g.model == GrowthModel::exponential_sqrt ? "C" : "alpha") << " = " << fmt(g.exponent_or_constant)
         << ", r2 poly " << fmt(g.r_squared_polynomial) << ", r2 exp " << fmt(g.r_squared_exponential) << ", "
         << g.points_used << " points)\n";
  };
  text << "theory: " << t.name << ", module " << j << ", c_tilde " << to_string(ct) << "\n";
  line("eta^c_tilde Z", twisted);
  line("eta^(c_tilde-1/2) Z", control);
  cmd.emit(jj, text.str());
  return kExitOk;
}

int cmd_zhucheck(Command& cmd, const std::string& name, const std::vector<std::string>& u_text,
                 const std::vector<std::string>& v_text) {
  const EvenLattice l = cmd.lattice(name);
  RationalVector u = u_text.empty() ? RationalVector(l.rank(), Rational(0)) : parse_vector(u_text);
  RationalVector v = v_text.empty() ? RationalVector(l.rank(), Rational(0)) : parse_vector(v_text);
  if (u_text.empty()) u[0] = 1;
  if (v_text.empty()) v[0] = 1;
  const HeisenbergPair pair(l, u, v);
  json mods = json::array();
  std::ostringstream text;
  text << "lattice: " << (l.name().empty() ? "(gram)" : l.name()) << ", <u,v> = " << to_string(pair.pairing) << "\n";
  bool all = true;
  for (const auto& c : discriminant_cosets(l)) {
    const bool ok = verify_zhu_module(pair, c, cmd.g_.prec);
    const bool control = verify_zhu_module(pair, c, cmd.g_.prec, E2Mode::constant_term);
    all = all && ok;
    mods.push_back({{"min_norm", to_string(c.min_norm)}, {"identity", ok}, {"control_e2_constant", control}});
    text << "module min_norm " << to_string(c.min_norm) << ": identity " << (ok ? "holds" : "FAILS")
         << ", control with E2 -> -1/12 " << (control ? "holds" : "fails") << "\n";
  }
  cmd.emit(json{{"pairing", to_string(pair.pairing)}, {"modules", mods}, {"holds", all}}, text.str());
  return all ? kExitOk : kExitViolation;
}

int cmd_quasicheck(Command& cmd, const std::string& which, const std::vector<double>& tau_v) {
  if (tau_v.size() != 2) throw InvalidArgument("--tau takes RE,IM");
  const TauPoint tau(tau_v[0], tau_v[1]);
  double residual = 0;
  if (which == "e2")
    residual = check_e2_quasimodular(tau, cmd.g_.prec);
  else if (which == "eta")
    residual = check_eta_transform(tau, cmd.g_.prec);
  else if (which == "e4")
    residual = check_eisenstein_modular(2, tau, cmd.g_.prec);
  else
    throw InvalidArgument("quasicheck takes e2, eta or e4");
  const bool ok = residual <= cmd.g_.tol;
  cmd.emit(json{{"check", which}, {"tau", {tau.re, tau.im}}, {"residual", residual}, {"pass", ok}},
           which + " at tau = " + fmt(tau.re) + " + " + fmt(tau.im) + "i: residual " + fmt(residual) +
               (ok ? " (pass)\n" : " (FAIL)\n"));
  return ok ? kExitOk : kExitViolation;
}

int cmd_catalog(Command& cmd) {
  json rows = json::array();
  std::ostringstream text;
  text << std::left << std::setw(4) << "ex" << std::setw(30) << "theory" << std::setw(8) << "c" << std::setw(5) << "l"
       << std::setw(8) << "c~" << std::setw(10) << "l<=c~" << std::setw(9) << "c~=l=c" << "note\n";
  bool ok = true;
  for (const auto& e : builtin_examples()) {
    const Theory t = evaluate(*parse_expr(e.expression), kInvariantPrec);
    const RankBoundReport rb = check_rank_bound(t);
    const bool lat = check_lattice_characterization(t);
    ok = ok && (!rb.applicable || rb.holds);
    json j = invariants_json(t);
    j["example"] = e.label;
    j["expression"] = e.expression;
    j["lattice_voa"] = e.lattice_voa;
    j["note"] = e.note;
    rows.push_back(j);
    text << std::setw(4) << e.label << std::setw(30) << e.expression << std::setw(8) << to_string(t.c) << std::setw(5)
         << t.lie_rank << std::setw(8) << to_string(rb.c_tilde) << std::setw(10) << (rb.holds ? "yes" : "NO")
         << std::setw(9) << (lat ? "yes" : "no") << e.note << "\n";
  }
  cmd.emit(rows, text.str());
  return ok ? kExitOk : kExitViolation;
}

int cmd_vir(Command& cmd, std::int64_t p, std::int64_t q, const std::vector<std::int64_t>& mod) {
  const MinimalModel mm = minimal_model(p, q);
  std::int64_t m = 1, n = 1;
  if (!mod.empty()) {
    if (mod.size() != 2) throw InvalidArgument("--module takes m n");
    m = mod[0];
    n = mod[1];
  }
  const auto [cm, cn] = lambda_min_certificate(p, q);
  const QSeries ch = irreducible_character(p, q, m, n, cmd.g_.prec);
  json weights = json::array();
  std::string wtext;
  for (const auto& w : mm.weights) {
    weights.push_back(to_string(w));
    wtext += " " + to_string(w);
  }
  const Rational lmin = kac_weight(p, q, cm, cn);
  const Rational ct = mm.c - 24 * lmin;
  json j{{"p", p},
         {"q", q},
         {"c", to_string(mm.c)},
         {"weights", weights},
         {"lambda_min", to_string(lmin)},
         {"c_tilde", to_string(ct)},
         {"certificate", {cm, cn}},
         {"module", {m, n}},
         {"weight", to_string(kac_weight(p, q, m, n))},
         {"character", to_json(ch)}};
  std::ostringstream text;
  text << "Vir(" << p << "," << q << "): c = " << to_string(mm.c) << "\nweights:" << wtext << "\nlambda_min = "
       << to_string(lmin) << " via (m,n) = (" << cm << "," << cn << "), |np - mq| = " << std::abs(cn * p - cm * q)
       << "\nc_tilde = " << to_string(ct) << "\nmodule (" << m << "," << n << "), weight "
       << to_string(kac_weight(p, q, m, n)) << ":\n  " << ch.to_string(30) << "\n";
  cmd.emit(j, text.str());
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-series and character engine for rational VOA data", "voachar"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--prec", g.prec, "truncation order (default 60)");
  app.add_flag("--json", g.json, "emit JSON");
  app.add_option("--gram", g.gram, "Gram matrix file");
  app.add_option("--tol", g.tol, "numeric tolerance (default 1e-6)");
  app.fallthrough();

  std::string expr_arg, name_arg, weight_arg = "0";
  int module = -1;
  bool classical = false, cosets = false;
  std::int64_t terms = 1000, vp = 0, vq = 0;
  std::vector<std::string> u_arg, v_arg;
  std::vector<double> tau_arg{0.0, 1.0};
  std::vector<std::int64_t> vir_module;

  auto* qexp = app.add_subcommand("qexp", "q-expansion of a named series or a theory's character");
  qexp->add_option("series", expr_arg, "phi|eta|partitions|delta|J|E<2k>|sigma<s>|theta, or a theory expression")
      ->required();
  qexp->add_option("--module", module, "module index for theory characters");
  qexp->add_flag("--classical", classical, "constant-term-one Eisenstein normalization");
  auto* inv = app.add_subcommand("invariants", "c, l, c~, lambda_min and both checks");
  inv->add_option("expr", expr_arg)->required();
  auto* check = app.add_subcommand("check", "rank bound and lattice characterization; exit 1 on violation");
  check->add_option("expr", expr_arg)->required();
  auto* th = app.add_subcommand("theta", "lattice theta series");
  th->add_option("--lattice", name_arg, "built-in lattice (A1, E8)");
  th->add_flag("--cosets", cosets, "one series per discriminant coset");
  auto* sm = app.add_subcommand("smatrix", "numeric S-matrix of a theory's characters");
  sm->add_option("expr", expr_arg)->required();
  sm->add_option("--weight", weight_arg, "modular weight k (default 0)");
  auto* gr = app.add_subcommand("growth", "coefficient growth of eta^c~ Z and eta^(c~-1/2) Z");
  gr->add_option("expr", expr_arg)->required();
  gr->add_option("--module", module, "module index (default vacuum)");
  gr->add_option("--terms", terms, "number of coefficients (default 1000)");
  auto* zc = app.add_subcommand("zhucheck", "exact Zhu trace identity for Heisenberg states");
  zc->add_option("--lattice", name_arg, "built-in lattice (default A1)");
  zc->add_option("--u", u_arg, "u coordinates a1,a2,...")->delimiter(',');
  zc->add_option("--v", v_arg, "v coordinates b1,b2,...")->delimiter(',');
  auto* qc = app.add_subcommand("quasicheck", "E2 quasimodularity, eta or E4 transformation residual");
  qc->add_option("which", name_arg, "e2|eta|e4")->required();
  qc->add_option("--tau", tau_arg, "RE,IM")->delimiter(',')->expected(2);
  auto* cat = app.add_subcommand("catalog", "table of the standard examples");
  auto* vir = app.add_subcommand("vir", "minimal model data and characters");
  vir->add_option("p", vp)->required();
  vir->add_option("q", vq)->required();
  vir->add_option("--module", vir_module, "m n")->expected(2);

  std::vector<std::string> argv_store{"voachar"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Command cmd(g, out);
  try {
    if (g.prec < 1) throw InvalidArgument("--prec must be positive");
    if (*qexp) return cmd_qexp(cmd, expr_arg, module, classical);
    if (*inv) return cmd_invariants(cmd, expr_arg, false);
    if (*check) return cmd_invariants(cmd, expr_arg, true);
    if (*th) return cmd_theta(cmd, name_arg, cosets);
    if (*sm) return cmd_smatrix(cmd, expr_arg, weight_arg);
    if (*gr) return cmd_growth(cmd, expr_arg, module, terms);
    if (*zc) return cmd_zhucheck(cmd, name_arg, u_arg, v_arg);
    if (*qc) return cmd_quasicheck(cmd, name_arg, tau_arg);
    if (*cat) return cmd_catalog(cmd);
    if (*vir) return cmd_vir(cmd, vp, vq, vir_module);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ComputationError& e) {
    err << "computation error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitUsage;
}

}  // namespace voachar
