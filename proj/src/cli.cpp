#include "zsig/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zsig/bounds.hpp"
#include "zsig/classifier.hpp"
#include "zsig/divisibility.hpp"
#include "zsig/mahler.hpp"
#include "zsig/mandelbrot.hpp"
#include "zsig/orbit.hpp"
#include "zsig/sweep.hpp"

namespace zsig {

namespace {

using nlohmann::json;

json big_to_json(const BigInt& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

void parse_rational(const std::string& s, BigInt& a, BigInt& b) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      a = BigInt(s);
      b = 1;
    } else {
      a = BigInt(s.substr(0, slash));
      b = BigInt(s.substr(slash + 1));
    }
  } catch (const std::invalid_argument&) {
    throw UsageError("cannot parse rational '" + s + "'");
  }
}

// Accepts "p/q", "x", "x+yi", "x-yi", "yi".
Complex parse_complex(const std::string& s) {
  if (s.find('/') != std::string::npos) {
    BigInt a, b;
    parse_rational(s, a, b);
    return Complex(mpq_get_d(BigRat(a, b).get_mpq_t()), 0.0);
  }
  std::string t = s;
  double re = 0.0, im = 0.0;
  if (!t.empty() && t.back() == 'i') {
    t.pop_back();
    // split at the last +/- that is not an exponent sign or leading sign
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
      if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    try {
      if (split == std::string::npos) {
        im = t.empty() || t == "+" ? 1.0 : (t == "-" ? -1.0 : std::stod(t));
      } else {
        re = std::stod(t.substr(0, split));
        const std::string im_s = t.substr(split);
        im = im_s == "+" ? 1.0 : (im_s == "-" ? -1.0 : std::stod(im_s));
      }
    } catch (const std::exception&) {
      throw UsageError("cannot parse complex '" + s + "'");
    }
    return Complex(re, im);
  }
  try {
    return Complex(std::stod(t), 0.0);
  } catch (const std::exception&) {
    throw UsageError("cannot parse complex '" + s + "'");
  }
}

struct ParamFlags {
  std::string a = "0";
  std::string b = "1";
  int d = 2;
  std::string c;  // optional "p/q" override
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--a", f.a, "numerator of c");
  cmd->add_option("--b", f.b, "denominator of c (positive)");
  cmd->add_option("--d", f.d, "degree (>= 2)")->check(CLI::Range(2, 64));
  cmd->add_option("--c", f.c, "c as a rational 'p/q' (overrides --a/--b)");
}

Parameter resolve_param(const ParamFlags& f) {
  BigInt a, b;
  if (!f.c.empty()) {
    parse_rational(f.c, a, b);
  } else {
    try {
      a = BigInt(f.a);
      b = BigInt(f.b);
    } catch (const std::invalid_argument&) {
      throw UsageError("cannot parse --a/--b as integers");
    }
  }
  return make_parameter(a, b, f.d);
}

json param_json(const Parameter& p) {
  return {{"a", big_to_json(p.a)},
          {"b", big_to_json(p.b)},
          {"d", p.d},
          {"integral", p.integral},
          {"finite_orbit", p.finite_orbit}};
}

json verdict_json(const Parameter& p, const ZsigmondyVerdict& v) {
  json j = param_json(p);
  j["n"] = v.n;
  j["in_zsigmondy"] = v.in_zsigmondy;
  j["certificate_kind"] = to_string(v.certificate);
  j["witness"] = v.witness == 0 ? json(nullptr) : big_to_json(v.witness);
  j["certificate"] = v.detail;
  return j;
}

json classification_json(const Classification& cl) {
  json j;
  j["case_tag"] = to_string(cl.tag);
  j["M"] = cl.m_of_c ? json(*cl.m_of_c) : json("unbounded-by-theorem");
  switch (cl.prediction) {
    case PredictionKind::Exact:
      j["predicted"] = cl.predicted_set;
      j["bound"] = nullptr;
      break;
    case PredictionKind::Bounded:
      j["predicted"] = "bounded";
      j["bound"] = cl.bound;
      break;
    case PredictionKind::None:
      j["predicted"] = nullptr;
      j["bound"] = nullptr;
      break;
  }
  j["n2_member"] = cl.n2_member;
  j["power_triple"] =
      cl.power_triple
          ? json::array({big_to_json(cl.power_triple->k),
                         big_to_json(cl.power_triple->l),
                         cl.power_triple->m})
          : json(nullptr);
  return j;
}

json record_json(const SweepRecord& rec) {
  json j = param_json(rec.param);
  j.erase("integral");
  j.erase("finite_orbit");
  j["classification"] = classification_json(rec.classification);
  j["computed"] = rec.computed;
  j["consistency"] = to_string(rec.verdict);
  if (rec.s_check) {
    json s;
    s["in_S_up_to_12"] = rec.s_check->in_S ? json(*rec.s_check->in_S)
                                           : json(nullptr);
    s["blocking_period"] = rec.s_check->blocking_period
                               ? json(*rec.s_check->blocking_period)
                               : json(nullptr);
    s["theorem_consistent"] = rec.s_check->theorem_consistent;
    j["s_check"] = s;
  }
  if (!rec.evidence.empty()) j["evidence"] = rec.evidence;
  j["timing_ms"] = rec.timing_ms;
  return j;
}

json inequality_json(const InequalityReport& rep) {
  json terms = json::object();
  for (const NamedTerm& t : rep.terms) terms[t.name] = t.value;
  return {{"n", rep.n},
          {"mode", to_string(rep.mode)},
          {"lhs", rep.lhs},
          {"rhs", rep.rhs},
          {"holds", rep.holds},
          {"marginal", rep.marginal},
          {"s_d", big_to_json(rep.s_d)},
          {"omega", rep.omega},
          {"log_b", rep.log_b},
          {"log_abs_c", rep.log_abs_c},
          {"terms", terms}};
}

json mahler_json(const MahlerParams& mp) {
  json j{{"d", mp.d},
         {"m", mp.m},
         {"eps", mp.eps},
         {"mu", mp.mu},
         {"kappa", mp.kappa},
         {"n1_min", mp.n1_min},
         {"gap", mp.gap},
         {"gap_canonical", mp.gap_canon},
         {"N", mp.N},
         {"R_bound_coeff", mp.r_coeff},
         {"size_bound", 2 * mp.m + 6 - 1 + mp.N}};
  if (mp.eps_discrepancy)
    j["note"] =
        "d=2 table: 5d^2/(2 eps) evaluates to 2500 with eps=0.004, but the "
        "published conclusions (N=6, gap<14) correspond to 15000; the table "
        "keeps the stated conclusions and reports both gaps";
  json checks = json::array();
  for (const AdmissibilityCheck& ch : admissibility_checks(mp))
    checks.push_back({{"name", ch.name}, {"margin", ch.margin}, {"ok", ch.ok}});
  j["admissibility"] = checks;
  return j;
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

// ----------------------------- subcommands --------------------------------

int cmd_orbit(const ParamFlags& pf, int n, bool json_mode, std::ostream& out) {
  const Parameter p = resolve_param(pf);
  require_infinite_orbit(p);

  OrbitCache cache(std::getenv("ZSIG_CACHE") ? std::getenv("ZSIG_CACHE")
                                             : "");
  Orbit orbit(p);
  if (!cache.path().empty()) {
    cache.load();
    const std::vector<BigInt> cached = cache.lookup(p);
    if (!cached.empty()) orbit = Orbit::from_numerators(p, cached);
  }
  orbit = extend_orbit(orbit, n);
  if (!cache.path().empty()) cache.append(orbit);

  if (json_mode) {
    json terms = json::array();
    for (int k = 1; k <= n; ++k)
      terms.push_back({{"n", k},
                       {"numerator", orbit.numerator(k).get_str()},
                       {"denom_exp", orbit.term(k).denom_exp.get_str()}});
    json j = param_json(p);
    j["terms"] = terms;
    out << j.dump() << "\n";
  } else {
    for (int k = 1; k <= n; ++k)
      out << "n=" << k << "  a_n=" << orbit.numerator(k).get_str()
          << "  denominator=b^" << orbit.term(k).denom_exp.get_str() << "\n";
  }
  return 0;
}

int cmd_zsig(const ParamFlags& pf, int n, bool json_mode, std::ostream& out) {
  const Parameter p = resolve_param(pf);
  const ZsigmondyVerdict v = decide_membership(p, n);
  if (json_mode) {
    out << verdict_json(p, v).dump() << "\n";
  } else {
    out << "n=" << n << (v.in_zsigmondy ? " IS " : " is NOT ")
        << "in Z(f,0) for " << p.str() << "  [" << to_string(v.certificate)
        << (v.detail.empty() ? "" : ": " + v.detail) << "]\n";
  }
  return 0;
}

int cmd_set(const ParamFlags& pf, int max_n, bool report_n1, bool json_mode,
            std::ostream& out) {
  const Parameter p = resolve_param(pf);
  const std::vector<int> zset = zsigmondy_set_certified(p, max_n);
  if (json_mode) {
    json j = param_json(p);
    j["max_n"] = max_n;
    j["zsigmondy_set"] = zset;
    if (report_n1) j["n1_unit_numerator"] = (abs(p.a) == 1);
    out << j.dump() << "\n";
  } else {
    out << "Z(f,0) on [2," << max_n << "] for " << p.str() << ": {";
    for (std::size_t i = 0; i < zset.size(); ++i)
      out << (i ? "," : "") << zset[i];
    out << "}\n";
    if (report_n1)
      out << "n=1 excluded by definition; |a_1| = 1: "
          << (abs(p.a) == 1 ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_classify(const ParamFlags& pf, bool json_mode, std::ostream& out) {
  const Parameter p = resolve_param(pf);
  const Classification cl = classify(p);
  if (json_mode) {
    json j = param_json(p);
    j.update(classification_json(cl));
    out << j.dump() << "\n";
  } else {
    out << p.str() << " -> " << to_string(cl.tag);
    if (cl.m_of_c)
      out << "  M(c)=" << *cl.m_of_c;
    else
      out << "  M(c)=unbounded-by-theorem";
    switch (cl.prediction) {
      case PredictionKind::Exact: {
        out << "  Z=";
        out << "{";
        for (std::size_t i = 0; i < cl.predicted_set.size(); ++i)
          out << (i ? "," : "") << cl.predicted_set[i];
        out << "}";
        break;
      }
      case PredictionKind::Bounded:
        out << "  #Z<=" << cl.bound;
        break;
      case PredictionKind::None:
        break;
    }
    out << "  n2=" << (cl.n2_member ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink_stream = &out;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) throw Error("cannot open output path " + out_path);
    sink_stream = &file;
  }

  bool mismatch = false;
  std::string mismatch_evidence;
  const SweepSummary summary =
      run_sweep(spec, [&](const SweepRecord& rec) {
        ::nlohmann::json j = record_json(rec);
        (*sink_stream) << j.dump() << "\n";
        if (rec.verdict == Consistency::Mismatch) {
          mismatch = true;
          mismatch_evidence = rec.evidence;
        }
      });

  json s{{"summary",
          {{"records", summary.records},
           {"consistent", summary.consistent},
           {"bound_only", summary.bound_only},
           {"mismatches", summary.mismatches},
           {"s_checked", summary.s_checked},
           {"s_members", summary.s_members},
           {"s_inconclusive", summary.s_inconclusive},
           {"elapsed_ms", summary.elapsed_ms}}}};
  (*sink_stream) << s.dump() << "\n";

  if (mismatch) {
    err << error_json("mismatch", mismatch_evidence).dump() << "\n";
    return 2;
  }
  return 0;
}

int cmd_mahler(int d, bool json_mode, std::ostream& out) {
  const MahlerParams mp = standard_params(d);
  if (json_mode) {
    out << mahler_json(mp).dump() << "\n";
  } else {
    out << "d=" << mp.d << "  m=" << mp.m << "  eps=" << mp.eps
        << "  mu=" << mp.mu << "  kappa=" << mp.kappa
        << "  n1_min=" << mp.n1_min << "  gap=" << mp.gap
        << "  gap_canonical=" << mp.gap_canon << "  N=" << mp.N
        << "  size_bound=" << 2 * mp.m + 6 - 1 + mp.N << "\n";
    if (mp.eps_discrepancy)
      out << "note: 5d^2/(2eps) = 2500 with eps=0.004 vs 15000 behind the "
             "published gap<14; both gaps reported, conclusions unchanged\n";
    for (const AdmissibilityCheck& ch : admissibility_checks(mp))
      out << "  check " << ch.name << ": margin=" << ch.margin << " "
          << (ch.ok ? "ok" : "FAIL") << "\n";
  }
  return 0;
}

int cmd_mandel(const std::string& c_str, int max_period, double rho_opt,
               bool do_lower, int lower_n, bool do_blaschke, bool do_s_check,
               const std::string& ca_b, int ca_n, bool json_mode,
               std::ostream& out) {
  const Complex c = parse_complex(c_str);
  int exit_code = 0;

  if (!ca_b.empty()) {
    const InequalityReport rep = ca_inequality(BigInt(ca_b), ca_n);
    if (json_mode)
      out << json{{"ca_inequality", inequality_json(rep)}}.dump() << "\n";
    else
      out << "ca inequality b=" << ca_b << " n=" << ca_n << ": " << rep.lhs
          << (rep.holds ? " < " : " >= ") << rep.rhs << " -> "
          << (rep.holds ? "holds (n not excluded)" : "fails (n excluded)")
          << "\n";
  }

  for (int n = 1; n <= max_period; ++n) {
    const double rho = rho_opt > 0.0 ? rho_opt : rho_table(n);
    const RegionVerdict v = in_D(c, n, rho);
    if (v.status == RegionStatus::Inconclusive) exit_code = 3;
    if (json_mode) {
      json j{{"c", {c.real(), c.imag()}},
             {"n", n},
             {"rho", rho},
             {"in_D", v.status == RegionStatus::Inside
                          ? json(true)
                          : (v.status == RegionStatus::Outside
                                 ? json(false)
                                 : json(nullptr))},
             {"note", v.note}};
      if (v.witness)
        j["witness"] = {{"period", v.witness->period},
                        {"point", {v.witness->point.real(),
                                   v.witness->point.imag()}},
                        {"multiplier", {v.witness->multiplier.real(),
                                        v.witness->multiplier.imag()}},
                        {"exact_period", v.witness->exact_period}};
      out << j.dump() << "\n";
    } else {
      out << "n=" << n << "  rho=" << rho << "  " << to_string(v.status);
      if (v.witness)
        out << "  |multiplier|=" << std::abs(v.witness->multiplier);
      out << "\n";
    }
  }

  if (do_lower) {
    const double rho = rho_opt > 0.0 ? rho_opt : 0.2;
    const LowerBoundReport rep =
        lower_bound_check(c, lower_n > 0 ? lower_n : max_period, rho);
    if (rep.precondition_inconclusive) exit_code = 3;
    if (json_mode) {
      out << json{{"lower_bound_check",
                   {{"n", rep.n},
                    {"rho", rep.rho},
                    {"precondition_ok", rep.precondition_ok},
                    {"precondition_inconclusive",
                     rep.precondition_inconclusive},
                    {"lhs", rep.lhs},
                    {"rhs", rep.rhs},
                    {"holds", rep.holds}}}}
                 .dump()
          << "\n";
    } else {
      out << "lower bound at n=" << rep.n << ": |f^n(0)|=" << rep.lhs
          << " vs rho/2^(2n+2)=" << rep.rhs << " -> "
          << (rep.holds ? "holds" : "FAILS")
          << (rep.precondition_ok ? "" : " (precondition not verified)")
          << "\n";
    }
  }

  if (do_blaschke) {
    const double rho = rho_opt > 0.0 ? rho_opt : 0.2;
    const BlaschkeReport rep = blaschke_distortion_check(rho);
    if (json_mode) {
      out << json{{"blaschke",
                   {{"rho", rep.rho},
                    {"p", rep.p},
                    {"series_lower", rep.series_lower},
                    {"psi_ratio_upper", rep.psi_ratio_upper},
                    {"one_minus_p", rep.one_minus_p},
                    {"ratio4", rep.ratio4},
                    {"ratio8", rep.ratio8},
                    {"all_hold", rep.all_hold}}}}
                 .dump()
          << "\n";
    } else {
      out << "blaschke rho=" << rep.rho << " p=" << rep.p
          << " series>1/2:" << (rep.series_lower > 0.5)
          << " 1/(1-p)^2<2:" << (rep.psi_ratio_upper < 2.0)
          << " ratio4=" << rep.ratio4 << " ratio8=" << rep.ratio8 << "\n";
    }
  }

  if (do_s_check) {
    const SMembership sm = s_membership(c, max_period);
    if (!sm.in_S) exit_code = 3;
    if (json_mode) {
      json j{{"s_membership",
              {{"max_period", max_period},
               {"in_S", sm.in_S ? json(*sm.in_S) : json(nullptr)},
               {"escaped", sm.escaped}}}};
      if (sm.blocking_period)
        j["s_membership"]["blocking_period"] = *sm.blocking_period;
      if (sm.cycle)
        j["s_membership"]["cycle"] = {
            {"period", sm.cycle->period},
            {"multiplier",
             {sm.cycle->multiplier.real(), sm.cycle->multiplier.imag()}}};
      out << j.dump() << "\n";
    } else {
      out << "S-membership up to period " << max_period << ": "
          << (sm.in_S ? (*sm.in_S ? "in S" : "not in S") : "inconclusive")
          << "\n";
    }
  }
  return exit_code;
}

int cmd_msolve(const ParamFlags& pf, double eps, double tau, int n_probe,
               bool json_mode, std::ostream& out) {
  const Parameter p = resolve_param(pf);
  const int M = effective_M_solver(p, eps, tau, n_probe);
  if (json_mode) {
    json j = param_json(p);
    j["eps"] = eps;
    j["tau"] = tau;
    j["n_probe"] = n_probe;
    j["M"] = M;
    out << j.dump() << "\n";
  } else {
    out << "M(c) = " << M << " for " << p.str() << " (eps=" << eps
        << ", tau=" << tau << ", probed to n=" << n_probe << ")\n";
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"exact Zsigmondy-set computations for critical orbits of "
               "z^d + c"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_mode = false;
  app.add_flag("--json", json_mode, "machine-readable JSON output");

  ParamFlags pf_orbit, pf_zsig, pf_set, pf_classify, pf_msolve;
  int orbit_n = 4, zsig_n = 2, set_max_n = 10;
  bool set_report_n1 = false;

  auto* c_orbit = app.add_subcommand("orbit", "exact critical-orbit terms");
  add_param_flags(c_orbit, pf_orbit);
  c_orbit->add_option("--n", orbit_n, "compute a_1..a_n")
      ->check(CLI::PositiveNumber);

  auto* c_zsig =
      app.add_subcommand("zsig", "Zsigmondy membership of a single index");
  add_param_flags(c_zsig, pf_zsig);
  c_zsig->add_option("--n", zsig_n, "index to test (>= 2)")
      ->check(CLI::Range(2, 1 << 20));

  auto* c_set = app.add_subcommand("set", "Zsigmondy set on [2, max-n]");
  add_param_flags(c_set, pf_set);
  c_set->add_option("--max-n", set_max_n, "largest index")
      ->check(CLI::Range(2, 1 << 20));
  c_set->add_flag("--n1", set_report_n1, "also report the n = 1 convention");

  auto* c_classify =
      app.add_subcommand("classify", "theorem branch and predicted set");
  add_param_flags(c_classify, pf_classify);

  SweepSpec spec;
  std::string sweep_out;
  auto* c_sweep = app.add_subcommand("sweep", "grid cross-validation");
  c_sweep->add_option("--d-min", spec.d_min)->check(CLI::Range(2, 64));
  c_sweep->add_option("--d-max", spec.d_max)->check(CLI::Range(2, 64));
  c_sweep->add_option("--b-min", spec.b_min)->check(CLI::PositiveNumber);
  c_sweep->add_option("--b-max", spec.b_max)->check(CLI::PositiveNumber);
  c_sweep->add_option("--height", spec.height_max, "max(|a|, b) bound")
      ->check(CLI::PositiveNumber);
  c_sweep->add_option("--max-n", spec.n_max)->check(CLI::Range(2, 64));
  c_sweep->add_option("--jobs", spec.jobs)->check(CLI::Range(1, 256));
  c_sweep->add_flag("--classify-only", spec.classify_only);
  c_sweep->add_flag("--s-check", spec.mandel_s_check,
                    "verify S-membership structure for d=2 window");
  c_sweep->add_option("--out", sweep_out, "output path ('-' for stdout)");

  int mahler_d = 2;
  auto* c_mahler =
      app.add_subcommand("mahler", "approximation constants table");
  c_mahler->add_option("--d", mahler_d, "even degree")
      ->check(CLI::Range(2, 1000));

  std::string mandel_c = "0";
  int mandel_max_period = 8, mandel_lower_n = 0;
  double mandel_rho = 0.0;
  bool mandel_lower = false, mandel_blaschke = false, mandel_s = false;
  auto* c_mandel =
      app.add_subcommand("mandel", "attracting regions and bound checks");
  c_mandel->add_option("--c", mandel_c, "complex parameter (p/q, x, x+yi)");
  c_mandel->add_option("--max-period", mandel_max_period)
      ->check(CLI::Range(1, 12));
  c_mandel->add_option("--rho", mandel_rho,
                       "override the per-period rho table");
  c_mandel->add_flag("--lower-bound", mandel_lower,
                     "check |f^n(0)| >= rho/2^(2n+2)");
  c_mandel->add_option("--lower-bound-n", mandel_lower_n);
  c_mandel->add_flag("--blaschke", mandel_blaschke,
                     "distortion scalar checks");
  c_mandel->add_flag("--s-check", mandel_s, "S-membership via critical orbit");
  std::string mandel_ca_b;
  int mandel_ca_n = 3;
  c_mandel->add_option("--ca-b", mandel_ca_b,
                       "evaluate the closing inequality for this b");
  c_mandel->add_option("--ca-n", mandel_ca_n)->check(CLI::Range(3, 64));

  double msolve_eps = 1.0, msolve_tau = 0.1;
  int msolve_probe = 64;
  auto* c_msolve =
      app.add_subcommand("msolve", "effective M(c) from (eps, tau)");
  add_param_flags(c_msolve, pf_msolve);
  c_msolve->add_option("--eps", msolve_eps)->check(CLI::PositiveNumber);
  c_msolve->add_option("--tau", msolve_tau)->check(CLI::PositiveNumber);
  c_msolve->add_option("--n-probe", msolve_probe)->check(CLI::Range(8, 4096));

  std::vector<const char*> argv;
  argv.push_back("zsig");
  for (const std::string& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what()).dump() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(c_orbit))
      return cmd_orbit(pf_orbit, orbit_n, json_mode, out);
    if (app.got_subcommand(c_zsig))
      return cmd_zsig(pf_zsig, zsig_n, json_mode, out);
    if (app.got_subcommand(c_set))
      return cmd_set(pf_set, set_max_n, set_report_n1, json_mode, out);
    if (app.got_subcommand(c_classify))
      return cmd_classify(pf_classify, json_mode, out);
    if (app.got_subcommand(c_sweep)) return cmd_sweep(spec, sweep_out, out, err);
    if (app.got_subcommand(c_mahler)) return cmd_mahler(mahler_d, json_mode, out);
    if (app.got_subcommand(c_mandel))
      return cmd_mandel(mandel_c, mandel_max_period, mandel_rho, mandel_lower,
                        mandel_lower_n, mandel_blaschke, mandel_s, mandel_ca_b,
                        mandel_ca_n, json_mode, out);
    if (app.got_subcommand(c_msolve))
      return cmd_msolve(pf_msolve, msolve_eps, msolve_tau, msolve_probe,
                        json_mode, out);
    err << error_json("usage", "no subcommand").dump() << "\n";
    return 1;
  } catch (const MismatchError& e) {
    err << error_json("mismatch", e.what()).dump() << "\n";
    return 2;
  } catch (const InconclusiveError& e) {
    err << error_json("inconclusive", e.what()).dump() << "\n";
    return 3;
  } catch (const SizeGuardError& e) {
    err << error_json("size_guard", e.what()).dump() << "\n";
    return 1;
  } catch (const UsageError& e) {
    err << error_json("usage", e.what()).dump() << "\n";
    return 1;
  } catch (const Error& e) {
    err << error_json("error", e.what()).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << error_json("internal", e.what()).dump() << "\n";
    return 1;
  }
}

}  // namespace zsig
