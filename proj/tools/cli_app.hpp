#pragma once

/// The blockpos command line: check, family, quartic, scan, witness.
/// Exit codes: 0 all requested properties hold, 1 some fail, 2 input error,
/// 3 closed-form quartic verdict disagrees with the general oracle.

#include "blockpos/blockpos.hpp"
#include "blockpos/json_io.hpp"
#include "digest.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace blockpos::cli {

enum ExitCode : int { kHold = 0, kFail = 1, kInputError = 2, kInconsistent = 3 };

class Stopwatch {
public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Report {
  std::string command;
  json input;  // canonical form, hashed into input_digest
  json verdicts = json::object();
  json timings = json::object();
  json extra = json::object();

  json to_json() const {
    json j = extra;
    j["schema"] = 1;
    j["command"] = command;
    j["input_digest"] = sha256_hex(input.dump());
    j["verdicts"] = verdicts;
    j["timings"] = timings;
    return j;
  }
};

/// "p/q", "x+yi", "x-yi", "yi", "i", "-i"; parts may be integers, fractions
/// or decimals.
inline ComplexRational parse_complex(std::string s) {
  std::erase_if(s, [](char ch) { return ch == ' '; });
  if (s.empty()) throw InputError("empty complex number");
  try {
    if (s.back() != 'i') return Rational::parse(s);
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        split = k;
        break;
      }
    const std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {re.empty() ? Rational(0) : Rational::parse(re), Rational::parse(im)};
  } catch (const std::logic_error& e) {
    throw InputError("cannot parse complex number: " + std::string(e.what()));
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline BipartiteOperator read_operator(const std::string& path) { return operator_from_json(read_json_file(path)); }

inline bool real_2x2(const BipartiteOperator& a) { return a.dim1() == 2 && a.dim2() == 2 && a.has_real_entries(); }

inline BipartiteOperator as_real(const BipartiteOperator& a) {
  return BipartiteOperator::from_real(a.dim1(), a.dim2(), a.real_entries());
}

inline json error_verdict(const std::string& msg) { return json{{"result", nullptr}, {"error", msg}}; }

inline int finish(const Report& r, int code, std::ostream& out) {
  out << r.to_json().dump(2) << '\n';
  return code;
}

struct CheckFlags {
  bool psd = false, bp_real = false, bp_complex = false, decompose = false, pt_symmetric = false;
  bool none() const { return !psd && !bp_real && !bp_complex && !decompose && !pt_symmetric; }
};

inline int cmd_check(const std::string& path, CheckFlags fl, const SearchConfig& cfg, std::ostream& out,
                     std::ostream& err) {
  BipartiteOperator a;
  try {
    a = read_operator(path);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (fl.none()) fl = {true, true, true, true, true};

  Report r;
  r.command = "check";
  r.input = json{{"operator", to_json(a)}};
  json checks = json::array();
  bool failed = false, bad_input = false;
  auto record = [&](const char* name, json v, const Stopwatch& sw) {
    if (v["result"].is_null()) bad_input = true;
    else if (!v["result"].get<bool>()) failed = true;
    r.verdicts[name] = std::move(v);
    r.timings[name] = sw.ms();
    checks.push_back(name);
  };

  if (fl.psd) {
    Stopwatch sw;
    record("psd", json{{"result", is_psd(a)}, {"principal_minor_sums", array_json(principal_minor_sums(a.entries()))}}, sw);
  }
  if (fl.pt_symmetric) {
    Stopwatch sw;
    record("pt_symmetric", json{{"result", is_pt_symmetric(a)}}, sw);
  }
  if (fl.bp_real) {
    Stopwatch sw;
    if (!real_2x2(a)) {
      record("bp_real", error_verdict("bp-real requires a real 2 (x) 2 operator"), sw);
    } else {
      const BipartiteOperator ra = as_real(a);
      const BpVerdict v = bp_real_2x2(ra);
      json j{{"result", v.holds}, {"trace", to_json(v.trace)}};
      if (v.counterexample) {
        j["counterexample"] = to_json(*v.counterexample);
        j["counterexample"]["value"] = to_json(product_expectation(ra, *v.counterexample));
      }
      record("bp_real", std::move(j), sw);
    }
  }
  if (fl.bp_complex) {
    Stopwatch sw;
    if (a.dim1() > 4 || a.dim2() > 4) {
      record("bp_complex_numeric", error_verdict("numeric search supports at most 4 (x) 4"), sw);
    } else {
      const SearchResult s = minimize_product_form(a, Field::Complex, cfg);
      json j{{"result", s.verdict == SearchVerdict::NoViolationFound}, {"search", to_json(s)}};
      if (s.verdict == SearchVerdict::ViolationFound) {
        const Rational exact = exact_value_at_argmin(a, s);
        j["rounded_argmin"] = to_json(round_argmin(s));
        j["rounded_value"] = to_json(exact);
        j["verified"] = exact.sign() < 0;
      }
      record("bp_complex_numeric", std::move(j), sw);
    }
  }
  if (fl.decompose) {
    Stopwatch sw;
    if (!real_2x2(a) || !is_pt_symmetric(a)) {
      record("decompose", error_verdict("decompose requires a real, PT-symmetric 2 (x) 2 operator"), sw);
    } else {
      const BipartiteOperator ra = as_real(a);
      const auto cert = decompose_pt_symmetric(ra);
      json j{{"result", cert.has_value()}};
      if (cert) {
        j["certificate"] = to_json(*cert);
        j["reconstructs"] = sos_reconstruct(*cert) == ra;
      }
      record("decompose", std::move(j), sw);
    }
  }
  r.input["checks"] = checks;
  if (fl.bp_complex) r.input["search"] = json{{"seed", cfg.seed}, {"restarts", cfg.restarts}};
  return finish(r, bad_input ? kInputError : failed ? kFail : kHold, out);
}

struct FamilyFlags {
  bool general = false, case_a = false, case_b = false, psd = false;
  bool none() const { return !general && !case_a && !case_b && !psd; }
};

inline int cmd_family(const std::string& as, const std::string& bs, const std::string& cs, FamilyFlags fl,
                      std::ostream& out, std::ostream& err) {
  FamilyParams p;
  try {
    p = {parse_complex(as), parse_complex(bs), parse_complex(cs)};
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (fl.none()) fl = {true, true, true, true};

  Report r;
  r.command = "family";
  r.input = json{{"a", to_json(p.a)}, {"b", to_json(p.b)}, {"c", to_json(p.c)}};
  r.extra["preconditions"] = json{{"case_a", family_case_a_applies(p)}, {"case_b", family_case_b_applies(p)}};
  json checks = json::array();
  bool failed = false;
  auto record = [&](const char* name, json v, const Stopwatch& sw) {
    if (v["result"].is_null() || !v["result"].get<bool>()) failed = true;
    r.verdicts[name] = std::move(v);
    r.timings[name] = sw.ms();
    checks.push_back(name);
  };

  if (fl.general) {
    Stopwatch sw;
    const auto four = four_inequality_test(p);
    record("general",
           json{{"result", bp_family_general(p)},
                {"four_inequality_test",
                 {{"i", four.i}, {"ii", four.ii}, {"iii", four.iii}, {"iv", four.iv}, {"all", four.all()}}}},
           sw);
  }
  if (fl.case_a) {
    Stopwatch sw;
    record("case_a",
           family_case_a_applies(p) ? json{{"result", bp_family_case_a(p)}} : error_verdict("precondition |a| = |c| fails"),
           sw);
  }
  if (fl.case_b) {
    Stopwatch sw;
    record("case_b",
           family_case_b_applies(p) ? json{{"result", bp_family_case_b(p)}}
                                    : error_verdict("precondition a = r c (r real) fails"),
           sw);
  }
  if (fl.psd) {
    Stopwatch sw;
    record("psd", json{{"result", psd_family(p)}}, sw);
  }
  r.input["checks"] = checks;
  return finish(r, failed ? kFail : kHold, out);
}

inline int cmd_quartic(const std::vector<std::string>& cs, std::ostream& out, std::ostream& err) {
  QuarticCoeffs q;
  try {
    if (cs.size() != 5) throw InputError("quartic expects five coefficients c4 c3 c2 c1 c0");
    std::vector<Rational> v;
    for (const auto& s : cs) v.push_back(Rational::parse(s));
    q = {v[0], v[1], v[2], v[3], v[4]};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  Report r;
  r.command = "quartic";
  r.input = json{{"coefficients", to_json(q)}};
  Stopwatch sw;
  const QuarticDecision d = quartic_decide(q);
  r.timings["closed_form"] = sw.ms();
  json cf = to_json(d);
  cf["result"] = d.nonnegative;
  r.verdicts["closed_form"] = cf;
  Stopwatch sw2;
  const bool oracle = poly_nonneg_on_reals(q.poly());
  r.timings["oracle"] = sw2.ms();
  r.verdicts["oracle"] = json{{"result", oracle}};
  r.extra["consistent"] = oracle == d.nonnegative;
  if (oracle != d.nonnegative) {
    err << "internal inconsistency: closed form and oracle disagree\n";
    return finish(r, kInconsistent, out);
  }
  return finish(r, d.nonnegative ? kHold : kFail, out);
}

inline ParamRange parse_range(const std::string& s) {
  try {
    if (auto colon = s.find(':'); colon != std::string::npos)
      return {Rational::parse(s.substr(0, colon)), Rational::parse(s.substr(colon + 1))};
    const Rational v = Rational::parse(s);
    return {v, v};
  } catch (const std::logic_error& e) {
    throw InputError("bad range '" + s + "': " + e.what());
  }
}

inline const char* region_class(const RegionPoint& p) { return p.psd ? "psd" : p.block_positive ? "bp_only" : "neither"; }

inline int cmd_scan(const std::string& ra, const std::string& rb, const std::string& rc, const std::string& step,
                    const std::string& out_path, std::ostream& out, std::ostream& err) {
  GridSpec g;
  std::vector<RegionPoint> pts;
  Stopwatch sw;
  try {
    g.a = parse_range(ra);
    g.b = parse_range(rb);
    g.c = parse_range(rc);
    try {
      g.step = Rational::parse(step);
    } catch (const std::logic_error& e) {
      throw InputError("bad step: " + std::string(e.what()));
    }
    pts = region_scan(g);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  const double scan_ms = sw.ms();
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (f) write_region_csv(f, pts);
    if (!f) {
      err << "error: cannot write " << out_path << '\n';
      return kInputError;
    }
  }

  Report r;
  r.command = "scan";
  auto range_json = [](const ParamRange& x) { return json{{"lo", to_json(x.lo)}, {"hi", to_json(x.hi)}}; };
  r.input = json{{"a", range_json(g.a)}, {"b", range_json(g.b)}, {"c", range_json(g.c)}, {"step", to_json(g.step)}};
  const RegionSummary s = summarize(pts);
  r.extra["rows"] = pts.size();
  r.extra["summary"] = to_json(s);
  r.verdicts["containment"] = json{{"result", s.violations == 0}};
  r.timings["scan"] = scan_ms;

  // class changes along the single varying axis, if there is exactly one
  const int varying = (g.a.lo != g.a.hi) + (g.b.lo != g.b.hi) + (g.c.lo != g.c.hi);
  if (varying == 1) {
    const char* axis = g.a.lo != g.a.hi ? "a" : g.b.lo != g.b.hi ? "b" : "c";
    auto coord = [&](const RegionPoint& p) -> const Rational& {
      return axis[0] == 'a' ? p.params.a.re : axis[0] == 'b' ? p.params.b.re : p.params.c.re;
    };
    json tr = json::array();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (std::string(region_class(pts[i])) != region_class(pts[i + 1]))
        tr.push_back(json{{"axis", axis},
                          {"from", region_class(pts[i])},
                          {"to", region_class(pts[i + 1])},
                          {"last", to_json(coord(pts[i]))},
                          {"next", to_json(coord(pts[i + 1]))}});
    r.extra["transitions"] = tr;
  }
  return finish(r, s.violations == 0 ? kHold : kFail, out);
}

inline int cmd_witness(const std::string& wpath, const std::string& rpath, const SearchConfig& cfg, std::ostream& out,
                       std::ostream& err) {
  BipartiteOperator w, rho;
  Rational value;
  Stopwatch sw;
  try {
    w = read_operator(wpath);
    rho = read_operator(rpath);
    if (w.dim1() != rho.dim1() || w.dim2() != rho.dim2()) throw InputError("W and rho dimensions differ");
    value = witness_expectation(w, rho);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  Report r;
  r.command = "witness";
  r.input = json{{"W", to_json(w)}, {"rho", to_json(rho)}};
  r.timings["value"] = sw.ms();

  Stopwatch sw2;
  json status;
  bool refuted = false;
  if (is_psd(w)) {
    status = json{{"block_positive", true}, {"method", "psd"}, {"exact", true}};
  } else if (real_2x2(w) && is_pt_symmetric(w) && decompose_pt_symmetric(as_real(w))) {
    status = json{{"block_positive", true}, {"method", "decomposition"}, {"exact", true}};
  } else if (w.dim1() <= 4 && w.dim2() <= 4) {
    const SearchResult s = minimize_product_form(w, Field::Complex, cfg);
    refuted = verify_violation(w, s);
    status = json{{"block_positive", !refuted}, {"method", "numeric_search"}, {"exact", refuted}, {"search", to_json(s)}};
  } else {
    status = json{{"block_positive", nullptr}, {"method", "none"}, {"exact", false}};
  }
  r.timings["w_status"] = sw2.ms();

  const bool detected = value.sign() < 0;
  r.verdicts["witness"] = json{{"result", detected && !refuted},
                               {"value", to_json(value)},
                               {"entangled_detected", detected},
                               {"w_status", status}};
  if (refuted)
    r.extra["warning"] = "W is not block positive; a negative value does not imply that rho is entangled";
  else if (!status["exact"].get<bool>())
    r.extra["warning"] = "block positivity of W is supported only by numeric search";
  return finish(r, detected && !refuted ? kHold : kFail, out);
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact and numeric block-positivity tools"};
  app.require_subcommand(1);

  SearchConfig cfg;
  auto add_search = [&cfg](CLI::App* s) {
    s->add_option("--seed", cfg.seed, "search seed");
    s->add_option("--restarts", cfg.restarts, "search restarts")->check(CLI::PositiveNumber);
  };

  std::string path, path2;
  CheckFlags cf;
  auto* check = app.add_subcommand("check", "decide properties of an operator JSON file");
  check->add_option("file", path, "operator JSON")->required();
  check->add_flag("--psd", cf.psd, "positive semidefinite");
  check->add_flag("--bp-real", cf.bp_real, "exact block positivity over R (real 2x2)");
  check->add_flag("--bp-complex-numeric", cf.bp_complex, "numeric search over C");
  check->add_flag("--decompose", cf.decompose, "SOS / decomposability certificate (PT-symmetric)");
  check->add_flag("--pt-symmetric", cf.pt_symmetric, "invariance under partial transpose");
  add_search(check);

  std::string fa, fb, fc;
  FamilyFlags ff;
  auto* family = app.add_subcommand("family", "closed forms for F(a,b,c)");
  family->add_option("a", fa)->required();
  family->add_option("b", fb)->required();
  family->add_option("c", fc)->required();
  family->add_flag("--general", ff.general, "general closed form");
  family->add_flag("--case-a", ff.case_a, "closed form for |a| = |c|");
  family->add_flag("--case-b", ff.case_b, "closed form for a = r c");
  family->add_flag("--psd", ff.psd, "positive semidefinite");

  std::vector<std::string> qc;
  auto* quartic = app.add_subcommand("quartic", "closed-form nonnegativity of c4 x^4 + ... + c0");
  quartic->add_option("coefficients", qc, "c4 c3 c2 c1 c0")->required()->expected(5);

  std::string sa = "-1:1", sb = "-1:1", sc = "-1:1", step = "1/50", csv;
  auto* scan = app.add_subcommand("scan", "region scan of the real (a,b,c) family");
  scan->add_option("--a", sa, "lo:hi or a fixed value");
  scan->add_option("--b", sb, "lo:hi or a fixed value");
  scan->add_option("--c", sc, "lo:hi or a fixed value");
  scan->add_option("--step", step, "grid step");
  scan->add_option("--out", csv, "CSV output path");

  auto* witness = app.add_subcommand("witness", "Tr(W rho) and entanglement detection");
  witness->add_option("W", path, "witness operator JSON")->required();
  witness->add_option("rho", path2, "state JSON")->required();
  add_search(witness);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kHold : kInputError;
  }
  if (*check) return cmd_check(path, cf, cfg, out, err);
  if (*family) return cmd_family(fa, fb, fc, ff, out, err);
  if (*quartic) return cmd_quartic(qc, out, err);
  if (*scan) return cmd_scan(sa, sb, sc, step, csv, out, err);
  return cmd_witness(path, path2, cfg, out, err);
}

}  // namespace blockpos::cli
