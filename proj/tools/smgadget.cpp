#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "smg/dictatorship.hpp"
#include "smg/fixtures.hpp"
#include "smg/gadget_lp.hpp"
#include "smg/io.hpp"
#include "smg/soundness.hpp"

namespace {

using namespace smg;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr const char* kOutputDirEnv = "SMGADGET_OUTPUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::string out;

  std::string id;
  std::string origin = "sym";
  int l = 3;
  std::string p = "1/2";
  std::string eps = "1/100";
  std::string tol = "1/1000000000";
  bool full = false;
  bool cross_check = false;
  std::string file;
  std::string source = "auto";

  std::string kind = "dictator";
  int coordinate = 0;
  std::string value = "1/2";
  int n = 10;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;

  std::string what;
};

Rational parse_rational_option(const std::string& text, const char* name) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(std::string("--") + name + ": not a rational number: " + text);
  }
}

Rational open_unit(const std::string& text, const char* name) {
  Rational r = parse_rational_option(text, name);
  if (r.sign() <= 0 || r >= Rational(1)) throw UsageError(std::string("--") + name + " must lie in (0,1)");
  return r;
}

SupportOrigin parse_origin_option(const std::string& text) {
  try {
    SupportOrigin o = parse_origin(text);
    if (o == SupportOrigin::kCustom) throw std::invalid_argument(text);
    return o;
  } catch (const std::invalid_argument&) {
    throw UsageError("--origin must be sym or asym");
  }
}

void check_l(SupportOrigin origin, int l) {
  const int hi = origin == SupportOrigin::kSymmetric ? 5 : 4;
  if (l < 2 || l > hi) {
    throw UsageError("l must be in [2," + std::to_string(hi) + "] for origin " + to_string(origin));
  }
}

std::pair<SupportOrigin, int> parse_id(const std::string& id) {
  if (id.empty()) throw UsageError("a gadget id is required (e.g. fsym4, f3)");
  std::pair<SupportOrigin, int> out;
  try {
    out = parse_gadget_id(id);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  check_l(out.first, out.second);
  return out;
}

bool has_fixture(const std::string& id) {
  const auto& ids = fixture_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

GadgetBuildSpec spec_for(SupportOrigin origin, int l) {
  GadgetBuildSpec spec;
  spec.symmetric = origin == SupportOrigin::kSymmetric;
  spec.family = spec.symmetric ? build_symmetric_support(l) : build_asymmetric_support(l);
  return spec;
}

// Source "fixture" uses the tabulated function, "lp" solves the gadget LP,
// "auto" prefers the fixture when one exists.
SetFunction gadget_function(const Options& o) {
  if (!o.file.empty()) return load_set_function(o.file);
  const auto [origin, l] = parse_id(o.id);
  if (o.source != "lp" && has_fixture(o.id)) return expand_fixture(o.id);
  if (o.source == "fixture") throw UsageError("no fixture for " + o.id);
  std::cerr << "solving gadget LP for " << o.id << "...\n";
  GadgetProgram prog = build_min_submodular_lp(spec_for(origin, l));
  return lift_solution(prog.partition, solve_lp(prog.lp));
}

std::filesystem::path output_path(const Options& o, const std::string& default_name) {
  std::filesystem::path p = o.out.empty() ? std::filesystem::path(default_name) : std::filesystem::path(o.out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p;
}

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.format == "json") {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

int cmd_build(const Options& o) {
  const SupportOrigin origin = parse_origin_option(o.origin);
  check_l(origin, o.l);
  GadgetBuildSpec spec = spec_for(origin, o.l);
  spec.p = open_unit(o.p, "p");
  spec.reduction = o.full ? Reduction::kNone : Reduction::kOrbit;
  std::cerr << "building SM LP for " << gadget_id(origin, o.l) << " (k=" << spec.family.k << ")...\n";
  GadgetProgram prog = build_min_submodular_lp(spec);
  std::cerr << "solving " << prog.lp.num_vars() << " variables, " << prog.lp.constraints().size()
            << " constraints...\n";
  LPSolution sol = solve_lp(prog.lp);
  if (sol.status != LPStatus::kOptimal) {
    std::cerr << "LP is " << to_string(sol.status) << "\n";
    return kExitFailed;
  }
  SetFunction f = lift_solution(prog.partition, sol);
  std::cerr << "verifying the lifted function on the full hypercube...\n";
  LiftVerification v = verify_lift(f, spec, sol.objective);
  if (!o.out.empty()) save_set_function(output_path(o, o.out).string(), f);

  Json j{{"id", gadget_id(origin, o.l)},
         {"p", spec.p.str()},
         {"reduction", o.full ? "none" : "orbit"},
         {"variables", prog.lp.num_vars()},
         {"constraints", prog.lp.constraints().size()},
         {"solution", to_json(sol)},
         {"verification", to_json(v)}};
  std::ostringstream text;
  text << gadget_id(origin, o.l) << " SM_" << spec.p.str() << ": objective " << sol.objective.str() << " = "
       << sol.objective.decimal(9) << " (" << prog.lp.num_vars() << " variables, " << prog.lp.constraints().size()
       << " constraints, " << sol.pivots << " pivots)\n";
  text << "lifted verification: " << (v.passed() ? "pass" : "FAIL") << "\n";
  emit(o, j, text.str());
  return v.passed() ? kExitOk : kExitFailed;
}

int cmd_verify(const Options& o) {
  const auto [origin, l] = parse_id(o.id);
  if (has_fixture(o.id)) {
    FixtureAudit audit = o.file.empty() ? audit_fixture(o.id) : audit_function(o.id, load_set_function(o.file));
    emit(o, to_json(audit), render_audit(audit));
    return audit.passed() ? kExitOk : kExitFailed;
  }
  GadgetBuildSpec spec = spec_for(origin, l);
  SetFunction f = gadget_function(o);
  std::optional<Rational> expected;
  if (o.file.empty()) expected = gadget_objective(f, spec.p);
  LiftVerification v = verify_lift(f, spec, expected);
  std::ostringstream text;
  text << o.id << ": " << (v.passed() ? "pass" : "FAIL") << " (" << v.violation_count << " violations, "
       << v.support_failures.size() << " support failures), s_1/2 = " << v.objective.str() << "\n";
  for (const auto& viol : v.violations) {
    text << "  violation: S=" << viol.base << " i=" << viol.i + 1 << " j=" << viol.j + 1 << " slack "
         << viol.slack.str() << "\n";
  }
  emit(o, to_json(v), text.str());
  return v.passed() ? kExitOk : kExitFailed;
}

int cmd_soundness(const Options& o) {
  const Rational tol = parse_rational_option(o.tol, "tol");
  if (tol.sign() <= 0) throw UsageError("--tol must be positive");
  if (o.file.empty()) parse_id(o.id);
  SetFunction f = gadget_function(o);
  SoundnessCertificate cert = certify_soundness(f, tol);
  Json j{{"id", o.file.empty() ? o.id : o.file},
         {"polynomial", to_json(biased_expectation_poly(f))},
         {"certificate", to_json(cert)}};
  std::ostringstream text;
  text << "s_1/2 = " << cert.s_half.str() << "\n";
  text << "s in [" << cert.s_lower.decimal(9) << ", " << cert.s_upper.decimal(9) << "]\n";
  text << "argmax p in [" << cert.argmax_lo.decimal(9) << ", " << cert.argmax_hi.decimal(9) << "]"
       << (cert.via_lemma ? " (symmetric bias lemma)" : "") << "\n";
  emit(o, j, text.str());
  return kExitOk;
}

GadgetReportOptions report_options(const Options& o) {
  GadgetReportOptions opts;
  opts.tol = parse_rational_option(o.tol, "tol");
  if (opts.tol.sign() <= 0) throw UsageError("--tol must be positive");
  opts.cross_check_bias = o.cross_check;
  return opts;
}

int cmd_report(const Options& o) {
  const auto [origin, l] = parse_id(o.id);
  const GadgetReportOptions opts = report_options(o);
  std::cerr << "running the full pipeline for " << o.id << "...\n";
  GadgetReport r = gadget_report(origin, l, opts);
  emit(o, to_json(r), render_report(r));
  return r.passed() ? kExitOk : kExitFailed;
}

int cmd_tables(const Options& o) {
  const GadgetReportOptions opts = report_options(o);
  std::vector<GadgetReport> reports;
  const std::pair<SupportOrigin, int> rows[] = {{SupportOrigin::kSymmetric, 3}, {SupportOrigin::kSymmetric, 4},
                                                {SupportOrigin::kSymmetric, 5}, {SupportOrigin::kAsymmetric, 3},
                                                {SupportOrigin::kAsymmetric, 4}};
  bool ok = true;
  Json j = Json::array();
  for (const auto& [origin, l] : rows) {
    std::cerr << "running " << gadget_id(origin, l) << "...\n";
    reports.push_back(gadget_report(origin, l, opts));
    ok = ok && reports.back().passed();
    j.push_back(to_json(reports.back()));
  }
  emit(o, j, render_tables(reports));
  if (!ok) std::cerr << "at least one gadget failed verification\n";
  return ok ? kExitOk : kExitFailed;
}

TestFunction make_test_function(const Options& o) {
  if (o.n < 1 || o.n > kMaxTestArity) throw UsageError("--n must be in [1," + std::to_string(kMaxTestArity) + "]");
  if (o.kind == "dictator") {
    if (o.coordinate < 0 || o.coordinate >= o.n) throw UsageError("--coordinate must be in [0,n)");
    return TestFunction::dictator(o.n, o.coordinate);
  }
  if (o.kind == "constant") {
    Rational v = parse_rational_option(o.value, "value");
    if (v.sign() < 0 || v > Rational(1)) throw UsageError("--value must lie in [0,1]");
    return TestFunction::constant(o.n, v);
  }
  if (o.kind == "majority") return TestFunction::majority(o.n);
  throw UsageError("--kind must be dictator, constant or majority");
}

int cmd_dictator_sim(const Options& o) {
  if (o.trials == 0) throw UsageError("--trials must be at least 1");
  const auto [origin, l] = parse_id(o.id);
  const Rational eps = open_unit(o.eps, "eps");
  const TestFunction F = make_test_function(o);
  const std::uint64_t seed = o.seed ? *o.seed : std::random_device{}();
  std::cerr << "seed " << seed << "\n";

  const GadgetBuildSpec spec = spec_for(origin, l);
  const SetFunction f = gadget_function(o);
  const FiniteDistribution mu_prime = smooth_distribution(spec.family.mu, eps);
  const Rational c = completeness(f, spec.family.mu);
  const Rational exact = exact_dictator_acceptance(f, mu_prime);
  const SoundnessCertificate cert = certify_soundness(f);
  std::cerr << "running " << o.trials << " trials...\n";
  const TestRunResult run = run_test(f, mu_prime, F, o.trials, seed);

  Json j{{"id", o.id},
         {"test_function", F.name()},
         {"n", o.n},
         {"eps", eps.str()},
         {"seed", seed},
         {"completeness", rational_json(c)},
         {"exact_dictator_acceptance", Json{{"exact", exact.str()}, {"decimal", exact.decimal(9)}}},
         {"soundness_upper", Json{{"exact", cert.s_upper.str()}, {"decimal", cert.s_upper.decimal(9)}}},
         {"monte_carlo", to_json(run)},
         {"gap_vs_soundness", (run.estimate - cert.s_upper).decimal(9)},
         {"note", "quasirandomness parameters are not certified; constant and majority test functions illustrate the "
                  "soundness side empirically"}};
  std::ostringstream text;
  text << o.id << " with F = " << F.name() << ", n=" << o.n << ", eps=" << eps.str() << ", seed " << seed << "\n";
  text << "  completeness c                " << c.str() << "\n";
  text << "  exact dictator acceptance     " << exact.str() << " = " << exact.decimal(9) << "\n";
  text << "  certified soundness s <=      " << cert.s_upper.decimal(9) << "\n";
  text << "  Monte Carlo estimate          " << run.estimate.decimal(9) << " (std error " << run.std_error << ", "
       << run.trials << " trials)\n";
  text << "  estimate - s                  " << (run.estimate - cert.s_upper).decimal(9) << "\n";
  emit(o, j, text.str());
  return kExitOk;
}

int cmd_export(const Options& o) {
  const auto [origin, l] = parse_id(o.id);
  const GadgetBuildSpec spec = spec_for(origin, l);
  if (o.what == "function") {
    SetFunction f = gadget_function(o);
    const auto path = output_path(o, o.id + (o.format == "csv" ? ".csv" : ".json"));
    save_set_function(path.string(), f);
    std::cout << path.string() << "\n";
  } else if (o.what == "rules") {
    if (!has_fixture(o.id)) throw UsageError("no fixture for " + o.id);
    const auto path = output_path(o, o.id + ".rules");
    std::ofstream(path) << render_rules(load_fixture(o.id));
    std::cout << path.string() << "\n";
  } else if (o.what == "support") {
    const auto path = output_path(o, o.id + ".support.json");
    std::ofstream(path) << to_json(spec.family).dump(2) << "\n";
    std::cout << path.string() << "\n";
  } else if (o.what == "lp") {
    GadgetBuildSpec s = spec;
    s.p = open_unit(o.p, "p");
    s.reduction = o.full ? Reduction::kNone : Reduction::kOrbit;
    const auto path = output_path(o, o.id + ".lp");
    std::ofstream out(path);
    build_min_submodular_lp(s).lp.write_text(out);
    std::cout << path.string() << "\n";
  } else {
    throw UsageError("export target must be function, rules, support or lp");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact construction and certification of submodular hardness gadgets"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("-o,--out", o.out, std::string("Output path (relative paths go under $") + kOutputDirEnv + ")");

  auto add_id = [&](CLI::App* sub) { sub->add_option("id", o.id, "Gadget id such as fsym4 or f3")->required(); };
  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--file", o.file, "Read the function from a JSON or CSV file");
    sub->add_option("--source", o.source, "Function source")->check(CLI::IsMember({"auto", "fixture", "lp"}));
  };

  auto* build = app.add_subcommand("build", "Build and solve the minimum submodular upper bound LP");
  build->add_option("--origin", o.origin, "Support origin: sym or asym");
  build->add_option("-l,--l", o.l, "Hadamard parameter l");
  build->add_option("-p,--p", o.p, "Bias p as a rational");
  build->add_flag("--full", o.full, "Solve the unreduced LP");

  auto* verify = app.add_subcommand("verify", "Audit a gadget or fixture file exactly");
  add_id(verify);
  add_source(verify);

  auto* soundness = app.add_subcommand("soundness", "Certify max_p s_p(f)");
  soundness->add_option("id", o.id, "Gadget id");
  add_source(soundness);
  soundness->add_option("--tol", o.tol, "Root isolation width");

  auto* report = app.add_subcommand("report", "Full pipeline report for one gadget");
  add_id(report);
  report->add_option("--tol", o.tol, "Root isolation width");
  report->add_flag("--cross-check-bias", o.cross_check, "Re-solve SM_p at the certified argmax");

  auto* tables = app.add_subcommand("tables", "Print the c | s | ratio table for every gadget");
  tables->add_option("--tol", o.tol, "Root isolation width");
  tables->add_flag("--cross-check-bias", o.cross_check, "Re-solve SM_p at the certified argmax");

  auto* sim = app.add_subcommand("dictator-sim", "Monte Carlo run of the dictatorship test");
  add_id(sim);
  add_source(sim);
  sim->add_option("--kind", o.kind, "dictator, constant or majority");
  sim->add_option("--coordinate", o.coordinate, "Dictator coordinate (0-based)");
  sim->add_option("--value", o.value, "Constant test function value");
  sim->add_option("-n,--n", o.n, "Test function arity");
  sim->add_option("--trials", o.trials, "Number of trials");
  sim->add_option("--seed", o.seed, "Random seed (printed when chosen automatically)");
  sim->add_option("--eps", o.eps, "Smoothing parameter in (0,1)");

  auto* exp = app.add_subcommand("export", "Write a function, rule table, support or LP to disk");
  exp->add_option("what", o.what, "function, rules, support or lp")->required();
  add_id(exp);
  add_source(exp);
  exp->add_option("-p,--p", o.p, "Bias for the exported LP");
  exp->add_flag("--full", o.full, "Export the unreduced LP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (o.format == "csv" && !exp->parsed()) throw UsageError("--format csv is only valid for export");
    if (build->parsed()) return cmd_build(o);
    if (verify->parsed()) return cmd_verify(o);
    if (soundness->parsed()) return cmd_soundness(o);
    if (report->parsed()) return cmd_report(o);
    if (tables->parsed()) return cmd_tables(o);
    if (sim->parsed()) return cmd_dictator_sim(o);
    if (exp->parsed()) return cmd_export(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
