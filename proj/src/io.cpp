#include "smg/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace smg {

namespace {

Json with_decimal(const Rational& r) { return Json{{"exact", r.str()}, {"decimal", r.decimal(9)}}; }

Json violations_json(const std::vector<SubmodularityViolation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    out.push_back({{"base", v.base}, {"i", v.i + 1}, {"j", v.j + 1}, {"slack", v.slack.str()}});
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Json rational_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::logic_error& e) {
      throw FormatError("bad rational " + j.dump() + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw FormatError("expected a rational string, got " + j.dump());
}

Json to_json(const SetFunction& f) {
  Json values = Json::array();
  for (const auto& v : f.values()) values.push_back(v.str());
  return Json{{"k", f.arity()}, {"values", std::move(values)}};
}

SetFunction set_function_from_json(const Json& j) {
  try {
    const int k = j.at("k").get<int>();
    if (k < 0 || k > kMaxArity) throw FormatError("arity out of range: " + std::to_string(k));
    const Json& values = j.at("values");
    if (!values.is_array() || values.size() != (std::size_t{1} << k)) {
      throw FormatError("expected 2^" + std::to_string(k) + " values");
    }
    std::vector<Rational> vals;
    vals.reserve(values.size());
    for (const auto& v : values) vals.push_back(rational_from_json(v));
    return SetFunction(k, std::move(vals));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad set function JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad set function JSON: ") + e.what());
  }
}

void write_csv(std::ostream& os, const SetFunction& f) {
  os << "bitmask,value\n";
  for (PointIndex x = 0; x < f.size(); ++x) os << x << ',' << f(x).str() << '\n';
}

SetFunction read_csv(std::istream& is) {
  std::vector<std::pair<PointIndex, Rational>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "bitmask,value") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw FormatError("csv line " + std::to_string(line_no) + ": missing comma");
    try {
      rows.emplace_back(static_cast<PointIndex>(std::stoul(line.substr(0, comma))),
                        Rational::parse(line.substr(comma + 1)));
    } catch (const std::logic_error& e) {
      throw FormatError("csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  int k = 0;
  while ((std::size_t{1} << k) < rows.size()) ++k;
  if ((std::size_t{1} << k) != rows.size() || k > kMaxArity) throw FormatError("csv row count is not a power of two");
  std::vector<Rational> vals(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (auto& [x, v] : rows) {
    if (x >= rows.size() || seen[x]) throw FormatError("csv bitmask out of range or repeated: " + std::to_string(x));
    seen[x] = true;
    vals[x] = std::move(v);
  }
  try {
    return SetFunction(k, std::move(vals));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad csv set function: ") + e.what());
  }
}

SetFunction load_set_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  if (ends_with(path, ".csv")) return read_csv(in);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  return set_function_from_json(j);
}

void save_set_function(const std::string& path, const SetFunction& f) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  if (ends_with(path, ".csv")) {
    write_csv(out, f);
  } else {
    out << to_json(f).dump() << '\n';
  }
}

Json to_json(const SupportFamily& family) {
  Json mu = Json::array();
  for (const auto& [x, prob] : family.mu.atoms()) mu.push_back(Json::array({x, prob.str()}));
  return Json{{"k", family.k}, {"origin", to_string(family.origin)}, {"l", family.l},
              {"points", family.points}, {"mu", std::move(mu)}};
}

SupportFamily support_family_from_json(const Json& j) {
  try {
    SupportFamily fam;
    fam.k = j.at("k").get<int>();
    fam.origin = parse_origin(j.at("origin").get<std::string>());
    fam.l = j.value("l", 0);
    fam.points = j.at("points").get<std::vector<PointIndex>>();
    std::vector<FiniteDistribution::Atom> atoms;
    for (const auto& a : j.at("mu")) atoms.emplace_back(a.at(0).get<PointIndex>(), rational_from_json(a.at(1)));
    fam.mu = FiniteDistribution(fam.k, std::move(atoms));
    return fam;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad support family JSON: ") + e.what());
  }
}

Json to_json(const LPSolution& sol) {
  Json values = Json::array(), duals = Json::array();
  for (const auto& v : sol.values) values.push_back(v.str());
  for (const auto& d : sol.duals) duals.push_back(d.str());
  Json out{{"status", to_string(sol.status)}};
  out["objective"] = sol.status == LPStatus::kOptimal ? Json(sol.objective.str()) : Json(nullptr);
  out["values"] = std::move(values);
  out["duals"] = std::move(duals);
  out["pivots"] = sol.pivots;
  return out;
}

Json to_json(const Polynomial& poly) {
  Json out = Json::array();
  for (const auto& c : poly.coeffs()) out.push_back(c.str());
  return out;
}

Json to_json(const SoundnessCertificate& cert) {
  return Json{{"s_half", with_decimal(cert.s_half)},
              {"s_lower", with_decimal(cert.s_lower)},
              {"s_upper", with_decimal(cert.s_upper)},
              {"argmax_interval", Json::array({with_decimal(cert.argmax_lo), with_decimal(cert.argmax_hi)})},
              {"argmax_point", with_decimal(cert.argmax_point)},
              {"via_symmetric_bias_lemma", cert.via_lemma},
              {"argmax_certified", cert.argmax_certified},
              {"critical_intervals", cert.critical_intervals}};
}

Json to_json(const LiftVerification& v) {
  Json out{{"passed", v.passed()},
           {"submodular", v.submodular()},
           {"violation_count", v.violation_count},
           {"violations", violations_json(v.violations)},
           {"support_failures", v.support_failures},
           {"symmetry_required", v.symmetry_required},
           {"symmetric", v.symmetric},
           {"objective", with_decimal(v.objective)}};
  if (v.expected_objective) out["expected_objective"] = with_decimal(*v.expected_objective);
  return out;
}

Json to_json(const GadgetReport& r, bool include_function) {
  Json out{{"id", r.id},
           {"origin", to_string(r.origin)},
           {"l", r.l},
           {"k", r.k},
           {"lp", Json{{"variables", r.lp_variables}, {"constraints", r.lp_constraints}, {"pivots", r.pivots},
                       {"objective", with_decimal(r.lp_objective)}}},
           {"completeness", with_decimal(r.completeness)},
           {"completeness_floor", with_decimal(r.completeness_floor)},
           {"soundness", to_json(r.certificate)},
           {"ratio_upper", with_decimal(r.ratio)},
           {"verification", to_json(r.verification)}};
  if (r.origin == SupportOrigin::kSymmetric) out["symmetric_bias_hypothesis"] = r.symmetrybias_hypothesis;
  if (r.bias_cross_check) {
    const auto& x = *r.bias_cross_check;
    out["bias_cross_check"] = Json{{"p", x.p.str()},
                                   {"resolved_objective", with_decimal(x.resolved_objective)},
                                   {"gadget_objective_at_p", with_decimal(x.gadget_objective_at_p)},
                                   {"same_optimum", x.same_optimum()}};
  }
  out["passed"] = r.passed();
  if (include_function) out["function"] = to_json(r.function);
  return out;
}

Json to_json(const FixtureAudit& a) {
  Json out{{"id", a.id}, {"passed", a.passed()}};
  if (!a.expansion_error.empty()) {
    out["expansion_error"] = a.expansion_error;
    return out;
  }
  out["submodular"] = a.violation_count == 0;
  out["violation_count"] = a.violation_count;
  out["violations"] = violations_json(a.violations);
  out["symmetric"] = a.symmetric;
  out["claims_symmetric"] = a.claims_symmetric;
  if (a.profile_monotone) out["weight_profile_monotone"] = *a.profile_monotone;
  out["support_failures"] = a.support_failures;
  out["orbit_consistent"] = a.orbit_consistent;
  out["s_half"] = with_decimal(a.average);
  out["expected_s_half"] = with_decimal(a.expected_average);
  out["count_mismatches"] = a.count_mismatches;
  return out;
}

Json to_json(const TestRunResult& r) {
  return Json{{"trials", r.trials}, {"seed", r.seed}, {"estimate", with_decimal(r.estimate)}, {"std_error", r.std_error}};
}

std::string render_tables(const std::vector<GadgetReport>& reports) {
  std::ostringstream os;
  auto block = [&](SupportOrigin origin, const char* title) {
    bool any = false;
    for (const auto& r : reports) any = any || r.origin == origin;
    if (!any) return;
    os << title << "\n";
    os << std::left << std::setw(8) << "gadget" << std::setw(4) << "l" << std::setw(5) << "k" << std::setw(10) << "c"
       << "| " << std::setw(22) << "s" << "| " << std::setw(22) << "ratio" << "| status\n";
    for (const auto& r : reports) {
      if (r.origin != origin) continue;
      const auto& c = r.certificate;
      std::string s, ratio;
      if (c.s_lower == c.s_upper) {
        s = c.s_upper.str();
        ratio = r.ratio.str();
      } else {
        s = "< " + c.s_upper.decimal(6);
        ratio = "< " + r.ratio.decimal(6);
      }
      os << std::left << std::setw(8) << r.id << std::setw(4) << r.l << std::setw(5) << r.k << std::setw(10)
         << r.completeness.str() << "| " << std::setw(22) << s << "| " << std::setw(22) << ratio << "| "
         << (r.passed() ? "ok" : "FAILED") << "\n";
    }
    os << "\n";
  };
  block(SupportOrigin::kSymmetric, "Symmetric gadgets (c | s | ratio)");
  block(SupportOrigin::kAsymmetric, "Asymmetric gadgets (c | s | ratio)");
  return os.str();
}

std::string render_report(const GadgetReport& r) {
  std::ostringstream os;
  const auto& c = r.certificate;
  os << "gadget " << r.id << " (" << to_string(r.origin) << ", l=" << r.l << ", k=" << r.k << ")\n";
  os << "  LP: " << r.lp_variables << " variables, " << r.lp_constraints << " constraints, " << r.pivots
     << " pivots\n";
  os << "  s_1/2 = LP optimum   " << r.lp_objective.str() << " = " << r.lp_objective.decimal(9) << "\n";
  os << "  completeness c       " << r.completeness.str() << " (floor " << r.completeness_floor.str() << ")\n";
  if (c.s_lower == c.s_upper) {
    os << "  soundness s          " << c.s_upper.str() << " = " << c.s_upper.decimal(9) << "\n";
  } else {
    os << "  soundness s in       [" << c.s_lower.decimal(9) << ", " << c.s_upper.decimal(9) << "]\n";
  }
  os << "  argmax p in          [" << c.argmax_lo.decimal(9) << ", " << c.argmax_hi.decimal(9) << "]"
     << (c.via_lemma ? " (symmetric bias lemma)" : "") << "\n";
  os << "  ratio s/c <=         " << r.ratio.decimal(9) << "\n";
  os << "  lifted verification  " << (r.verification.passed() ? "pass" : "FAIL") << " ("
     << r.verification.violation_count << " violations, " << r.verification.support_failures.size()
     << " support failures)\n";
  if (r.bias_cross_check) {
    const auto& x = *r.bias_cross_check;
    os << "  SM at p=" << x.p.decimal(6) << "        " << x.resolved_objective.decimal(9) << " vs gadget "
       << x.gadget_objective_at_p.decimal(9) << (x.same_optimum() ? " (same)" : " (differs)") << "\n";
  }
  os << "  status               " << (r.passed() ? "ok" : "FAILED") << "\n";
  return os.str();
}

std::string render_audit(const FixtureAudit& a) {
  std::ostringstream os;
  os << "fixture " << a.id << ": " << (a.passed() ? "pass" : "FAIL") << "\n";
  if (!a.expansion_error.empty()) {
    os << "  expansion error: " << a.expansion_error << "\n";
    return os.str();
  }
  os << "  submodular: " << (a.violation_count == 0 ? "yes" : "no (" + std::to_string(a.violation_count) + " violations)")
     << "\n";
  for (const auto& v : a.violations) {
    os << "    violation: S=" << v.base << " i=" << v.i + 1 << " j=" << v.j + 1 << " slack " << v.slack.str() << "\n";
  }
  if (a.claims_symmetric) os << "  symmetric: " << (a.symmetric ? "yes" : "no") << "\n";
  if (a.profile_monotone) os << "  weight profile nondecreasing to k/2: " << (*a.profile_monotone ? "yes" : "no") << "\n";
  os << "  support lower bounds: "
     << (a.support_failures.empty() ? "ok" : std::to_string(a.support_failures.size()) + " failures") << "\n";
  os << "  constant on orbits: " << (a.orbit_consistent ? "yes" : "no") << "\n";
  os << "  s_1/2 = " << a.average.str() << " (expected " << a.expected_average.str() << ")\n";
  for (const auto& m : a.count_mismatches) os << "  count mismatch: " << m << "\n";
  return os.str();
}

}  // namespace smg
