#include "smg/fixtures.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "smg/soundness.hpp"

namespace smg {

namespace {

// Parses "5^2 7^6 9^6 11^1" into the sorted multiset.
std::vector<int> parse_multiset(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string term;
  while (in >> term) {
    auto caret = term.find('^');
    int d = std::stoi(term.substr(0, caret));
    int m = std::stoi(term.substr(caret + 1));
    out.insert(out.end(), static_cast<std::size_t>(m), d);
  }
  return out;
}

FixtureFunction make_fsym4() {
  FixtureFunction fx;
  fx.id = "fsym4";
  fx.title = "f^sym_4 on 8 elements, mirrored above |S| = 4";
  fx.family = build_symmetric_support(4);
  fx.mirror_above = 4;
  fx.claims_symmetric = true;
  fx.claims_profile_monotone = true;
  fx.expected_average = Rational(43, 64);
  for (int s = 0; s < 4; ++s) {
    fx.rules.push_back({std::to_string(s), "any", Rational(s, 4), std::nullopt,
                        [s](const PointFacts& p) { return p.size == s; }});
  }
  fx.rules.push_back({"4", "in support", Rational(1), 14,
                      [](const PointFacts& p) { return p.size == 4 && p.in_support; }});
  fx.rules.push_back({"4", "otherwise", Rational(3, 4), 56,
                      [](const PointFacts& p) { return p.size == 4 && !p.in_support; }});
  return fx;
}

FixtureFunction make_fsym5() {
  FixtureFunction fx;
  fx.id = "fsym5";
  fx.title = "f^sym_5 on 16 elements by |S| and errors e(S), mirrored above |S| = 8";
  fx.family = build_symmetric_support(5);
  fx.mirror_above = 8;
  fx.claims_symmetric = true;
  fx.claims_profile_monotone = true;
  fx.expected_average = Rational(709, 1024);
  fx.table_scale = 32;
  auto cell = [&](int s, int e, Rational v) {
    fx.rules.push_back({std::to_string(s), "e=" + std::to_string(e), std::move(v), std::nullopt,
                        [s, e](const PointFacts& p) { return p.size == s && p.errors == e; }});
  };
  for (int s = 0; s <= 8; ++s) cell(s, 0, Rational(s, 8));
  cell(5, 1, Rational(19, 32));
  cell(6, 1, Rational(22, 32));
  cell(7, 1, Rational(24, 32));
  cell(8, 1, Rational(26, 32));
  cell(6, 2, Rational(20, 32));
  cell(7, 2, Rational(23, 32));
  cell(8, 2, Rational(24, 32));
  return fx;
}

FixtureFunction make_f3() {
  FixtureFunction fx;
  fx.id = "f3";
  fx.title = "f_3 on 7 elements by |S| and whether S has errors";
  fx.family = build_asymmetric_support(3);
  fx.expected_average = Rational(637, 1024);
  auto no_errors = [](const PointFacts& p) { return p.below_support || p.above_support; };
  for (int s = 0; s <= 4; ++s) {
    fx.rules.push_back({std::to_string(s), "no errors", Rational(s, 4), std::nullopt,
                        [s, no_errors](const PointFacts& p) { return p.size == s && no_errors(p); }});
  }
  for (int s = 5; s <= 7; ++s) {
    fx.rules.push_back({std::to_string(s), "no errors", Rational(7 - s, 3), std::nullopt,
                        [s, no_errors](const PointFacts& p) { return p.size == s && no_errors(p); }});
  }
  fx.rules.push_back({"3", "errors", Rational(11, 24), std::nullopt,
                      [no_errors](const PointFacts& p) { return p.size == 3 && !no_errors(p); }});
  fx.rules.push_back({"4", "errors", Rational(17, 24), std::nullopt,
                      [no_errors](const PointFacts& p) { return p.size == 4 && !no_errors(p); }});
  return fx;
}

struct F4Row {
  int size;
  const char* distances;
  std::uint64_t count;
  int scaled_value;  // 448 * f_4(S)
};

// clang-format off
constexpr F4Row kF4Rows[] = {
    {0, "8^15", 1, 0},
    {1, "7^8 9^7", 15, 56},
    {2, "6^4 8^8 10^3", 105, 112},
    {3, "5^2 7^6 9^6 11^1", 420, 168},
    {3, "7^12 11^3", 35, 138},
    {4, "4^2 8^12 12^1", 105, 224},
    {4, "4^1 6^4 8^6 10^4", 840, 224},
    {4, "6^6 8^6 10^2 12^1", 420, 194},
    {5, "3^1 5^1 7^6 9^6 11^1", 840, 280},
    {5, "5^5 9^10", 168, 280},
    {5, "5^3 7^6 9^4 11^2", 1680, 250},
    {5, "5^2 7^8 9^4 13^1", 315, 220},
    {6, "2^1 6^3 8^8 10^3", 420, 336},
    {6, "4^2 6^3 8^6 10^4", 1680, 306},
    {6, "4^1 6^5 8^6 10^2 12^1", 2520, 276},
    {6, "6^9 10^6", 280, 276},
    {6, "6^6 8^8 14^1", 105, 216},
    {7, "1^1 7^7 9^7", 120, 392},
    {7, "3^1 5^2 7^5 9^6 11^1", 2520, 332},
    {7, "3^1 7^11 11^3", 420, 302},
    {7, "5^4 7^5 9^4 11^2", 2520, 302},
    {7, "5^3 7^7 9^4 13^1", 840, 272},
    {7, "7^14 15^1", 15, 197},
    {8, "0^1 8^14", 15, 448},
    {8, "2^1 6^4 8^7 10^3", 840, 358},
    {8, "4^3 8^11 12^1", 420, 328},
    {8, "4^2 6^4 8^5 10^4", 2520, 328},
    {8, "4^1 6^6 8^5 10^2 12^1", 2520, 298},
    {8, "6^7 8^7 14^1", 120, 253},
    {9, "1^1 7^8 9^6", 105, 384},
    {9, "3^1 5^2 7^6 9^5 11^1", 2520, 324},
    {9, "5^6 9^9", 280, 324},
    {9, "5^4 7^6 9^3 11^2", 1680, 294},
    {9, "5^3 7^8 9^3 13^1", 420, 279},
    {10, "2^1 6^4 8^8 10^2", 315, 320},
    {10, "4^2 6^4 8^6 10^3", 1680, 290},
    {10, "4^1 6^6 8^6 10^1 12^1", 840, 275},
    {10, "6^10 10^5", 168, 260},
    {11, "3^1 5^2 7^6 9^6", 420, 256},
    {11, "3^1 7^12 11^2", 105, 256},
    {11, "5^4 7^6 9^4 11^1", 840, 241},
    {12, "4^3 8^12", 35, 192},
    {12, "4^1 6^6 8^6 10^2", 420, 192},
    {13, "5^3 7^8 9^4", 105, 128},
    {14, "6^7 8^8", 15, 64},
    {15, "7^15", 1, 0},
};
// clang-format on

FixtureFunction make_f4() {
  FixtureFunction fx;
  fx.id = "f4";
  fx.title = "f_4 on 15 elements by |S| and distance multiset D(S); printed values are 448 * f_4";
  fx.table_scale = 448;
  fx.family = build_asymmetric_support(4);
  fx.expected_average = Rational(mpz_class(9519345), mpz_class(448) * (mpz_class(1) << 15));
  for (const auto& row : kF4Rows) {
    std::vector<int> d = parse_multiset(row.distances);
    int s = row.size;
    fx.rules.push_back({std::to_string(s), format_distance_multiset(d), Rational(row.scaled_value, 448), row.count,
                        [s, d](const PointFacts& p) { return p.size == s && p.distances == d; }});
  }
  return fx;
}

PointFacts facts_for(PointIndex x, const SupportFamily& fam) {
  PointFacts p;
  p.x = x;
  p.size = weight(x);
  p.distances = distance_multiset(x, fam);
  p.errors = error_count(x, fam);
  p.in_support = fam.contains(x);
  for (PointIndex c : fam.points) {
    if ((x & ~c) == 0) p.below_support = true;
    if ((c & ~x) == 0) p.above_support = true;
  }
  return p;
}

}  // namespace

const std::vector<std::string>& fixture_ids() {
  static const std::vector<std::string> ids{"fsym4", "fsym5", "f3", "f4"};
  return ids;
}

FixtureFunction load_fixture(const std::string& id) {
  if (id == "fsym4") return make_fsym4();
  if (id == "fsym5") return make_fsym5();
  if (id == "f3") return make_f3();
  if (id == "f4") return make_f4();
  throw std::invalid_argument("unknown fixture id: " + id);
}

FixtureExpansion expand_rules(const FixtureFunction& fixture) {
  const SupportFamily& fam = fixture.family;
  const int k = fam.k;
  FixtureExpansion out{SetFunction(k), std::vector<std::uint64_t>(fixture.rules.size(), 0)};
  std::vector<Rational> values(std::size_t{1} << k);
  std::vector<bool> mirrored(values.size(), false);
  for (PointIndex x = 0; x < values.size(); ++x) {
    if (fixture.mirror_above && weight(x) > *fixture.mirror_above) {
      mirrored[x] = true;
      continue;
    }
    const PointFacts facts = facts_for(x, fam);
    std::optional<std::size_t> hit;
    for (std::size_t r = 0; r < fixture.rules.size(); ++r) {
      if (!fixture.rules[r].matches(facts)) continue;
      if (hit) {
        throw FixtureError(fixture.id + ": point " + std::to_string(x) + " matches several rules");
      }
      hit = r;
    }
    if (!hit) {
      throw FixtureError(fixture.id + ": point " + std::to_string(x) + " (|S|=" + std::to_string(facts.size) +
                         ", e=" + std::to_string(facts.errors) + ", D=" + format_distance_multiset(facts.distances) +
                         ") is not covered by any rule");
    }
    values[x] = fixture.rules[*hit].value;
    ++out.rule_hits[*hit];
  }
  for (PointIndex x = 0; x < values.size(); ++x) {
    if (mirrored[x]) values[x] = values[complement(x, k)];
  }
  out.function = SetFunction(k, std::move(values));
  return out;
}

SetFunction expand_fixture(const std::string& id) { return expand_rules(load_fixture(id)).function; }

bool FixtureAudit::passed() const {
  return expansion_error.empty() && violation_count == 0 && (!claims_symmetric || symmetric) &&
         profile_monotone.value_or(true) && support_failures.empty() && orbit_consistent &&
         average == expected_average && count_mismatches.empty();
}

FixtureAudit audit_function(const std::string& id, const SetFunction& f) {
  const FixtureFunction fx = load_fixture(id);
  FixtureAudit audit;
  audit.id = id;
  if (f.arity() != fx.family.k) {
    audit.expansion_error = "arity " + std::to_string(f.arity()) + " does not match fixture arity " +
                            std::to_string(fx.family.k);
    return audit;
  }
  auto violations = check_submodular(f);
  audit.violation_count = violations.size();
  if (violations.size() > 16) violations.resize(16);
  audit.violations = std::move(violations);
  audit.symmetric = check_symmetric(f);
  audit.claims_symmetric = fx.claims_symmetric;
  if (fx.claims_profile_monotone) {
    audit.profile_monotone = audit.symmetric && check_symmetrybias_hypothesis(f);
  }
  for (PointIndex x : fx.family.points) {
    if (f(x) < Rational(1)) audit.support_failures.push_back(x);
  }
  const OrbitPartition orbits =
      orbit_partition(fx.family, fx.claims_symmetric ? OrbitMode::kComplementClosed : OrbitMode::kPlain);
  audit.orbit_consistent = true;
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f(x) != f(orbits.representative[orbits.orbit_of[x]])) {
      audit.orbit_consistent = false;
      break;
    }
  }
  audit.average = gadget_objective(f, Rational(1, 2));
  audit.expected_average = fx.expected_average;
  return audit;
}

FixtureAudit audit_fixture(const std::string& id) {
  const FixtureFunction fx = load_fixture(id);
  FixtureExpansion expansion;
  try {
    expansion = expand_rules(fx);
  } catch (const FixtureError& e) {
    FixtureAudit audit;
    audit.id = id;
    audit.expansion_error = e.what();
    audit.expected_average = fx.expected_average;
    return audit;
  }
  FixtureAudit audit = audit_function(id, expansion.function);
  for (std::size_t r = 0; r < fx.rules.size(); ++r) {
    const auto& rule = fx.rules[r];
    if (rule.expected_count && *rule.expected_count != expansion.rule_hits[r]) {
      audit.count_mismatches.push_back("|S|=" + rule.size_label + " " + rule.key_label + ": tabulated " +
                                       std::to_string(*rule.expected_count) + ", found " +
                                       std::to_string(expansion.rule_hits[r]));
    }
  }
  return audit;
}

std::string render_rules(const FixtureFunction& fixture) {
  std::ostringstream os;
  os << "# " << fixture.id << ": " << fixture.title << "\n";
  os << "# support: " << to_string(fixture.family.origin) << " l=" << fixture.family.l << ", k=" << fixture.family.k
     << ", " << fixture.family.points.size() << " points\n";
  if (fixture.mirror_above) os << "# |S| > " << *fixture.mirror_above << ": f(S) = f(complement of S)\n";
  os << "# average (s_1/2) = " << fixture.expected_average.str() << "\n";
  const bool scaled = fixture.table_scale != 1;
  os << std::left << std::setw(6) << "|S|" << std::setw(28) << "key" << std::setw(8) << "#S";
  if (scaled) os << std::setw(14) << "value" << fixture.table_scale << " * value";
  else os << "value";
  os << "\n";
  for (const auto& rule : fixture.rules) {
    os << std::left << std::setw(6) << rule.size_label << std::setw(28) << rule.key_label << std::setw(8)
       << (rule.expected_count ? std::to_string(*rule.expected_count) : std::string("-"));
    if (scaled) {
      os << std::setw(14) << rule.value.str() << (rule.value * Rational(fixture.table_scale)).numerator().get_str();
    } else {
      os << rule.value.str();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace smg
