#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "smg/codes.hpp"
#include "smg/set_function.hpp"

namespace smg {

/// Facts about a point used by fixture rules.
struct PointFacts {
  PointIndex x = 0;
  int size = 0;
  std::vector<int> distances;  // distance multiset to the support
  int errors = 0;              // min over C of |S \ C|
  bool in_support = false;
  bool below_support = false;  // subset of some support point
  bool above_support = false;  // superset of some support point
};

struct FixtureRule {
  std::string size_label;  // e.g. "5", "<4", ">4"
  std::string key_label;   // e.g. "e=1", "5^5 9^10", "no errors"
  Rational value;
  std::optional<std::uint64_t> expected_count;  // tabulated number of points
  std::function<bool(const PointFacts&)> matches;
};

/// A tabulated gadget: rules over (|S|, e(S) or D(S)) plus optional
/// mirroring f(S) = f(~S) for |S| > mirror_above.
struct FixtureFunction {
  std::string id;
  std::string title;
  SupportFamily family;
  std::optional<int> mirror_above;
  bool claims_symmetric = false;
  bool claims_profile_monotone = false;
  Rational expected_average;  // the tabulated s_{1/2}
  int table_scale = 1;        // rule tables also list table_scale * f
  std::vector<FixtureRule> rules;
};

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ids with a tabulated fixture: "fsym4", "fsym5", "f3", "f4".
const std::vector<std::string>& fixture_ids();

/// Throws std::invalid_argument for an unknown id.
FixtureFunction load_fixture(const std::string& id);

struct FixtureExpansion {
  SetFunction function;
  std::vector<std::uint64_t> rule_hits;  // points matched per rule (before mirroring)
};

/// Evaluates every point against the rules. Throws FixtureError if a point
/// matches no rule or several rules.
FixtureExpansion expand_rules(const FixtureFunction& fixture);

SetFunction expand_fixture(const std::string& id);

struct FixtureAudit {
  std::string id;
  std::string expansion_error;  // non-empty if the rules failed to expand
  std::size_t violation_count = 0;
  std::vector<SubmodularityViolation> violations;  // first few
  bool symmetric = false;
  bool claims_symmetric = false;
  std::optional<bool> profile_monotone;  // set when claimed
  std::vector<PointIndex> support_failures;
  bool orbit_consistent = false;
  Rational average;
  Rational expected_average;
  std::vector<std::string> count_mismatches;

  bool passed() const;
};

/// Runs every exact check the fixture claims on its own expansion.
FixtureAudit audit_fixture(const std::string& id);

/// Same checks on an externally supplied table (e.g. a fixture file).
FixtureAudit audit_function(const std::string& id, const SetFunction& f);

/// Human-readable rule table, one row per rule.
std::string render_rules(const FixtureFunction& fixture);

}  // namespace smg
