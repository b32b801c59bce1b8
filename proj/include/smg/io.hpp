#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smg/codes.hpp"
#include "smg/dictatorship.hpp"
#include "smg/fixtures.hpp"
#include "smg/linear_program.hpp"
#include "smg/polynomial.hpp"
#include "smg/set_function.hpp"
#include "smg/soundness.hpp"

namespace smg {

using Json = nlohmann::ordered_json;

/// Malformed input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);

/// {"k": k, "values": ["n/d", ...]} in PointIndex order.
Json to_json(const SetFunction& f);
SetFunction set_function_from_json(const Json& j);

/// One "bitmask,n/d" line per point, PointIndex order, with a header line.
void write_csv(std::ostream& os, const SetFunction& f);
SetFunction read_csv(std::istream& is);

/// Reads JSON or CSV, chosen by the ".csv" suffix.
SetFunction load_set_function(const std::string& path);
void save_set_function(const std::string& path, const SetFunction& f);

Json to_json(const SupportFamily& family);
SupportFamily support_family_from_json(const Json& j);

Json to_json(const LPSolution& sol);
Json to_json(const Polynomial& poly);
Json to_json(const SoundnessCertificate& cert);
Json to_json(const LiftVerification& v);
/// Rationals as strings, each paired with a 9-digit decimal rendering.
Json to_json(const GadgetReport& report, bool include_function = false);
Json to_json(const FixtureAudit& audit);
Json to_json(const TestRunResult& result);

/// One "c | s | ratio" row per gadget, grouped by support origin.
std::string render_tables(const std::vector<GadgetReport>& reports);
std::string render_report(const GadgetReport& report);
std::string render_audit(const FixtureAudit& audit);

}  // namespace smg
