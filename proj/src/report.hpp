#pragma once

// JSON and text renderings of every command's result.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nonalter/canonical.hpp"
#include "nonalter/classify.hpp"
#include "nonalter/oracle.hpp"
#include "nonalter/solve.hpp"
#include "problem_io.hpp"

namespace nonalter::io {

using Json = nlohmann::ordered_json;

Json to_json(const InclusionVerdict& v);
Json to_json(const AssumptionVerdict& v);
Json to_json(const ReducedProblem& r);
Json to_json(const ArrangementReport& r);
Json to_json(const DualSolveResult& r);
Json to_json(const SolveReport& r);
Json to_json(const OracleResult& r);
Json to_json(const CanonicalReduction& r);
Json to_json(const SeparationCertificate& c);

struct WitnessReport {
  std::string pattern;
  std::optional<Vector> point;
  double g = 0.0;
  double h = 0.0;
};

Json to_json(const WitnessReport& w);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

/// Indented key/value rendering of a JSON report.
std::string to_text(const Json& j);

}  // namespace nonalter::io
