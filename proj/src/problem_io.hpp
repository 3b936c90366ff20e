#pragma once

// Problem files: {"n": n, "f": {...}, "g": {...}, "h": {...}, "meta": {...}}
// where each function is {"A": n x n, "a": n, "a0": number} encoding
// x^T A x + 2 a^T x + a0.

#include <map>
#include <string>

#include "json.hpp"
#include "nonalter/quad_core.hpp"

namespace nonalter::io {

struct Problem {
  QuadForm f;
  QuadForm g;
  QuadForm h;
  std::map<std::string, std::string> meta;
  /// Non-fatal diagnostics such as symmetrization within tolerance.
  std::vector<std::string> warnings;
};

/// Throws Error(Parse | DimensionMismatch | Asymmetric) with a field path.
Problem parse_problem_json(const std::string& text);
Problem load_problem(const std::string& path);

nlohmann::ordered_json quad_to_json(const QuadForm& q);
nlohmann::ordered_json problem_to_json(const Problem& p);

/// Extended reals: finite values as numbers, infinities and NaN as strings.
nlohmann::ordered_json number(double v);
nlohmann::ordered_json vector_json(const Vector& v);
nlohmann::ordered_json matrix_json(const Matrix& m);

}  // namespace nonalter::io
