#include "problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace nonalter::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::Parse, "field '" + field + "': " + msg);
}

double read_number(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail(field, "expected a number");
}

const json& require(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

QuadForm read_quad(const json& j, const std::string& name, Eigen::Index n, std::vector<std::string>& warnings) {
  if (!j.is_object()) fail(name, "expected an object with A, a, a0");
  const json& jA = require(j, "A", name);
  const json& ja = require(j, "a", name);
  const json& ja0 = require(j, "a0", name);
  if (!jA.is_array() || static_cast<Eigen::Index>(jA.size()) != n) {
    fail(name + ".A", "expected " + std::to_string(n) + " rows");
  }
  Matrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = jA[static_cast<std::size_t>(i)];
    const std::string rp = name + ".A[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      fail(rp, "expected " + std::to_string(n) + " entries");
    }
    for (Eigen::Index k = 0; k < n; ++k) A(i, k) = read_number(row[static_cast<std::size_t>(k)], rp);
  }
  if (!ja.is_array() || static_cast<Eigen::Index>(ja.size()) != n) {
    fail(name + ".a", "expected " + std::to_string(n) + " entries");
  }
  Vector a(n);
  for (Eigen::Index i = 0; i < n; ++i) a(i) = read_number(ja[static_cast<std::size_t>(i)], name + ".a");
  const double a0 = read_number(ja0, name + ".a0");
  if (!A.allFinite() || !a.allFinite() || !std::isfinite(a0)) fail(name, "entries must be finite");
  const double asym = n > 0 ? (A - A.transpose()).cwiseAbs().maxCoeff() : 0.0;
  const double amax = n > 0 ? A.cwiseAbs().maxCoeff() : 0.0;
  if (asym > 1e-8 * (1.0 + amax)) {
    std::ostringstream os;
    os << "field '" << name << ".A': asymmetry " << asym << " exceeds 1e-8 (1 + max|A|)";
    throw Error(ErrorCode::Asymmetric, os.str());
  }
  if (asym > 0.0) warnings.push_back(name + ".A symmetrized");
  return QuadForm(std::move(A), std::move(a), a0);
}

}  // namespace

Problem parse_problem_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail("<root>", "expected an object");
  const json& jn = require(j, "n", "");
  if (!jn.is_number_integer() || jn.get<long long>() < 1) fail("n", "expected a positive integer");
  const Eigen::Index n = jn.get<Eigen::Index>();
  Problem p;
  p.f = read_quad(require(j, "f", ""), "f", n, p.warnings);
  p.g = read_quad(require(j, "g", ""), "g", n, p.warnings);
  p.h = read_quad(require(j, "h", ""), "h", n, p.warnings);
  if (const auto it = j.find("meta"); it != j.end()) {
    if (!it->is_object()) fail("meta", "expected an object");
    for (const auto& [k, v] : it->items()) p.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem_json(ss.str());
}

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

ordered_json vector_json(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

ordered_json quad_to_json(const QuadForm& q) {
  ordered_json out;
  out["A"] = matrix_json(q.A());
  out["a"] = vector_json(q.a());
  out["a0"] = number(q.a0());
  return out;
}

ordered_json problem_to_json(const Problem& p) {
  ordered_json out;
  out["n"] = p.f.dim();
  out["f"] = quad_to_json(p.f);
  out["g"] = quad_to_json(p.g);
  out["h"] = quad_to_json(p.h);
  if (!p.meta.empty()) {
    ordered_json m = ordered_json::object();
    for (const auto& [k, v] : p.meta) m[k] = v;
    out["meta"] = m;
  }
  return out;
}

}  // namespace nonalter::io
