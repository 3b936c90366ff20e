#include "nonalter/nonalter.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "problem_io.hpp"
#include "report.hpp"

struct na_problem {
  nonalter::io::Problem p;
};

struct na_options {
  double tol = 1e-7;
  int grid_res = 401;
  double lo = -10.0;
  double hi = 10.0;
  double eps = 1e-6;
  std::uint64_t seed = 0;
  long long samples = 100000;
  bool trace = false;
};

struct na_report {
  std::string json;
  std::string text;
  int exit_code = 0;
  double value = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> warnings;
};

namespace {

using namespace nonalter;
using io::Json;

thread_local std::string g_last_error;

na_status code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return NA_ERR_PARSE;
    case ErrorCode::DimensionMismatch: return NA_ERR_DIMENSION;
    case ErrorCode::Asymmetric: return NA_ERR_ASYMMETRIC;
    case ErrorCode::NumericalFailure:
    case ErrorCode::NonConvergence: return NA_ERR_NUMERICAL;
    case ErrorCode::Unsupported: return NA_ERR_UNSUPPORTED;
    default: return NA_ERR_INVALID_ARGUMENT;
  }
}

template <class Fn>
na_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return NA_OK;
  } catch (const Error& e) {
    g_last_error = std::string(to_string(e.code())) + ": " + e.what();
    return code_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return NA_ERR_INTERNAL;
  }
}

na_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return NA_ERR_INVALID_ARGUMENT;
}

const na_options& opts(const na_options* o) {
  static const na_options kDefaults;
  return o ? *o : kDefaults;
}

Tolerances tolerances(const na_options& o) {
  Tolerances t;
  t.residual = o.tol;
  return t;
}

ClassifyOptions classify_options(const na_options& o) {
  ClassifyOptions c;
  c.tol = tolerances(o);
  c.search.lo = o.lo;
  c.search.hi = o.hi;
  c.search.seed = o.seed;
  return c;
}

GridSpec grid(const na_options& o, Eigen::Index n) { return GridSpec::cube(n, o.lo, o.hi, o.grid_res, o.eps); }

na_report* finish(const Json& body, const std::string& command, int exit_code, double value,
                  std::vector<std::string> warnings) {
  Json j;
  j["command"] = command;
  j["exit_code"] = exit_code;
  j["warnings"] = warnings;
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  auto* r = new na_report;
  r->json = io::dump(j);
  r->text = io::to_text(j);
  r->exit_code = exit_code;
  r->value = value;
  r->warnings = std::move(warnings);
  return r;
}

std::vector<std::string> problem_warnings(const na_problem* p) { return p->p.warnings; }

bool read_quad(int n, const double* A, const double* a, double a0, QuadForm& out) {
  if (!A || !a) return false;
  Matrix M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) M(i, k) = A[i * n + k];
  }
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = a[i];
  out = QuadForm(std::move(M), std::move(v), a0);
  return true;
}

}  // namespace

extern "C" {

const char* na_version(void) { return "0.1.0"; }

const char* na_last_error(void) { return g_last_error.c_str(); }

const char* na_status_name(na_status s) {
  switch (s) {
    case NA_OK: return "ok";
    case NA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NA_ERR_PARSE: return "parse error";
    case NA_ERR_DIMENSION: return "dimension mismatch";
    case NA_ERR_ASYMMETRIC: return "asymmetric matrix";
    case NA_ERR_NUMERICAL: return "numerical failure";
    case NA_ERR_UNSUPPORTED: return "unsupported";
    case NA_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

na_status na_problem_load(const char* path, na_problem** out) {
  if (!path || !out) return null_arg("path/out");
  return guarded([&] { *out = new na_problem{io::load_problem(path)}; });
}

na_status na_problem_parse(const char* json, na_problem** out) {
  if (!json || !out) return null_arg("json/out");
  return guarded([&] { *out = new na_problem{io::parse_problem_json(json)}; });
}

na_status na_problem_create(int n, const double* f_A, const double* f_a, double f_a0, const double* g_A,
                            const double* g_a, double g_a0, const double* h_A, const double* h_a, double h_a0,
                            na_problem** out) {
  if (!out) return null_arg("out");
  if (n < 1) {
    g_last_error = "dimension must be positive";
    return NA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    io::Problem p;
    if (!read_quad(n, f_A, f_a, f_a0, p.f) || !read_quad(n, g_A, g_a, g_a0, p.g) ||
        !read_quad(n, h_A, h_a, h_a0, p.h)) {
      throw Error(ErrorCode::InvalidArgument, "null coefficient array");
    }
    *out = new na_problem{std::move(p)};
  });
}

void na_problem_free(na_problem* p) { delete p; }

int na_problem_dim(const na_problem* p) { return p ? static_cast<int>(p->p.f.dim()) : 0; }

size_t na_problem_warning_count(const na_problem* p) { return p ? p->p.warnings.size() : 0; }

const char* na_problem_warning(const na_problem* p, size_t i) {
  return p && i < p->p.warnings.size() ? p->p.warnings[i].c_str() : nullptr;
}

na_status na_problem_to_json(const na_problem* p, char** out) {
  if (!p || !out) return null_arg("problem/out");
  return guarded([&] {
    const std::string s = io::dump(io::problem_to_json(p->p));
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

void na_string_free(char* s) { delete[] s; }

na_options* na_options_create(void) { return new na_options; }

void na_options_free(na_options* o) { delete o; }

na_status na_options_set_tol(na_options* o, double tol) {
  if (!o) return null_arg("options");
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    g_last_error = "tol must be positive and finite";
    return NA_ERR_INVALID_ARGUMENT;
  }
  o->tol = tol;
  return NA_OK;
}

na_status na_options_set_grid_res(na_options* o, int res) {
  if (!o) return null_arg("options");
  if (res < 3) {
    g_last_error = "grid resolution must be at least 3";
    return NA_ERR_INVALID_ARGUMENT;
  }
  o->grid_res = res;
  return NA_OK;
}

na_status na_options_set_bounds(na_options* o, double lo, double hi) {
  if (!o) return null_arg("options");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    g_last_error = "bounds must be finite with lo < hi";
    return NA_ERR_INVALID_ARGUMENT;
  }
  o->lo = lo;
  o->hi = hi;
  return NA_OK;
}

na_status na_options_set_eps(na_options* o, double eps) {
  if (!o) return null_arg("options");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    g_last_error = "eps must be nonnegative and finite";
    return NA_ERR_INVALID_ARGUMENT;
  }
  o->eps = eps;
  return NA_OK;
}

na_status na_options_set_seed(na_options* o, uint64_t seed) {
  if (!o) return null_arg("options");
  o->seed = seed;
  return NA_OK;
}

na_status na_options_set_samples(na_options* o, long long samples) {
  if (!o) return null_arg("options");
  if (samples < 0) {
    g_last_error = "samples must be nonnegative";
    return NA_ERR_INVALID_ARGUMENT;
  }
  o->samples = samples;
  return NA_OK;
}

na_status na_options_set_trace(na_options* o, int on) {
  if (!o) return null_arg("options");
  o->trace = on != 0;
  return NA_OK;
}

na_status na_classify(const na_problem* p, const na_options* o, na_report** out) {
  if (!p || !out) return null_arg("problem/out");
  return guarded([&] {
    const na_options& op = opts(o);
    const ArrangementReport r = classify_problem(p->p.g, p->p.h, classify_options(op));
    Json body;
    body["classification"] = io::to_json(r);
    const int code = r.overall == OverallClass::Undetermined ? 5 : 0;
    *out = finish(body, "classify", code, std::numeric_limits<double>::quiet_NaN(), problem_warnings(p));
  });
}

na_status na_solve(const na_problem* p, const na_options* o, na_report** out) {
  if (!p || !out) return null_arg("problem/out");
  return guarded([&] {
    const na_options& op = opts(o);
    SolveOptions so;
    so.tol = tolerances(op);
    so.classify = classify_options(op);
    so.dual.tol = so.tol;
    so.dual.record_trace = op.trace;
    const Eigen::Index n = p->p.f.dim();
    if (n <= kOracleMaxDim) so.oracle_grid = grid(op, n);
    const SolveReport r = solve_nonalter(p->p.f, p->p.g, p->p.h, so);
    int code = 0;
    if (r.status == SolveStatus::Infeasible) code = 3;
    if (r.status == SolveStatus::Unbounded) code = 4;
    if (r.status == SolveStatus::Undetermined) code = 5;
    std::vector<std::string> warnings = problem_warnings(p);
    if (!r.certified && r.status == SolveStatus::Estimated) {
      warnings.push_back("value is a grid-oracle estimate and carries no certificate");
    }
    *out = finish(Json{{"solve", io::to_json(r)}}, "solve", code, r.nu_star, std::move(warnings));
  });
}

na_status na_oracle(const na_problem* p, const na_options* o, na_report** out) {
  if (!p || !out) return null_arg("problem/out");
  return guarded([&] {
    const na_options& op = opts(o);
    const GridSpec spec = grid(op, p->p.f.dim());
    const OracleResult r = grid_min(p->p.f, p->p.g, p->p.h, spec);
    std::vector<std::string> warnings = problem_warnings(p);
    if (r.feasible_count == 0) {
      warnings.push_back(op.eps == 1e-6
                             ? "no feasible grid point at the default eps; raise --eps for thin feasible sets"
                             : "no feasible grid point");
    }
    Json body;
    body["oracle"] = io::to_json(r);
    body["spacing_bound"] = io::number(spacing_bound(p->p.f, r));
    body["grid"] = Json{{"lo", op.lo}, {"hi", op.hi}, {"resolution", op.grid_res}, {"eps", op.eps}};
    *out = finish(body, "oracle", r.feasible_count == 0 ? 3 : 0, r.min_value, std::move(warnings));
  });
}

na_status na_reduce(const na_problem* p, const na_options* o, na_report** out) {
  if (!p || !out) return null_arg("problem/out");
  return guarded([&] {
    const na_options& op = opts(o);
    Json body;
    for (const auto& [name, q, other] :
         {std::tuple{"g", &p->p.g, &p->p.h}, std::tuple{"h", &p->p.h, &p->p.g}}) {
      if (q->is_constant()) {
        body[std::string("canonical_") + name] = nullptr;
        continue;
      }
      const CanonicalReduction cr = canonical_reduce(*q);
      Json cj = io::to_json(cr);
      cj["companion"] = io::quad_to_json(companion_in_basis(*other, cr.change));
      body[std::string("canonical_") + name] = cj;
    }
    const ArrangementReport r = classify_problem(p->p.g, p->p.h, classify_options(op));
    body["class"] = to_string(r.overall);
    body["reduction"] = r.reduction ? io::to_json(*r.reduction) : Json(nullptr);
    *out = finish(body, "reduce", 0, std::numeric_limits<double>::quiet_NaN(), problem_warnings(p));
  });
}

na_status na_check(const na_problem* p, const na_options* o, int assumption, na_report** out) {
  if (!p || !out) return null_arg("problem/out");
  if (assumption < 1 || assumption > 5) {
    g_last_error = "assumption must be between 1 and 5";
    return NA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const ClassifyOptions co = classify_options(opts(o));
    const QuadForm& g = p->p.g;
    const QuadForm& h = p->p.h;
    Json body;
    body["assumption"] = assumption;
    AssumptionVerdict v;
    if (assumption == 2) {
      const Assumption2Result a2 = check_assumption2(g, h, co);
      v = a2.verdict;
      static const char* kNames[4] = {"g0_in_h_nonpos", "g0_in_h_nonneg", "h0_in_g_nonpos", "h0_in_g_nonneg"};
      Json inc;
      for (std::size_t k = 0; k < 4; ++k) inc[kNames[k]] = io::to_json(a2.inclusions[k]);
      body["inclusions"] = inc;
    } else if (assumption == 1) {
      v = check_assumption1(g, h, co);
    } else if (assumption == 3) {
      v = check_assumption3(g, h, co);
    } else if (assumption == 4) {
      v = check_assumption4(g, h, co);
    } else {
      v = check_assumption5(g, h, co);
    }
    body["result"] = io::to_json(v);
    if (assumption == 2) {
      if (const auto sep = detect_separation_by_hyperplane(g, h)) {
        body["hyperplane_separation"] = io::to_json(*sep);
      }
    }
    *out = finish(body, "check", v.verdict == Tri::Undetermined ? 5 : 0, std::numeric_limits<double>::quiet_NaN(),
                  problem_warnings(p));
  });
}

na_status na_witness(const na_problem* p, const na_options* o, na_sign g_sign, na_sign h_sign, na_report** out) {
  if (!p || !out) return null_arg("problem/out");
  return guarded([&] {
    const na_options& op = opts(o);
    SignPattern pat;
    pat.g = g_sign == NA_SIGN_STRICT ? SignKind::Strict : SignKind::Weak;
    pat.h = h_sign == NA_SIGN_STRICT ? SignKind::Strict : SignKind::Weak;
    WitnessOptions wo;
    wo.samples = op.samples;
    wo.seed = op.seed;
    wo.margin = op.eps;
    io::WitnessReport w;
    w.pattern = std::string("g") + (g_sign == NA_SIGN_STRICT ? ">" : ">=") + "0, h" +
                (h_sign == NA_SIGN_STRICT ? ">" : ">=") + "0";
    w.point = find_witness(p->p.g, p->p.h, pat, grid(op, p->p.f.dim()), wo);
    if (w.point) {
      w.g = p->p.g(*w.point);
      w.h = p->p.h(*w.point);
    }
    *out = finish(Json{{"witness", io::to_json(w)}}, "witness", 0, std::numeric_limits<double>::quiet_NaN(),
                  problem_warnings(p));
  });
}

const char* na_report_json(const na_report* r) { return r ? r->json.c_str() : nullptr; }

const char* na_report_text(const na_report* r) { return r ? r->text.c_str() : nullptr; }

int na_report_exit_code(const na_report* r) { return r ? r->exit_code : 1; }

double na_report_value(const na_report* r) { return r ? r->value : std::numeric_limits<double>::quiet_NaN(); }

size_t na_report_warning_count(const na_report* r) { return r ? r->warnings.size() : 0; }

const char* na_report_warning(const na_report* r, size_t i) {
  return r && i < r->warnings.size() ? r->warnings[i].c_str() : nullptr;
}

void na_report_free(na_report* r) { delete r; }

}  // extern "C"
