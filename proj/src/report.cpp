#include "report.hpp"

#include <cmath>
#include <sstream>

namespace nonalter::io {

namespace {

const char* psd_name(PsdVerdict v) {
  switch (v) {
    case PsdVerdict::PositiveDefinite: return "PositiveDefinite";
    case PsdVerdict::PsdSingular: return "PsdSingular";
    case PsdVerdict::Indefinite: return "Indefinite";
  }
  return "?";
}

Json optional_vector(const std::optional<Vector>& v) { return v ? vector_json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const InclusionVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  if (v.status == InclusionStatus::CertifiedPencil) j["lambda"] = number(v.lambda);
  if (v.witness) {
    j["witness"] = vector_json(*v.witness);
    j["violation"] = number(v.violation);
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json to_json(const AssumptionVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.verdict);
  j["reason"] = v.reason;
  if (v.witness) j["witness"] = vector_json(*v.witness);
  return j;
}

Json to_json(const ReducedProblem& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["description"] = r.description;
  Json pieces = Json::array();
  for (const ReducedPiece& p : r.pieces) {
    Json pj;
    pj["label"] = p.label;
    pj["origin"] = vector_json(p.origin);
    pj["basis"] = matrix_json(p.basis);
    pj["constraint"] = p.constraint ? quad_to_json(*p.constraint) : Json(nullptr);
    pieces.push_back(pj);
  }
  j["pieces"] = pieces;
  return j;
}

Json to_json(const ArrangementReport& r) {
  Json j;
  j["class"] = to_string(r.overall);
  j["in_non_alter"] = to_string(r.in_non_alter);
  Json as;
  for (std::size_t k = 0; k < r.assumptions.size(); ++k) as[std::to_string(k + 1)] = to_json(r.assumptions[k]);
  j["assumptions"] = as;
  static const char* kNames[4] = {"g0_in_h_nonpos", "g0_in_h_nonneg", "h0_in_g_nonpos", "h0_in_g_nonneg"};
  Json inc;
  for (std::size_t k = 0; k < 4; ++k) inc[kNames[k]] = to_json(r.inclusions[k]);
  j["inclusions"] = inc;
  j["reduction"] = r.reduction ? to_json(*r.reduction) : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const DualSolveResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["value"] = number(r.value);
  Json b;
  b["lambda1"] = number(r.best.lambda1);
  b["lambda2"] = number(r.best.lambda2);
  b["gamma"] = number(r.best.gamma);
  b["slack_min_eig"] = number(r.best.slack_min_eig);
  j["certificate"] = b;
  j["evaluations"] = r.evaluations;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.trace.empty()) {
    Json t = Json::array();
    for (const DualTraceEntry& e : r.trace) {
      t.push_back(Json{{"phase", e.phase}, {"lambda1", number(e.lambda1)}, {"lambda2", number(e.lambda2)},
                       {"value", number(e.value)}});
    }
    j["trace"] = t;
  }
  return j;
}

Json to_json(const OracleResult& r) {
  Json j;
  j["min_value"] = number(r.min_value);
  j["argmin"] = optional_vector(r.argmin);
  j["feasible_count"] = r.feasible_count;
  j["spacing"] = vector_json(r.spacing);
  return j;
}

Json to_json(const SolveReport& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["certified"] = r.certified;
  j["nu_star"] = number(r.nu_star);
  j["x_star"] = optional_vector(r.x_star);
  j["side"] = r.side ? Json(to_string(*r.side)) : Json(nullptr);
  if (r.residuals) {
    j["residuals"] = Json{{"objective_gap", number(r.residuals->objective_gap)},
                          {"g", number(r.residuals->g)},
                          {"h", number(r.residuals->h)}};
  } else {
    j["residuals"] = nullptr;
  }
  j["pathway"] = to_string(r.pathway);
  j["trace"] = r.trace;
  j["dual"] = r.dual ? to_json(*r.dual) : Json(nullptr);
  j["oracle"] = r.oracle ? to_json(*r.oracle) : Json(nullptr);
  j["classification"] = to_json(r.classification);
  return j;
}

Json to_json(const CanonicalReduction& r) {
  Json j;
  const CanonicalForm& c = r.form;
  j["form"] = to_string(c.tag);
  j["expression"] = c.describe();
  j["k"] = c.k;
  j["m"] = c.m;
  j["delta"] = c.delta;
  j["theta"] = c.theta;
  j["eta"] = c.eta;
  j["cprime"] = number(c.cprime);
  j["borderline"] = c.borderline;
  j["T"] = matrix_json(r.change.T);
  j["t"] = vector_json(r.change.t);
  j["s"] = number(r.change.s);
  if (c.affine_coeffs) j["affine_coeffs"] = vector_json(*c.affine_coeffs);
  return j;
}

Json to_json(const SeparationCertificate& c) {
  Json j;
  j["affine_pattern"] = vector_json(c.affine_pattern);
  j["restriction"] = Json{{"verdict", psd_name(c.restriction_nonneg.verdict)},
                          {"min_eig", number(c.restriction_nonneg.min_eig)}};
  j["witness_minus"] = vector_json(c.witness_minus);
  j["witness_plus"] = vector_json(c.witness_plus);
  return j;
}

Json to_json(const WitnessReport& w) {
  Json j;
  j["pattern"] = w.pattern;
  j["found"] = w.point.has_value();
  j["point"] = optional_vector(w.point);
  if (w.point) {
    j["g"] = number(w.g);
    j["h"] = number(w.h);
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

void render(const Json& j, const std::string& indent, std::ostringstream& os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const std::string key = j.is_object() ? it.key() : "-";
    if (v.is_object()) {
      os << indent << key << ":\n";
      render(v, indent + "  ", os);
    } else if (v.is_array() && !v.empty() && (v.front().is_object())) {
      os << indent << key << ":\n";
      render(v, indent + "  ", os);
    } else if (v.is_array() && !v.empty() && v.front().is_string()) {
      os << indent << key << ":\n";
      for (const Json& s : v) os << indent << "  - " << s.get<std::string>() << "\n";
    } else if (v.is_string()) {
      os << indent << key << ": " << v.get<std::string>() << "\n";
    } else {
      os << indent << key << ": " << v.dump() << "\n";
    }
  }
}

}  // namespace

std::string to_text(const Json& j) {
  std::ostringstream os;
  render(j, "", os);
  return os.str();
}

}  // namespace nonalter::io
