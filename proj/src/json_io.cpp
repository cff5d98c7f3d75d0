#include "gmf/json_io.hpp"

#include <cmath>

namespace gmf {

namespace {

// JSON has no inf; report the log-space fields alongside.
ojson finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

ojson to_json(const Point& p) {
  ojson arr = ojson::array();
  for (int i = 0; i < p.dim(); ++i) arr.push_back(p[i]);
  return arr;
}

ojson to_json(const ConeSpec& c) {
  ojson j;
  j["aperture"] = c.aperture;
  j["cutoff"] = c.cutoff;
  j["variant"] = c.variant == ConeVariant::Reduced ? "reduced" : "full";
  return j;
}

ojson to_json(const SemigroupEval& e) {
  ojson j;
  j["value"] = e.value;
  j["s"] = e.s;
  j["y"] = to_json(e.y);
  j["method"] = e.method == OuMethod::Substitution ? "substitution" : "kernel";
  j["est_error"] = e.est_error;
  return j;
}

ojson to_json(const MaximalResult& r, bool cone_search) {
  ojson j;
  j["value"] = r.value;
  if (cone_search) {
    ojson am;
    am["y"] = to_json(r.argmax_y);
    am["t"] = r.argmax_t;
    j["argmax"] = am;
  } else {
    ojson am;
    am["r"] = r.argmax_t;
    j["argmax"] = am;
  }
  ojson gd;
  gd["refine_deltas"] = r.refine_deltas;
  j["grid_diagnostics"] = gd;
  return j;
}

ojson to_json(const LemmaReport& r) {
  ojson j;
  j["lemma_id"] = lemma_name(r.lemma_id);
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["worst_margin"] = r.worst_margin;
  j["seed"] = r.seed;
  return j;
}

ojson to_json(const ProofConstants& pc) {
  ojson j;
  j["A"] = pc.aperture;
  j["a"] = pc.cutoff;
  j["d"] = pc.dim;
  j["alpha"] = pc.alpha;
  j["lemma2_factor"] = finite_or_null(pc.lemma2_factor);
  j["K"] = pc.K;
  ojson head = ojson::array();
  for (const auto& h : pc.head_terms) {
    ojson t;
    t["k"] = h.k;
    t["log_ck"] = h.log_ck;
    head.push_back(t);
  }
  j["head_terms"] = head;
  j["tail_sum"] = finite_or_null(pc.tail_sum);
  j["geometry_factor"] = finite_or_null(pc.geometry_factor);
  j["C_total"] = finite_or_null(pc.C_total);
  j["log_lemma2_factor"] = pc.log_lemma2_factor;
  j["log_tail_sum"] = pc.log_tail_sum;
  j["log_geometry_factor"] = pc.log_geometry_factor;
  j["log_C_total"] = pc.log_C_total;
  return j;
}

ojson to_json(const RatioReport& r) {
  ojson j;
  j["function_id"] = r.function_id;
  j["cone"] = to_json(r.cone);
  ojson pts = ojson::array();
  for (const auto& p : r.points) {
    ojson row;
    row["x"] = to_json(p.x);
    row["nt_value"] = p.nt_value;
    row["hl_value"] = p.hl_value;
    row["ratio"] = p.ratio;
    pts.push_back(row);
  }
  j["points"] = pts;
  j["max_ratio"] = r.max_ratio;
  j["proof_constant"] = finite_or_null(r.proof_constant);
  j["passed"] = r.passed;
  return j;
}

ojson to_json(const ScanResult& s) {
  ojson j;
  j["cone"] = to_json(s.cone);
  j["proof_constant"] = to_json(s.constants);
  j["max_ratio"] = s.max_ratio;
  j["passed"] = s.passed;
  ojson reps = ojson::array();
  for (const auto& r : s.reports) reps.push_back(to_json(r));
  j["reports"] = reps;
  return j;
}

}  // namespace gmf
