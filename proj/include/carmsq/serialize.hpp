#pragma once

#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "carmsq/agp.hpp"
#include "carmsq/arith.hpp"
#include "carmsq/carmichael.hpp"
#include "carmsq/sieve_numerics.hpp"
#include "carmsq/two_squares.hpp"

namespace carmsq {

// Insertion-ordered so emitted keys follow the documented layout and runs
// are byte-reproducible.
using Json = nlohmann::ordered_json;

// Integers are emitted as JSON numbers while they fit in 64 bits and as
// decimal strings beyond that.
inline Json json_int(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<u64>::max())
    return v.convert_to<u64>();
  return v.str();
}

inline Json to_json(const TwoSquaresWitness& w) {
  return Json::array({json_int(w.a), json_int(w.b)});
}

inline Json to_json(const CarmichaelRecord& rec) {
  Json j;
  j["n"] = json_int(rec.n);
  Json factors = Json::array();
  Json witnesses = Json::array();
  for (const auto& pc : rec.factors) {
    factors.push_back(json_int(pc.p));
    witnesses.push_back(pc.witness ? to_json(*pc.witness) : Json(nullptr));
  }
  j["factors"] = std::move(factors);
  j["special"] = rec.all_special;
  j["strict"] = rec.all_strict;
  j["witnesses"] = std::move(witnesses);
  return j;
}

inline std::string record_csv_header() { return "n,factors,special,strict,witnesses"; }

inline std::string to_csv(const CarmichaelRecord& rec) {
  std::ostringstream os;
  os << rec.n.str() << ",";
  for (std::size_t i = 0; i < rec.factors.size(); ++i)
    os << (i ? ";" : "") << rec.factors[i].p.str();
  os << "," << (rec.all_special ? "true" : "false") << ","
     << (rec.all_strict ? "true" : "false") << ",";
  for (std::size_t i = 0; i < rec.factors.size(); ++i) {
    os << (i ? ";" : "");
    const auto& w = rec.factors[i].witness;
    if (w)
      os << w->a.str() << ":" << w->b.str();
    else
      os << "-";
  }
  return os.str();
}

inline Json to_json(const EulerProductValue& v, const std::string& name) {
  Json j;
  j["name"] = name;
  j["cutoff"] = v.cutoff;
  j["value"] = static_cast<double>(v.value);
  j["tail_bound"] = static_cast<double>(v.tail_bound);
  return j;
}

inline Json to_json(const EndgameReport& r) {
  Json j;
  j["delta"] = std::to_string(r.delta_num) + "/" + std::to_string(r.delta_den);
  j["s"] = std::to_string(r.s_num) + "/" + std::to_string(r.s_den);
  j["s_num"] = r.s_num;
  j["s_den"] = r.s_den;
  j["f_s"] = static_cast<double>(r.f_s);
  j["t_coeff"] = static_cast<double>(r.t_coeff);
  j["coeff_lhs"] = static_cast<double>(r.coeff_lhs);
  j["coeff_rhs"] = static_cast<double>(r.coeff_rhs);
  j["coeff_ok"] = r.coeff_ok;
  j["margin_ok"] = r.margin_ok;
  return j;
}

inline Json to_json(const DensityReport& r) {
  Json j;
  j["x"] = r.x;
  j["E"] = static_cast<double>(r.E);
  j["y"] = r.y;
  j["pi_xy"] = r.smooth_count;
  j["pi"] = r.prime_total;
  j["ratio"] = static_cast<double>(r.ratio);
  return j;
}

inline Json to_json(const HypothesisCheck& h) {
  Json j;
  j["name"] = h.name;
  j["pass"] = h.pass;
  j["lhs"] = static_cast<double>(h.lhs);
  j["rhs"] = static_cast<double>(h.rhs);
  j["margin"] = static_cast<double>(h.margin);
  j["note"] = h.note;
  return j;
}

inline Json to_json(const AgpRun& run) {
  Json j;
  Json cfg;
  cfg["E"] = static_cast<double>(run.config.E);
  cfg["B_param"] = static_cast<double>(run.config.B_param);
  cfg["epsilon"] = static_cast<double>(run.config.epsilon);
  cfg["y"] = run.config.y;
  cfg["A"] = static_cast<double>(run.config.A_const);
  cfg["A_prime"] = static_cast<double>(run.config.A_prime_const);
  cfg["seed"] = run.config.seed;
  j["config"] = std::move(cfg);

  Json derived;
  derived["theta"] = static_cast<double>(run.config.theta());
  derived["delta"] = static_cast<double>(run.config.delta());
  derived["log_x"] = static_cast<double>(run.config.log_x());
  derived["loglog_x"] = static_cast<double>(run.config.loglog_x());
  j["derived"] = std::move(derived);

  j["Q"] = run.Q;
  Json L;
  L["value"] = json_int(run.L.value);
  Json lf = Json::array();
  for (const auto& f : run.L.factors) lf.push_back(json_int(f.prime));
  L["factors"] = std::move(lf);
  j["L"] = std::move(L);

  Json hyp = Json::array();
  for (const auto& h : run.hypotheses) hyp.push_back(to_json(h));
  j["hypotheses"] = std::move(hyp);

  j["k_found"] = run.k_found;
  if (run.k_found) j["k"] = run.k;
  Json ps = Json::array();
  for (const auto& [d, p] : run.prime_set) {
    Json e;
    e["d"] = d;
    e["p"] = p;
    ps.push_back(std::move(e));
  }
  j["prime_set"] = std::move(ps);

  Json assembled = Json::array();
  for (const auto& rec : run.assembled) assembled.push_back(to_json(rec));
  j["assembled"] = std::move(assembled);

  Json diag;
  diag["q_count"] = run.diag.q_count;
  diag["divisor_pool"] = run.diag.divisor_pool;
  diag["candidates_scanned"] = run.diag.candidates_scanned;
  diag["subset_nodes"] = run.diag.subset_nodes;
  diag["node_cap_hit"] = run.diag.node_cap_hit;
  diag["assemble_skipped"] = run.diag.assemble_skipped;
  diag["lemma_lhs"] = static_cast<double>(run.diag.lemma_lhs);
  diag["lemma_rhs"] = static_cast<double>(run.diag.lemma_rhs);
  diag["notes"] = run.diag.notes;
  j["diagnostics"] = std::move(diag);
  return j;
}

inline Json to_json(const SievelemRow& row, u64 k) {
  Json j;
  j["k"] = k;
  j["x"] = row.x;
  j["count"] = row.count;
  j["ratio"] = static_cast<double>(row.ratio);
  return j;
}

}  // namespace carmsq
