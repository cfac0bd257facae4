#pragma once

// JSON reading and writing for matrices, problems, tables and reports.
// Rationals are always "a/b" strings. Integers too large for int64 are
// written (and may be read) as decimal strings.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "unknot/corrections.hpp"
#include "unknot/enumeration.hpp"
#include "unknot/errors.hpp"
#include "unknot/goeritz.hpp"
#include "unknot/int_matrix.hpp"
#include "unknot/obstruction.hpp"
#include "unknot/rational.hpp"

namespace unknot {

using json = nlohmann::ordered_json;

inline json to_json(const BigInt& x) {
  if (fits_int64(x)) return static_cast<std::int64_t>(x);
  return x.str();
}

inline BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    return BigInt(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      return BigInt(s);
    } catch (const std::exception&) {
      throw parse_error("not an integer: " + s);
    }
  }
  throw parse_error("expected an integer, got " + j.dump());
}

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  return Rational(bigint_from_json(j));
}

inline json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw parse_error("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw parse_error("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw parse_error("matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = bigint_from_json(j[i][k]);
  }
  return m;
}

inline json to_json(const CrossingSplit& s) { return json{{"p", s.positive}, {"n", s.negative}}; }

inline json to_json(const KnotProblem& kp) {
  json j;
  j["name"] = kp.name;
  j["determinant"] = to_json(kp.determinant);
  j["signature"] = kp.signature;
  j["goeritz"] = to_json(kp.goeritz);
  j["split"] = to_json(kp.split);
  if (kp.unknotting_upper_bound) j["unknotting_upper_bound"] = *kp.unknotting_upper_bound;
  return j;
}

inline KnotProblem problem_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("problem must be a JSON object");
  KnotProblem kp;
  try {
    kp.name = j.value("name", std::string("unnamed"));
    if (!j.contains("goeritz")) throw parse_error("missing field: goeritz");
    kp.goeritz = matrix_from_json(j.at("goeritz"));
    kp.determinant = j.contains("determinant") ? bigint_from_json(j.at("determinant")) : det_exact(kp.goeritz);
    if (!j.contains("signature")) throw parse_error("missing field: signature");
    kp.signature = j.at("signature").get<std::int64_t>();
    if (!j.contains("split")) throw parse_error("missing field: split");
    const json& s = j.at("split");
    if (s.is_array() && s.size() == 2) {
      kp.split = {s[0].get<std::int64_t>(), s[1].get<std::int64_t>()};
    } else {
      kp.split = {s.at("p").get<std::int64_t>(), s.at("n").get<std::int64_t>()};
    }
    if (j.contains("unknotting_upper_bound") && !j.at("unknotting_upper_bound").is_null())
      kp.unknotting_upper_bound = j.at("unknotting_upper_bound").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed problem: ") + e.what());
  }
  return kp;
}

inline WhiteGraph white_graph_from_json(const json& j) {
  WhiteGraph g;
  try {
    g.vertex_count = j.at("vertices").get<std::size_t>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw parse_error("edge must be a pair of vertices");
      g.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed white graph: ") + e.what());
  }
  return g;
}

inline json to_json(const std::vector<std::int64_t>& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

inline json to_json(const CorrectionTable& t) {
  json j;
  j["factors"] = to_json(t.group.invariant_factors());
  json values = json::object();
  for (std::size_t g = 0; g < t.values.size(); ++g)
    values[t.group.label_string(static_cast<AbelianGroup::Element>(g))] = t.values[g].str();
  j["values"] = std::move(values);
  return j;
}

inline json to_json(const Rank2Triple& t) { return json::array({t.m1, t.a, t.m2}); }

/// One enumerated candidate, annotated with its census and group.
inline json candidate_json(const IntMatrix& q) {
  json j;
  j["matrix"] = to_json(q);
  j["neg_count"] = diag_mod4_census(q);
  std::vector<std::int64_t> factors;
  for (const auto& f : smith_normal_form(q).invariant_factors()) factors.push_back(static_cast<std::int64_t>(f));
  j["invariant_factors"] = to_json(factors);
  if (q.rows() == 2) j["triple"] = to_json(triple_of(q));
  return j;
}

inline json to_json(const Certificate& c) {
  json j;
  j["stage"] = stage_name(c.stage);
  j["refuted"] = c.refuted();
  if (c.decisive_value) j["decisive_value"] = c.decisive_value->str();
  if (c.decisive_element) j["decisive_element"] = c.decisive_label;
  j["detail"] = c.detail;
  j["isomorphisms_checked"] = c.isomorphisms_checked;
  if (c.full_scan_confirms) j["full_scan_confirms"] = *c.full_scan_confirms;
  if (c.witness) j["witness_generator_images"] = c.witness->generator_images;
  return j;
}

inline json to_json(const ObstructionReport& r) {
  json j;
  j["knot"] = r.knot;
  j["split"] = to_json(r.split);
  j["verdict"] = verdict_name(r.verdict);
  json checks = json::array();
  for (const auto& c : r.applicability)
    checks.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["applicability"] = std::move(checks);
  if (r.experimental_rank) j["experimental_rank"] = true;
  if (!r.target_factors.empty() || r.target_spin_value) {
    json target;
    target["invariant_factors"] = to_json(r.target_factors);
    if (r.target_spin_value) target["spin_value"] = r.target_spin_value->str();
    if (r.target_min_nonzero) target["min_nonzero"] = r.target_min_nonzero->str();
    j["target"] = std::move(target);
  }
  json cands = json::array();
  for (const auto& c : r.candidates) {
    json cj;
    cj["form"] = to_json(c.form);
    if (c.triple) cj["triple"] = to_json(*c.triple);
    cj["neg_count"] = c.neg_count;
    cj["invariant_factors"] = to_json(c.invariant_factors);
    cj["spin_value"] = c.spin_value.str();
    if (c.min_nonzero) cj["min_nonzero"] = c.min_nonzero->str();
    cj["certificate"] = to_json(c.certificate);
    cands.push_back(std::move(cj));
  }
  j["candidates"] = std::move(cands);
  j["external_notes"] = r.external_notes;
  if (r.conclusion) j["conclusion"] = *r.conclusion;
  return j;
}

}  // namespace unknot
