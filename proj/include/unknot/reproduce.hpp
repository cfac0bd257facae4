#pragma once

// Recomputes every golden value of a fixture and compares exactly.

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "unknot/corrections.hpp"
#include "unknot/enumeration.hpp"
#include "unknot/fixtures.hpp"
#include "unknot/isomorphisms.hpp"
#include "unknot/json_io.hpp"
#include "unknot/obstruction.hpp"

namespace unknot {

struct GoldenCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct FixtureResult {
  std::string knot;
  std::string source;
  std::string note;
  std::vector<GoldenCheck> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const GoldenCheck& c) { return c.pass; });
  }
};

namespace detail {

inline std::vector<Rational> parse_all(const std::vector<std::string>& text) {
  std::vector<Rational> out;
  for (const auto& s : text) out.push_back(Rational::parse(s));
  return out;
}

inline std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.str();
  return s;
}

inline std::string join(const std::vector<Rank2Triple>& v) {
  std::string s;
  for (const auto& t : v)
    s += (s.empty() ? "" : " ") + ("(" + std::to_string(t.m1) + "," + std::to_string(t.a) + "," +
                                   std::to_string(t.m2) + ")");
  return s.empty() ? "none" : s;
}

inline std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "[" + s + "]";
}

inline std::string sorted_join(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return join(v);
}

/// True when some automorphism carries the printed arrangement onto the table:
/// printed[i] = table(φ(i)) for every canonical index i.
inline bool arrangement_matches(const CorrectionTable& table, const std::vector<Rational>& printed) {
  if (printed.size() != table.values.size()) return false;
  const AbelianGroup layout(table.group.invariant_factors());
  bool found = false;
  for_each_isomorphism(layout, table.group, [&](const GroupIsomorphism& phi) {
    for (std::size_t i = 0; i < printed.size(); ++i)
      if (printed[i] != table.values[static_cast<std::size_t>(phi.images[i])]) return true;
    found = true;
    return false;
  });
  return found;
}

}  // namespace detail

inline FixtureResult reproduce_fixture(const fixtures::Fixture& f, unsigned jobs = 1, bool slow_verify = false) {
  FixtureResult res{f.name, f.source, f.note, {}};
  auto check = [&](std::string name, std::string expected, std::string actual) {
    const bool pass = expected == actual;
    res.checks.push_back({std::move(name), std::move(expected), std::move(actual), pass});
  };
  auto check_rational = [&](std::string name, const std::string& expected, const std::optional<Rational>& actual) {
    const Rational want = Rational::parse(expected);
    const bool pass = actual && *actual == want;
    res.checks.push_back({std::move(name), expected, actual ? actual->str() : "none", pass});
  };
  auto check_table = [&](const std::string& prefix, const CorrectionTable& t, const std::vector<std::string>& text) {
    const auto printed = detail::parse_all(text);
    check(prefix + "multiset", detail::sorted_join(printed), detail::sorted_join(t.values));
    check(prefix + "arrangement", "some automorphism matches",
          detail::arrangement_matches(t, printed) ? "some automorphism matches" : "no automorphism matches");
  };

  const KnotProblem& kp = f.problem;
  check("problem_valid", "ok", validate_problem(kp).ok() ? "ok" : validate_problem(kp).failures.front().check);
  check("goeritz_determinant", kp.determinant.str(), det_exact(kp.goeritz).str());

  const ReducedTable target = reduced_correction_table(kp.goeritz, {jobs, true});
  const AbelianGroup& group = target.table.group;
  check("invariant_factors", detail::join(f.factors), detail::join(group.invariant_factors()));
  if (f.spin_value) check_rational("spin_value", *f.spin_value, target.table.spin_value());
  if (f.min_nonzero) check_rational("min_nonzero", *f.min_nonzero, target.table.min_nonzero());
  if (!f.printed_values.empty()) check_table("table_", target.table, f.printed_values);

  const auto rank = kp.split.total();
  if (rank == 2 && !f.surviving.empty()) {
    const auto triples = enumerate_rank2(static_cast<std::int64_t>(kp.determinant), kp.split.negative);
    if (!f.enumerated.empty()) check("enumerated_triples", detail::join(f.enumerated), detail::join(triples));
    std::vector<Rank2Triple> missing;
    for (const auto& t : f.surviving)
      if (std::find(triples.begin(), triples.end(), t) == triples.end()) missing.push_back(t);
    check("printed_triples_enumerated", "none", detail::join(missing));
    check("triples_after_group_filter", detail::join(f.surviving),
          detail::join(filter_triples_by_group(triples, group)));
  }

  for (const auto& c : f.candidates) {
    const std::string prefix = "candidate" + detail::join({c.triple}) + "_";
    const IntMatrix lift = lift_tilde(c.triple.form());
    if (c.printed_lift) check(prefix + "lift", c.printed_lift->str(), lift.str());
    const CorrectionTable table = reduced_correction_table(lift, {jobs, true}).table;
    if (!c.printed_values.empty()) check_table(prefix, table, c.printed_values);
    if (c.min_nonzero) check_rational(prefix + "min_nonzero", *c.min_nonzero, table.min_nonzero());
    const Certificate cert = check_candidate(table, target.table, {slow_verify});
    check(prefix + "refuted", "yes", cert.refuted() ? "yes" : "no");
    if (c.decisive_value) check_rational(prefix + "decisive_value", *c.decisive_value, cert.decisive_value);
  }

  if (!f.rank3_survivors.empty()) {
    const auto superset = enumerate_rank_r_superset(3, static_cast<std::int64_t>(kp.determinant),
                                                    static_cast<std::size_t>(kp.split.negative));
    std::vector<Fingerprint> prints(superset.size());
    parallel_for(superset.size(), jobs, [&](std::size_t i) { prints[i] = lifted_fingerprint(superset[i]); });
    const std::set<Fingerprint> have(prints.begin(), prints.end());
    std::set<Fingerprint> printed;
    for (const auto& q : f.rank3_survivors) {
      printed.insert(lifted_fingerprint(q));
      check("superset_contains_fingerprint_of_" + q.str(), "yes", have.count(lifted_fingerprint(q)) ? "yes" : "no");
    }
    check("superset_fingerprints", std::to_string(printed.size()) + " distinct, equal to the survivors'",
          std::to_string(have.size()) + (have == printed ? " distinct, equal to the survivors'" : " distinct, differing"));
  }

  if (!f.rank3_classes.empty()) {
    const auto range = detail::reduced_forms(3, static_cast<std::int64_t>(kp.determinant));
    const std::set<IntMatrix> scanned(range.begin(), range.end());
    for (const auto& q : f.rank3_classes) {
      const bool ok = det_exact(q) == kp.determinant && scanned.count(q) > 0;
      check("class_in_scanned_range_" + q.str(), "yes", ok ? "yes" : "no");
    }
  }

  if (f.reduction_input) {
    const IntMatrix lift = lift_tilde(*f.reduction_input);
    const ReducedBasis rb = reduce_basis(lift);
    if (f.reduction_output) check("reduced_lift", f.reduction_output->str(), rb.form.str());
    if (f.reduced_box) check("reduced_box_size", std::to_string(*f.reduced_box), characteristic_box(rb.form).size().str());
    if (f.unreduced_box) check("unreduced_box_size", std::to_string(*f.unreduced_box), characteristic_box(lift).size().str());
  }

  for (const auto& sv : f.verdicts) {
    KnotProblem variant = kp;
    variant.split = sv.split;
    const ObstructionReport report = run_obstruction(variant, {jobs, slow_verify});
    const std::string tag = "(" + std::to_string(sv.split.positive) + "," + std::to_string(sv.split.negative) + ")";
    check("verdict_" + tag, verdict_name(sv.verdict), verdict_name(report.verdict));
    if (sv.verdict == Verdict::obstructed && f.conclusion_contains) {
      const std::string text = report.conclusion.value_or("");
      check("conclusion_" + tag, *f.conclusion_contains,
            text.find(*f.conclusion_contains) != std::string::npos ? *f.conclusion_contains : text);
    }
  }
  return res;
}

inline json to_json(const FixtureResult& r) {
  json j;
  j["knot"] = r.knot;
  j["pass"] = r.pass();
  j["source"] = r.source;
  if (!r.note.empty()) j["note"] = r.note;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"check", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}});
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace unknot
