#pragma once

// Decision engine: a candidate form survives when some isomorphism
// φ: Γ_Q̃ → Γ_G satisfies m_Q̃(g) ≥ m_G(φ(g)) and m_Q̃(g) ≡ m_G(φ(g)) (mod 2)
// for every g. The knot is obstructed for a crossing split when every
// candidate fails.
//
// Checks run cheapest first:
//   group     invariant factors must agree;
//   spin      φ(0) = 0, so the values at zero must satisfy both conditions;
//   min_value every non-zero g needs some non-zero h of the same order with
//             m_G(h) ≤ m_Q̃(g) and matching parity (necessary for any φ);
//   scan      exhaustive search over all isomorphisms.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unknot/corrections.hpp"
#include "unknot/enumeration.hpp"
#include "unknot/errors.hpp"
#include "unknot/goeritz.hpp"
#include "unknot/isomorphisms.hpp"
#include "unknot/parallel.hpp"
#include "unknot/quadforms.hpp"

namespace unknot {

enum class Stage { group_mismatch, spin, min_value, exhausted, witness };

inline const char* stage_name(Stage s) {
  switch (s) {
    case Stage::group_mismatch: return "group_mismatch";
    case Stage::spin: return "spin_value";
    case Stage::min_value: return "min_value";
    case Stage::exhausted: return "exhausted_isomorphisms";
    case Stage::witness: return "witness";
  }
  return "unknown";
}

struct Certificate {
  Stage stage = Stage::exhausted;
  std::optional<Rational> decisive_value;  // candidate value with no admissible partner
  std::optional<AbelianGroup::Element> decisive_element;
  std::string decisive_label;  // decisive_element as "(a,b,…)"
  std::string detail;
  std::optional<GroupIsomorphism> witness;
  std::size_t isomorphisms_checked = 0;
  /// Set when a cheap refutation was re-checked by a full scan.
  std::optional<bool> full_scan_confirms;

  bool refuted() const { return stage != Stage::witness; }
};

struct CheckOptions {
  bool slow_verify = false;  // run the full scan even after a cheap refutation
};

/// True iff φ satisfies both conditions at every element.
inline bool isomorphism_satisfies(const CorrectionTable& candidate, const CorrectionTable& target,
                                  const GroupIsomorphism& phi) {
  for (std::size_t g = 0; g < candidate.values.size(); ++g) {
    const Rational& c = candidate.values[g];
    const Rational& t = target.values[static_cast<std::size_t>(phi.images[g])];
    if (c < t || !congruent_mod2(c, t)) return false;
  }
  return true;
}

namespace detail {

inline Certificate full_scan(const CorrectionTable& candidate, const CorrectionTable& target) {
  Certificate cert;
  cert.stage = Stage::exhausted;
  for_each_isomorphism(candidate.group, target.group, [&](const GroupIsomorphism& phi) {
    ++cert.isomorphisms_checked;
    if (!isomorphism_satisfies(candidate, target, phi)) return true;
    cert.stage = Stage::witness;
    cert.witness = phi;
    return false;
  });
  if (cert.stage == Stage::exhausted) cert.detail = "no isomorphism satisfies both conditions";
  else cert.detail = "isomorphism satisfies both conditions at every element";
  return cert;
}

}  // namespace detail

inline Certificate check_candidate(const CorrectionTable& candidate, const CorrectionTable& target,
                                   const CheckOptions& opts = {}) {
  auto confirm = [&](Certificate cert) {
    if (opts.slow_verify) {
      const Certificate scan = detail::full_scan(candidate, target);
      if (!scan.refuted()) throw error("cheap refutation contradicted by a witness isomorphism");
      cert.full_scan_confirms = true;
      cert.isomorphisms_checked = scan.isomorphisms_checked;
    }
    return cert;
  };

  Certificate cert;
  if (!candidate.group.same_structure(target.group)) {
    cert.stage = Stage::group_mismatch;
    cert.detail = "groups have different invariant factors";
    return cert;
  }

  const Rational& c0 = candidate.spin_value();
  const Rational& t0 = target.spin_value();
  if (c0 < t0 || !congruent_mod2(c0, t0)) {
    cert.stage = Stage::spin;
    cert.decisive_value = c0;
    cert.decisive_element = 0;
    cert.decisive_label = candidate.group.label_string(0);
    cert.detail = "spin value " + c0.str() + " fails against " + t0.str();
    return confirm(std::move(cert));
  }

  // For each non-zero g, look for a partner of the same order below it with matching parity.
  const auto order = static_cast<std::size_t>(candidate.group.order());
  std::optional<std::size_t> worst;
  for (std::size_t g = 1; g < order; ++g) {
    const Rational& c = candidate.values[g];
    const auto ord = candidate.group.element_order(static_cast<AbelianGroup::Element>(g));
    bool partnered = false;
    for (std::size_t h = 1; h < order && !partnered; ++h) {
      if (target.group.element_order(static_cast<AbelianGroup::Element>(h)) != ord) continue;
      const Rational& t = target.values[h];
      partnered = !(c < t) && congruent_mod2(c, t);
    }
    if (!partnered && (!worst || c < candidate.values[*worst])) worst = g;
  }
  if (worst) {
    cert.stage = Stage::min_value;
    cert.decisive_value = candidate.values[*worst];
    cert.decisive_element = static_cast<AbelianGroup::Element>(*worst);
    cert.decisive_label = candidate.group.label_string(*cert.decisive_element);
    cert.detail = "value " + cert.decisive_value->str() + " has no target value below it with matching parity";
    return confirm(std::move(cert));
  }

  cert = detail::full_scan(candidate, target);
  if (cert.witness && !isomorphism_satisfies(candidate, target, *cert.witness))
    throw error("emitted witness fails replay");
  return cert;
}

enum class Verdict { obstructed, not_obstructed, inapplicable };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::obstructed: return "obstructed";
    case Verdict::not_obstructed: return "not_obstructed";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "unknown";
}

struct ApplicabilityCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CandidateResult {
  IntMatrix form;
  IntMatrix lift;
  std::size_t neg_count = 0;
  std::optional<Rank2Triple> triple;
  std::vector<std::int64_t> invariant_factors;
  Rational spin_value;
  std::optional<Rational> min_nonzero;
  Certificate certificate;
};

struct ObstructionReport {
  std::string knot;
  CrossingSplit split;
  Verdict verdict = Verdict::inapplicable;
  std::vector<ApplicabilityCheck> applicability;
  bool experimental_rank = false;
  std::vector<std::int64_t> target_factors;
  std::optional<Rational> target_spin_value;
  std::optional<Rational> target_min_nonzero;
  std::vector<CandidateResult> candidates;
  std::vector<std::string> external_notes;
  std::optional<std::string> conclusion;
};

struct ObstructionOptions {
  unsigned jobs = 1;
  bool slow_verify = false;
};

namespace detail {

inline std::vector<ApplicabilityCheck> applicability_checks(const KnotProblem& kp) {
  std::vector<ApplicabilityCheck> checks;
  const ValidationResult v = validate_problem(kp);
  checks.push_back({"problem_valid", v.ok(), v.ok() ? "all validators passed" : v.failures.front().check});
  const bool gate = kp.signature % 2 == 0 && 2 * kp.split.negative == kp.signature;
  checks.push_back({"n_equals_half_signature", gate,
                    "n = " + std::to_string(kp.split.negative) + ", signature/2 = " +
                        std::to_string(kp.signature / 2)});
  checks.push_back({"positive_rank", kp.split.total() > 0, "p + n = " + std::to_string(kp.split.total())});
  return checks;
}

inline void add_external_notes(const KnotProblem& kp, ObstructionReport& report) {
  if (kp.name == "9_35") {
    report.external_notes.push_back(
        "The split (p,n) = (0,2) has n != signature/2 and lies outside this obstruction.");
    report.external_notes.push_back(
        "Traczyk (Jones polynomial at exp(i*pi/3)): if 9_35 is unknotted by two crossing changes, "
        "the two crossings have different signs.");
    if (report.verdict == Verdict::obstructed && kp.split.positive == 1 && kp.split.negative == 1)
      report.conclusion = "Combined with Traczyk's result and three sufficing crossing changes, u(9_35) = 3.";
  }
  if (kp.name == "10_145") {
    report.external_notes.push_back(
        "External result: the branched double cover of 10_145 bounds no positive-definite four-manifold, "
        "so any unknotting sequence for 10_145 has n >= 2.");
  }
  if (report.verdict == Verdict::not_obstructed) {
    report.external_notes.push_back(
        "The obstruction is silent: a candidate admits an isomorphism satisfying both conditions. "
        "This does not show the crossing split is realisable.");
  }
}

}  // namespace detail

/// Correction table of a form, scanned in a reduced basis.
inline CorrectionTable table_for(const IntMatrix& q, unsigned jobs) {
  return reduced_correction_table(q, {jobs, true}).table;
}

/// Runs the candidate checks against the Goeritz table and assembles the report.
inline ObstructionReport verdict(const KnotProblem& kp, const std::vector<FormCandidate>& candidates,
                                 const ObstructionOptions& opts = {}) {
  ObstructionReport report;
  report.knot = kp.name;
  report.split = kp.split;
  report.applicability = detail::applicability_checks(kp);
  report.experimental_rank = rank_is_experimental(static_cast<std::size_t>(std::max<std::int64_t>(0, kp.split.total())));
  const bool applicable =
      std::all_of(report.applicability.begin(), report.applicability.end(), [](const auto& c) { return c.passed; });
  if (!applicable) {
    report.verdict = Verdict::inapplicable;
    detail::add_external_notes(kp, report);
    return report;
  }

  const CorrectionTable target = table_for(kp.goeritz, opts.jobs);
  report.target_factors = target.group.invariant_factors();
  report.target_spin_value = target.spin_value();
  report.target_min_nonzero = target.min_nonzero();

  report.candidates.resize(candidates.size());
  // Candidates are independent; the inner scans stay single-threaded here.
  parallel_for(candidates.size(), opts.jobs, [&](std::size_t i) {
    const FormCandidate& fc = candidates[i];
    CandidateResult& res = report.candidates[i];
    res.form = fc.form;
    res.lift = fc.lift;
    res.neg_count = fc.neg_count;
    if (fc.form.rows() == 2) res.triple = triple_of(fc.form);
    const CorrectionTable table = table_for(fc.lift, 1);
    res.invariant_factors = table.group.invariant_factors();
    res.spin_value = table.spin_value();
    res.min_nonzero = table.min_nonzero();
    res.certificate = check_candidate(table, target, {opts.slow_verify});
  });

  const bool all_refuted = std::all_of(report.candidates.begin(), report.candidates.end(),
                                       [](const CandidateResult& c) { return c.certificate.refuted(); });
  report.verdict = all_refuted ? Verdict::obstructed : Verdict::not_obstructed;

  if (report.verdict == Verdict::obstructed) {
    const std::int64_t half = kp.signature / 2;
    if (kp.split.positive == 0 && kp.split.negative == half) {
      const std::int64_t lower = half + 1;
      std::string text = kp.name + " cannot be unknotted by " + std::to_string(half) +
                         " crossing changes; u >= " + std::to_string(lower);
      if (kp.unknotting_upper_bound && *kp.unknotting_upper_bound == lower)
        text += "; with the upper bound " + std::to_string(lower) + ", u = " + std::to_string(lower);
      report.conclusion = text + ".";
    }
  }
  detail::add_external_notes(kp, report);
  return report;
}

/// Candidate forms for a validated problem: exact triples in rank 2, the
/// reduced superset otherwise.
inline std::vector<FormCandidate> candidate_forms(const KnotProblem& kp) {
  const auto rank = static_cast<std::size_t>(kp.split.total());
  if (!fits_int64(kp.determinant)) throw unsupported_error("determinant too large");
  const auto delta = static_cast<std::int64_t>(kp.determinant);
  std::vector<FormCandidate> out;
  if (rank == 2) {
    for (const auto& t : enumerate_rank2(delta, kp.split.negative)) out.push_back(FormCandidate::from(t.form()));
  } else {
    for (auto& q : enumerate_rank_r_superset(rank, delta, static_cast<std::size_t>(kp.split.negative)))
      out.push_back(FormCandidate::from(std::move(q)));
  }
  return out;
}

/// validate → enumerate → lift → tables → verdict.
inline ObstructionReport run_obstruction(const KnotProblem& kp, const ObstructionOptions& opts = {}) {
  const auto checks = detail::applicability_checks(kp);
  const bool applicable = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  return verdict(kp, applicable ? candidate_forms(kp) : std::vector<FormCandidate>{}, opts);
}

}  // namespace unknot
