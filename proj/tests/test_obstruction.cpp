#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "unknot/fixtures.hpp"
#include "unknot/json_io.hpp"
#include "unknot/obstruction.hpp"

using namespace unknot;

namespace {

const IntMatrix g910{{4, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 4}};

// Counts bijective homomorphisms by scanning every tuple of generator images.
std::size_t brute_force_automorphisms(const AbelianGroup& g) {
  const auto& f = g.invariant_factors();
  const std::int64_t order = g.order();
  std::size_t count = 0;
  std::vector<AbelianGroup::Element> images(f.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == f.size()) {
      std::set<AbelianGroup::Element> hit;
      for (std::int64_t e = 0; e < order; ++e) {
        const auto lab = g.label(e);
        AbelianGroup::Element img = 0;
        for (std::size_t i = 0; i < f.size(); ++i) img = g.add(img, g.scale(images[i], lab[i]));
        hit.insert(img);
      }
      if (hit.size() == static_cast<std::size_t>(order)) ++count;
      return;
    }
    for (std::int64_t e = 0; e < order; ++e) {
      if (f[k] % g.element_order(e) != 0) continue;
      images[k] = e;
      rec(k + 1);
    }
  };
  rec(0);
  return count;
}

CorrectionTable lifted_table(const Rank2Triple& t) { return reduced_correction_table(lift_tilde(t.form())).table; }

}  // namespace

TEST(Isomorphisms, CyclicThirtyThree) {
  const AbelianGroup z33({33});
  const auto all = enumerate_isomorphisms(z33, z33);
  EXPECT_EQ(all.size(), 20u);
  std::set<std::vector<AbelianGroup::Element>> distinct;
  for (const auto& phi : all) distinct.insert(phi.images);
  EXPECT_EQ(distinct.size(), 20u);
}

TEST(Isomorphisms, MismatchedGroupsYieldNothing) {
  EXPECT_TRUE(enumerate_isomorphisms(AbelianGroup({3}), AbelianGroup({9})).empty());
  EXPECT_TRUE(enumerate_isomorphisms(AbelianGroup({3, 9}), AbelianGroup({27})).empty());
}

TEST(Isomorphisms, CountsMatchBruteForce) {
  for (const auto& f : std::vector<std::vector<std::int64_t>>{{3, 9}, {3, 3}, {15}, {3, 15}, {5, 5}, {3, 3, 3}, {9, 9}}) {
    const AbelianGroup g(f);
    EXPECT_EQ(enumerate_isomorphisms(g, g).size(), brute_force_automorphisms(g)) << g.invariant_factors().size();
  }
}

TEST(Isomorphisms, AreHomomorphicBijections) {
  const AbelianGroup a({3, 9});
  const auto b = AbelianGroup::presented_by(IntMatrix{{6, -3}, {-3, 6}});
  std::size_t n = 0;
  for_each_isomorphism(a, b, [&](const GroupIsomorphism& phi) {
    ++n;
    EXPECT_EQ(phi(0), 0);
    std::set<AbelianGroup::Element> image(phi.images.begin(), phi.images.end());
    EXPECT_EQ(image.size(), 27u);
    for (std::int64_t x = 0; x < 27; ++x)
      for (std::int64_t y = 0; y < 27; ++y) EXPECT_EQ(phi(a.add(x, y)), b.add(phi(x), phi(y)));
    return true;
  });
  EXPECT_EQ(n, brute_force_automorphisms(a));
}

TEST(CheckCandidate, NineTenCandidatesFailAtMinValue) {
  const auto target = correction_table(g910);
  const auto c1 = check_candidate(lifted_table({2, 0, 6}), target);
  EXPECT_EQ(c1.stage, Stage::min_value);
  EXPECT_EQ(c1.decisive_value->str(), "-9/11");
  const auto c2 = check_candidate(lifted_table({4, 2, 4}), target);
  EXPECT_EQ(c2.stage, Stage::min_value);
  EXPECT_EQ(c2.decisive_value->str(), "-7/11");
}

TEST(CheckCandidate, SlowVerifyConfirmsRefutations) {
  const auto target = correction_table(g910);
  for (const Rank2Triple t : {Rank2Triple{2, 0, 6}, Rank2Triple{4, 2, 4}}) {
    const auto cert = check_candidate(lifted_table(t), target, {true});
    EXPECT_TRUE(cert.refuted());
    EXPECT_EQ(cert.full_scan_confirms, std::optional<bool>(true));
    EXPECT_EQ(cert.isomorphisms_checked, 20u);
  }
  const auto t935 = correction_table(IntMatrix{{6, -3}, {-3, 6}});
  const auto cand = lifted_table({2, 0, 5});
  EXPECT_EQ(cand.min_value().str(), "-17/18");
  const auto cert = check_candidate(cand, t935, {true});
  EXPECT_TRUE(cert.refuted());
  EXPECT_EQ(cert.full_scan_confirms, std::optional<bool>(true));
}

TEST(CheckCandidate, TableAgainstItselfHasIdentityWitness) {
  const auto t = correction_table(g910);
  const auto cert = check_candidate(t, t);
  ASSERT_EQ(cert.stage, Stage::witness);
  ASSERT_TRUE(cert.witness.has_value());
  EXPECT_TRUE(isomorphism_satisfies(t, t, *cert.witness));
  for (std::size_t g = 0; g < t.values.size(); ++g) EXPECT_EQ(t.values[(*cert.witness)(static_cast<std::int64_t>(g))], t.values[g]);
}

TEST(CheckCandidate, GroupMismatchAndSpinStages) {
  EXPECT_EQ(check_candidate(correction_table(IntMatrix{{3}}), correction_table(IntMatrix{{5}})).stage,
            Stage::group_mismatch);
  const auto cert = check_candidate(correction_table(IntMatrix{{2, 1}, {1, 2}}), correction_table(IntMatrix{{3}}));
  EXPECT_EQ(cert.stage, Stage::spin);
  EXPECT_EQ(cert.decisive_value->str(), "-1/2");
}

TEST(CheckCandidate, TransportedTablesAlwaysHaveValidWitness) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + trial % 3;
    const IntMatrix q = oracle::random_odd_form(rng, r, 7);
    const auto t = correction_table(q);
    const auto moved = transport_table(t, oracle::random_unimodular(rng, r, 4));
    const auto cert = check_candidate(t, moved);
    ASSERT_EQ(cert.stage, Stage::witness) << q;
    ASSERT_TRUE(isomorphism_satisfies(t, moved, *cert.witness));
  }
}

TEST(CheckCandidate, CheapRefutationsAgreeWithFullScan) {
  std::mt19937_64 rng(72);
  std::size_t refuted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix a = oracle::random_odd_form(rng, 2, 9);
    const IntMatrix b = oracle::random_odd_form(rng, 2, 9);
    const auto ta = correction_table(a), tb = correction_table(b);
    if (!ta.group.same_structure(tb.group)) continue;
    const auto fast = check_candidate(ta, tb);
    const auto slow = check_candidate(ta, tb, {true});
    ASSERT_EQ(fast.refuted(), slow.refuted()) << a << " vs " << b;
    if (fast.refuted()) ++refuted;
  }
  EXPECT_GT(refuted, 0u);
}

TEST(Verdict, FixturesAndGate) {
  const auto f910 = *fixtures::find("9_10");
  const auto r910 = run_obstruction(f910.problem);
  EXPECT_EQ(r910.verdict, Verdict::obstructed);
  EXPECT_EQ(r910.candidates.size(), 2u);
  EXPECT_NE(r910.conclusion->find("u = 3"), std::string::npos);

  KnotProblem p935 = fixtures::find("9_35")->problem;
  p935.split = {1, 1};
  const auto r11 = run_obstruction(p935);
  EXPECT_EQ(r11.verdict, Verdict::obstructed);
  ASSERT_EQ(r11.candidates.size(), 3u);
  for (const auto& c : r11.candidates) {
    const bool survivor = *c.triple == Rank2Triple{2, 0, 5};
    EXPECT_EQ(c.certificate.stage == Stage::group_mismatch, !survivor);
    if (survivor) EXPECT_EQ(c.min_nonzero->str(), "-17/18");
  }
  EXPECT_FALSE(r11.external_notes.empty());

  p935.split = {0, 2};
  const auto r02 = run_obstruction(p935);
  EXPECT_EQ(r02.verdict, Verdict::inapplicable);
  EXPECT_TRUE(r02.candidates.empty());
}

TEST(Verdict, WitnessGivesNotObstructed) {
  const IntMatrix lift = lift_tilde(Rank2Triple{2, 0, 6}.form());
  const KnotProblem kp{"synthetic", 33, 4, lift, {0, 2}, std::nullopt};
  const auto report = run_obstruction(kp);
  EXPECT_EQ(report.verdict, Verdict::not_obstructed);
  bool witnessed = false;
  for (const auto& c : report.candidates) witnessed = witnessed || c.certificate.witness.has_value();
  EXPECT_TRUE(witnessed);
  EXPECT_FALSE(report.conclusion.has_value());
}

TEST(Verdict, IndependentOfOrderAndJobs) {
  for (const auto& f : fixtures::all()) {
    const auto base = to_json(run_obstruction(f.problem, {1, false})).dump();
    EXPECT_EQ(to_json(run_obstruction(f.problem, {4, false})).dump(), base) << f.name;
    auto candidates = candidate_forms(f.problem);
    const auto forward = verdict(f.problem, candidates);
    std::reverse(candidates.begin(), candidates.end());
    const auto backward = verdict(f.problem, candidates, {3, false});
    EXPECT_EQ(forward.verdict, backward.verdict) << f.name;
  }
}
