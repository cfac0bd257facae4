#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "properties.hpp"
#include "unknot/enumeration.hpp"

using namespace unknot;

namespace {

using Triples = std::vector<Rank2Triple>;

}  // namespace

TEST(EnumerateRank2, Examples) {
  EXPECT_EQ(enumerate_rank2(33, 2), (Triples{{2, 0, 6}, {4, 2, 4}}));
  EXPECT_EQ(enumerate_rank2(27, 1), (Triples{{1, 0, 14}, {2, 0, 5}, {4, 3, 5}}));
  EXPECT_EQ(enumerate_rank2(1, 0), (Triples{{1, 0, 1}}));
  EXPECT_EQ(enumerate_rank2(37, 2), (Triples{{10, 9, 10}}));
  EXPECT_EQ(enumerate_rank2(105, 2), (Triples{{2, 0, 18}, {4, 0, 8}, {6, 2, 6}, {10, 8, 10}}));
  EXPECT_TRUE(enumerate_rank2(33, 3).empty());
  EXPECT_THROW(enumerate_rank2(32, 1), invalid_parameters_error);
}

TEST(EnumerateRank2, AgreesWithBruteForce) {
  const auto r = props::rank2_against_brute_force(201);
  EXPECT_EQ(r.cases, 303u);
  EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(EnumerateRank2, TriplesAreValidCandidates) {
  for (std::int64_t delta = 1; delta <= 201; delta += 2)
    for (std::int64_t n = 0; n <= 2; ++n)
      for (const auto& t : enumerate_rank2(delta, n)) {
        ASSERT_TRUE(props::is_valid_candidate(t.form(), delta, static_cast<std::size_t>(n)));
        ASSERT_EQ(triple_of(t.form()), t);
      }
}

TEST(Superset, RankOne) {
  EXPECT_EQ(enumerate_rank_r_superset(1, 11, 1), (std::vector<IntMatrix>{IntMatrix{{11}}}));
  EXPECT_TRUE(enumerate_rank_r_superset(1, 11, 0).empty());
  EXPECT_EQ(enumerate_rank_r_superset(1, 9, 0), (std::vector<IntMatrix>{IntMatrix{{9}}}));
  EXPECT_THROW(enumerate_rank_r_superset(0, 9, 0), invalid_parameters_error);
  EXPECT_THROW(enumerate_rank_r_superset(2, 8, 0), invalid_parameters_error);
}

TEST(Superset, RankTwoCoversEveryTriple) {
  for (std::int64_t delta = 1; delta <= 201; delta += 2)
    for (std::size_t n = 0; n <= 2; ++n) {
      const auto superset = enumerate_rank_r_superset(2, delta, n);
      std::set<Fingerprint> prints;
      for (const auto& q : superset) {
        ASSERT_TRUE(props::is_valid_candidate(q, delta, n)) << q;
        prints.insert(lifted_fingerprint(q));
      }
      for (const auto& t : enumerate_rank2(delta, static_cast<std::int64_t>(n))) {
        const bool present = std::find(superset.begin(), superset.end(), normalize_candidate(t.form())) != superset.end();
        ASSERT_TRUE(present || prints.count(lifted_fingerprint(t.form())) > 0) << delta << " " << t.form();
      }
    }
}

TEST(Superset, NineTenSizeReductionClosure) {
  std::set<Fingerprint> want;
  for (const auto& t : enumerate_rank2(33, 2)) want.insert(lifted_fingerprint(t.form()));
  std::set<Fingerprint> got;
  for (const auto& q : enumerate_rank_r_superset(2, 33, 2)) got.insert(lifted_fingerprint(q));
  EXPECT_EQ(got, want);
}

TEST(Superset, ElevenA365Survivors) {
  const std::vector<IntMatrix> survivors{
      {{3, 2, 0}, {2, 27, 26}, {0, 26, 27}},
      {{11, 4, -6}, {4, 7, 4}, {-6, 4, 11}},
      {{19, 18, 18}, {18, 19, 16}, {18, 16, 19}},
      {{3, 0, -2}, {0, 3, 0}, {-2, 0, 7}},
  };
  const auto superset = enumerate_rank_r_superset(3, 51, 3, {true, 1});
  std::set<Fingerprint> prints;
  for (const auto& q : superset) {
    ASSERT_TRUE(props::is_valid_candidate(q, 51, 3)) << q;
    prints.insert(lifted_fingerprint(q));
  }
  EXPECT_EQ(prints.size(), superset.size());
  for (const auto& q : survivors) {
    EXPECT_TRUE(props::is_valid_candidate(q, 51, 3)) << q;
    EXPECT_EQ(prints.count(lifted_fingerprint(q)), 1u) << q;
  }
}

TEST(Superset, RankThreeOracle) {
  const auto r = props::rank3_superset_oracle(45);
  EXPECT_GT(r.cases, 0u);
  EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(Normalize, PreservesClassData) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 3;
    IntMatrix q = oracle::random_identity_mod2(rng, r, 5);
    if (!is_positive_definite(q)) continue;
    const IntMatrix moved = congruence(oracle::random_unimodular(rng, r, 6, true), q);
    const IntMatrix norm = normalize_candidate(moved);
    ASSERT_TRUE(is_identity_mod2(norm));
    ASSERT_EQ(det_exact(norm), det_exact(q));
    ASSERT_EQ(diag_mod4_census(norm), diag_mod4_census(q));
    ASSERT_EQ(lifted_fingerprint(norm), lifted_fingerprint(q));
  }
}

TEST(FilterByGroup, Examples) {
  const auto z39 = AbelianGroup::presented_by(IntMatrix{{6, -3}, {-3, 6}});
  EXPECT_EQ(filter_triples_by_group(enumerate_rank2(27, 1), z39), (Triples{{2, 0, 5}}));
  EXPECT_TRUE(filter_by_group({}, z39).empty());
  const auto z33 = AbelianGroup::presented_by(IntMatrix{{4, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 4}});
  EXPECT_EQ(filter_triples_by_group(enumerate_rank2(33, 2), z33), (Triples{{2, 0, 6}, {4, 2, 4}}));
  const std::vector<IntMatrix> forms{IntMatrix{{3, 0}, {0, 9}}, IntMatrix{{1, 0}, {0, 27}}};
  EXPECT_EQ(filter_by_group(forms, z39), (std::vector<IntMatrix>{IntMatrix{{3, 0}, {0, 9}}}));
}
