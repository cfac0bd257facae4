#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "properties.hpp"
#include "unknot/corrections.hpp"
#include "unknot/quadforms.hpp"

using namespace unknot;

TEST(PositiveDefinite, Examples) {
  EXPECT_TRUE(is_positive_definite(IntMatrix::identity(2)));
  EXPECT_TRUE(is_positive_definite(IntMatrix{{2, 1}, {1, 2}}));
  EXPECT_FALSE(is_positive_definite(IntMatrix{{1, 2}, {2, 1}}));
  EXPECT_THROW(is_positive_definite(IntMatrix{{1, 2}, {0, 1}}), not_symmetric_error);
}

TEST(Lift, Examples) {
  EXPECT_EQ(lift_tilde(IntMatrix{{3}}), (IntMatrix{{2, 1}, {1, 2}}));
  EXPECT_EQ(lift_tilde(IntMatrix{{3, 0}, {0, 11}}),
            (IntMatrix{{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 6, 1}, {0, 0, 1, 2}}));
  EXPECT_EQ(lift_tilde(IntMatrix{{7, 4}, {4, 7}}),
            (IntMatrix{{4, 1, 2, 0}, {1, 2, 0, 0}, {2, 0, 4, 1}, {0, 0, 1, 2}}));
  EXPECT_THROW(lift_tilde(IntMatrix{{2, 0}, {0, 3}}), parity_error);
  EXPECT_THROW(lift_tilde(IntMatrix{{3, 1}, {1, 3}}), parity_error);
}

TEST(Census, Examples) {
  EXPECT_EQ(diag_mod4_census(IntMatrix{{3, 0}, {0, 11}}), 2u);
  EXPECT_EQ(diag_mod4_census(IntMatrix{{3, 0}, {0, 9}}), 1u);
  EXPECT_EQ(diag_mod4_census(IntMatrix::identity(3)), 0u);
  EXPECT_EQ(diag_mod4_census(IntMatrix{{-1}}), 1u);
  EXPECT_THROW(diag_mod4_census(IntMatrix{{2}}), parity_error);
}

TEST(Census, InvariantUnderEvenMovesAndPermutations) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t r = 1 + trial % 4;
    const IntMatrix q = oracle::random_identity_mod2(rng, r, 6);
    IntMatrix p = oracle::random_unimodular(rng, r, 10, true);
    // a permutation is also a signed-identity-mod-2 frame
    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMatrix s(r, r);
    for (std::size_t i = 0; i < r; ++i) s(i, perm[i]) = 1;
    p = s * p;
    const IntMatrix moved = congruence(p, q);
    ASSERT_TRUE(is_identity_mod2(moved));
    ASSERT_EQ(diag_mod4_census(moved), diag_mod4_census(q)) << q << " via " << p;
  }
}

TEST(Lift, MinorIdentities) {
  const auto r = props::minor_identities(32, 1000);
  EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(FormCandidate, Fields) {
  const auto c = FormCandidate::from(IntMatrix{{7, 4}, {4, 7}});
  EXPECT_EQ(c.neg_count, 2u);
  EXPECT_EQ(det_exact(c.lift), det_exact(c.form));
  EXPECT_EQ((Rank2Triple{4, 2, 4}.form()), (IntMatrix{{7, 4}, {4, 7}}));
}

TEST(ReduceBasis, Examples) {
  const auto id = reduce_basis(IntMatrix::identity(3));
  EXPECT_EQ(id.form, IntMatrix::identity(3));
  EXPECT_EQ(id.transform, IntMatrix::identity(3));

  const auto two = reduce_basis(IntMatrix{{10, 9}, {9, 10}});
  EXPECT_LE(two.form(0, 0), 10);
  EXPECT_LE(two.form(1, 1), 10);
  EXPECT_LE(abs(two.form(0, 1)), 5);
  EXPECT_EQ(congruence(two.transform, IntMatrix{{10, 9}, {9, 10}}), two.form);
}

TEST(ReduceBasis, LiftOfNineteenEighteenForm) {
  const IntMatrix lifted = lift_tilde(IntMatrix{{19, 18, 18}, {18, 19, 16}, {18, 16, 19}});
  EXPECT_EQ(lifted, (IntMatrix{{10, 1, 9, 0, 9, 0},
                               {1, 2, 0, 0, 0, 0},
                               {9, 0, 10, 1, 8, 0},
                               {0, 0, 1, 2, 0, 0},
                               {9, 0, 8, 0, 10, 1},
                               {0, 0, 0, 0, 1, 2}}));
  EXPECT_EQ(diagonal_product(lifted), 8000);
  const auto rb = reduce_basis(lifted);
  EXPECT_EQ(rb.form, (IntMatrix{{10, 1, -1, 0, -1, 0},
                                {1, 2, -1, 0, -1, 0},
                                {-1, -1, 2, 1, 0, 0},
                                {0, 0, 1, 2, 0, 0},
                                {-1, -1, 0, 0, 2, 1},
                                {0, 0, 0, 0, 1, 2}}));
  EXPECT_EQ(diagonal_product(rb.form), 320);
  EXPECT_EQ(characteristic_box(rb.form).size(), 320);
}

TEST(ReduceBasis, TransformIsExactAndUnimodular) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 1 + trial % 5;
    const IntMatrix base = oracle::random_odd_form(rng, r, 6);
    const IntMatrix q = congruence(oracle::random_unimodular(rng, r, 8), base);
    const auto rb = reduce_basis(q);
    ASSERT_EQ(congruence(rb.transform, q), rb.form);
    ASSERT_EQ(abs(det_exact(rb.transform)), 1);
    ASSERT_EQ(det_exact(rb.form), det_exact(q));
    ASSERT_LE(diagonal_product(rb.form), diagonal_product(q));
  }
}
