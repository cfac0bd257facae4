#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "properties.hpp"
#include "unknot/linalg.hpp"
#include "unknot/rational.hpp"

using namespace unknot;

TEST(Rational, LowestTermsAndSign) {
  const Rational r(BigInt(6), BigInt(-4));
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(7).str(), "7");
  EXPECT_EQ(Rational::parse("-69/105"), Rational::parse("-23/35"));
  EXPECT_THROW(Rational::parse("1/0"), parse_error);
  EXPECT_THROW(Rational::parse("x"), parse_error);
}

TEST(Rational, ArithmeticAndOrder) {
  const Rational a = Rational::parse("-9/11"), b = Rational::parse("13/11");
  EXPECT_EQ((a + b).str(), "4/11");
  EXPECT_EQ((a * b).str(), "-117/121");
  EXPECT_EQ((b / a).str(), "-13/9");
  EXPECT_LT(a, b);
  EXPECT_TRUE(congruent_mod2(Rational::parse("-9/11"), Rational::parse("13/11")));
  EXPECT_FALSE(congruent_mod2(Rational::parse("-1/3"), Rational::parse("2/3")));
}

TEST(Determinant, Examples) {
  EXPECT_EQ(det_exact(IntMatrix::identity(4)), 1);
  EXPECT_EQ(det_exact(IntMatrix{{4, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 4}}), 33);
  EXPECT_EQ(det_exact(IntMatrix{{6, -3}, {-3, 6}}), 27);
  EXPECT_EQ(det_exact(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_THROW(det_exact(IntMatrix(2, 3)), dimension_error);
}

TEST(Determinant, AgreesWithCofactorExpansion) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-9, 9), size(1, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(size(rng));
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
    ASSERT_EQ(det_exact(m), oracle::cofactor_det(m)) << m;
  }
}

TEST(QuadraticValue, Examples) {
  const BigInt minus1 = -1, one = 1;
  EXPECT_EQ(quadratic_value(IntMatrix{{1}}, std::span<const BigInt>(&minus1, 1)), Rational(1));
  EXPECT_EQ(quadratic_value(IntMatrix{{3}}, std::span<const BigInt>(&one, 1)).str(), "1/3");
  const IntVector xi{-2, 0};
  EXPECT_EQ(quadratic_value(IntMatrix{{2, 1}, {1, 2}}, xi).str(), "8/3");
  EXPECT_THROW(quadratic_value(IntMatrix{{1, 1}, {1, 1}}, xi), singular_form_error);
}

TEST(QuadraticValue, TimesDeterminantIsIntegral) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> entry(-7, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix q = oracle::random_odd_form(rng, 1 + trial % 4, 9);
    IntVector xi(q.rows());
    for (auto& x : xi) x = entry(rng);
    const Rational v = quadratic_value(q, xi) * Rational(det_exact(q));
    ASSERT_TRUE(v.is_integer());
    // agrees with the Gauss-Jordan inverse
    const auto inv = oracle::rational_inverse(q);
    Rational s(0);
    for (std::size_t i = 0; i < xi.size(); ++i)
      for (std::size_t j = 0; j < xi.size(); ++j) s = s + Rational(xi[i]) * inv[i][j] * Rational(xi[j]);
    ASSERT_EQ(s, quadratic_value(q, xi));
  }
}

TEST(Adjugate, ProductIsDeterminantTimesIdentity) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix q = oracle::random_odd_form(rng, 1 + trial % 5, 7);
    const BigInt d = det_exact(q);
    IntMatrix expect(q.rows(), q.rows());
    for (std::size_t i = 0; i < q.rows(); ++i) expect(i, i) = d;
    ASSERT_EQ(q * adjugate(q), expect);
  }
}

TEST(UnimodularInverse, InvertsAndRejects) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix p = oracle::random_unimodular(rng, 4, 12);
    ASSERT_EQ(p * unimodular_inverse(p), IntMatrix::identity(4));
  }
  EXPECT_THROW(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), invalid_parameters_error);
}

TEST(SmithNormalForm, Examples) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).d, IntMatrix::identity(3));
  const auto a = smith_normal_form(IntMatrix{{2, 1}, {1, 2}}).diagonal();
  EXPECT_EQ(a, (std::vector<BigInt>{1, 3}));
  const auto b = smith_normal_form(IntMatrix{{6, -3}, {-3, 6}}).diagonal();
  EXPECT_EQ(b, (std::vector<BigInt>{3, 9}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{6, -3}, {-3, 6}}).invariant_factors(), (std::vector<BigInt>{3, 9}));
  EXPECT_THROW(smith_normal_form(IntMatrix{{1, 2}, {2, 4}}), unsupported_error);
}

TEST(SmithNormalForm, RandomMatricesSatisfyInvariants) {
  const auto r = props::snf_invariants(15, 1000);
  EXPECT_TRUE(r.ok()) << r.summary();
}
