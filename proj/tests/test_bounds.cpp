#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "stableseq/bounds.hpp"
#include "stableseq/corpus.hpp"

using namespace stableseq;

TEST(Entropy, Values) {
  EXPECT_TRUE(entropy(mpq_class(1, 2)).value.contains(1));
  EXPECT_TRUE(entropy(mpq_class(0)).value.contains(0));
  EXPECT_TRUE(entropy(mpq_class(1)).value.contains(0));
  Interval quarter = entropy(mpq_class(1, 4)).value;
  Interval closed = Interval(2L) - Interval(mpq_class(3, 4)) * log2(Interval(3L));
  EXPECT_TRUE(quarter.overlaps(closed));
  EXPECT_NEAR(quarter.mid(), 0.811278124459, 1e-12);
  for (int k = 1; k < 20; ++k)
    EXPECT_NEAR(entropy(mpq_class(k, 20)).value.mid(), oracle::entropy(k / 20.0), 1e-12);
  EXPECT_THROW(entropy(mpq_class(3, 2)), InvalidArgument);
}

TEST(CountBounds, EntropyUpper) {
  Interval u = entropy_upper_log2(16, 4, 4);
  EXPECT_TRUE(u.contains(10));
  EXPECT_LE(count_by_size(hypercube(4)).counts[4], 1024);
  EXPECT_TRUE(entropy_upper_log2(16, 4, 0).contains(2));
  EXPECT_GE(entropy_upper_log2(16, 4, 0).lo(), 0);
}

TEST(CountBounds, HalfBinomialLower) {
  auto r = half_binomial_lower(16, 4);
  EXPECT_EQ(r.binom, 70);
  EXPECT_NEAR(r.exactLog2.mid(), std::log2(70.0), 1e-12);
  EXPECT_TRUE(r.weakenedLog2.contains(6));
  EXPECT_TRUE(certainly_le(r.weakenedLog2, r.exactLog2));
  EXPECT_TRUE(half_binomial_lower(16, 0).exactLog2.contains(0));
  EXPECT_EQ(half_binomial_lower(7, 2).binom, 3);
  EXPECT_THROW(half_binomial_lower(16, 9), InvalidArgument);
}

TEST(CountBounds, OptimizedUpperAgrees) {
  EXPECT_TRUE(optimized_count_upper(16, 4, 4).contains(10));
  for (std::uint64_t n : {16u, 24u, 64u, 1000u})
    for (std::uint64_t d : {2u, 3u, 8u}) {
      EXPECT_GE(optimized_count_upper(n, d, 1).hi(), std::log2(double(n)) - 1e-9);
      for (std::uint64_t t = 1; 2 * t < n; t += 1 + n / 17)
        EXPECT_TRUE(optimized_count_upper(n, d, t).overlaps(entropy_upper_log2(n, d, t)))
            << n << " " << d << " " << t;
    }
}

TEST(PartitionBounds, RegularIsTightForCompleteBipartite) {
  for (int d = 2; d <= 8; ++d) {
    Interval b = regular_partition_bound(2 * d, d, 1);
    EXPECT_TRUE(b.contains(d + 1));
    mpq_class exact = polynomial_eval(count_by_size(complete_bipartite(d, d)), 1);
    EXPECT_EQ(exact + 1, pow2(static_cast<unsigned long>(d + 1)));
  }
  Interval tiny = regular_partition_bound(16, 4, mpq_class(1, 1000000));
  EXPECT_NEAR(tiny.mid(), 2.0, 1e-4);
  EXPECT_THROW(regular_partition_bound(16, 4, 0), InvalidArgument);
}

TEST(PartitionBounds, AlmostRegularConstant) {
  EXPECT_EQ(almost_regular_constant(1), 256);
  EXPECT_EQ(almost_regular_constant(127), 256);
  EXPECT_EQ(almost_regular_constant(mpq_class(1, 127)), 256);
  EXPECT_EQ(almost_regular_constant(255), 512);
  EXPECT_EQ(almost_regular_constant(mpq_class(1, 255)), 512);
}

TEST(PartitionBounds, AlmostRegularExamples) {
  // lambda = 1, d-regular balanced: n + 8 n / d bits.
  Graph q = hypercube(4);
  Interval b = almost_regular_partition_bound(q, require_bipartition(q), 4, 1);
  EXPECT_TRUE(b.contains(24));
  EXPECT_TRUE(certainly_less(log2_exact(mpq_class(743)), b));
  Graph k = complete_bipartite(5, 5);
  EXPECT_TRUE(almost_regular_partition_bound(k, require_bipartition(k), 5, 1).contains(5 + 8));
}

TEST(PartitionBounds, DominateExactPolynomialOnCorpus) {
  const mpq_class lambdas[] = {mpq_class(1, 4), mpq_class(1, 2), 1, 2, 4};
  for (const auto &c : regular_bipartite_corpus()) {
    auto seq = count_by_size(c.graph);
    auto parts = require_bipartition(c.graph);
    for (const auto &lam : lambdas) {
      Interval exact = log2_exact(polynomial_eval(seq, lam));
      EXPECT_TRUE(certainly_le(exact, regular_partition_bound(c.graph.size(), c.degree, lam)))
          << c.spec;
      EXPECT_TRUE(certainly_le(
          exact, almost_regular_partition_bound(c.graph, parts, mpq_class(c.degree), lam)))
          << c.spec;
    }
  }
}

TEST(PenaltyCoefficient, Branches) {
  const mpq_class n = 1024;
  EXPECT_TRUE(count_penalty_coefficient(n / 2, n).contains(8));
  EXPECT_TRUE(count_penalty_coefficient(n / 256, n).contains(9));
  EXPECT_TRUE(count_penalty_coefficient(n * 255 / 256, n).contains(9));
  EXPECT_THROW(count_penalty_coefficient(0, n), InvalidArgument);
}

TEST(Growth, CertifiedRegularExamples) {
  EXPECT_FALSE(growth_certified_regular(1024, 32, 100, 100));
  EXPECT_TRUE(growth_certified_regular(1024, 32, 100, 200));
  EXPECT_FALSE(growth_certified_regular(1024, 4, 500, 501));
}

TEST(Growth, RegularStepBound) {
  auto r = regular_step_bound(1024, 32, mpq_class(1, 2));
  // Scan oracle: least s at the right end that passes.
  std::uint64_t s = 1;
  while (!growth_certified_regular(1024, 32, r.right - s, r.right))
    ++s;
  EXPECT_EQ(r.s, s);
  EXPECT_EQ(r.s, 23u);
  EXPECT_FALSE(r.vacuous);
  EXPECT_LE(static_cast<double>(r.s), r.analytic.hi());
  EXPECT_NEAR(r.slopeConstant.mid(), 1 / std::log2(3.0), 1e-12);
}

TEST(Growth, StepDoesNotGrowWithDegree) {
  for (std::uint64_t n : {256u, 1024u, 4096u}) {
    std::uint64_t prev = UINT64_MAX;
    for (std::uint64_t d = 4; d <= 256; d *= 2) {
      auto s = regular_step_bound(n, d, mpq_class(1, 10)).s;
      EXPECT_LE(s, prev) << n << " " << d;
      prev = s;
    }
  }
}

TEST(Growth, CertifiedPairsAreRealOnCorpus) {
  for (const auto &c : regular_bipartite_corpus()) {
    auto seq = count_by_size(c.graph);
    const std::uint64_t n = c.graph.size() / 2;
    for (std::uint64_t j = 0; j <= n; ++j)
      for (std::uint64_t l = j + 1; l <= n; ++l)
        if (growth_certified_regular(n, c.degree, j, l)) {
          EXPECT_GT(seq.at(l), seq.at(j)) << c.spec << " " << j << " " << l;
        }
  }
}

TEST(Sandwich, HoldsOnCorpus) {
  auto corpus = regular_bipartite_corpus();
  EXPECT_GE(corpus.size(), 20u);
  for (const auto &c : corpus) {
    EXPECT_LE(c.graph.size(), 24u);
    auto seq = count_by_size(c.graph);
    auto table = regular_bound_table(c.graph.size(), c.degree, &seq);
    EXPECT_TRUE(sandwich_violations(table).empty()) << c.spec;
  }
}

TEST(Sandwich, DetectsPlantedViolation) {
  auto seq = count_by_size(hypercube(3));
  seq.counts[2] = 5;
  auto low = regular_bound_table(8, 3, &seq);
  auto bad = sandwich_violations(low);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0].t, 2u);
  EXPECT_TRUE(bad[0].lowerSide);
  seq.counts[2] = 1000;
  auto high = sandwich_violations(regular_bound_table(8, 3, &seq));
  ASSERT_EQ(high.size(), 1u);
  EXPECT_FALSE(high[0].lowerSide);
}

TEST(AlmostRegular, StepFromProfile) {
  // s = ceil(C(eps) max{log2 n, n h}); with n h = 2 and n = 16 the log term wins.
  auto s = almost_regular_step(16, mpq_class(1, 8), mpq_class(1, 10));
  Interval c = almost_regular_step_constant(mpq_class(1, 10));
  EXPECT_EQ(mpz_class(static_cast<unsigned long>(s)), (c * Interval(4L)).ceil_hi());
}
