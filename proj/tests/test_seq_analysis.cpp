#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stableseq/corpus.hpp"
#include "stableseq/seq_analysis.hpp"

using namespace stableseq;

namespace {

IndSetSequence seq_of(std::initializer_list<long> v) {
  IndSetSequence s;
  for (long x : v)
    s.counts.emplace_back(x);
  return s;
}

IndSetSequence seq_of(const std::vector<long> &v) {
  IndSetSequence s;
  for (long x : v)
    s.counts.emplace_back(x);
  return s;
}

/// No valley a_i > a_j < a_k with i < j < k.
bool unimodal_oracle(const std::vector<long> &a) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    bool left = false, right = false;
    for (std::size_t i = 0; i < j; ++i)
      left = left || a[i] > a[j];
    for (std::size_t k = j + 1; k < a.size(); ++k)
      right = right || a[k] > a[j];
    if (left && right)
      return false;
  }
  return true;
}

bool witness_violates(const IndSetSequence &s, Direction kind,
                      const std::pair<std::size_t, std::size_t> &w) {
  return kind == Direction::Increasing ? s.counts[w.first] > s.counts[w.second]
                                       : s.counts[w.first] < s.counts[w.second];
}

} // namespace

TEST(SStep, Examples) {
  auto inc = seq_of({1, 2, 5, 9});
  EXPECT_TRUE(check_sstep(inc, Direction::Increasing, 0, 3, 1).holds);

  auto aems = seq_of({1, 49, 48, 64});
  auto r = check_sstep(aems, Direction::Increasing, 0, 3, 1);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, std::make_pair(std::size_t{1}, std::size_t{2}));
  EXPECT_TRUE(check_sstep(aems, Direction::Increasing, 0, 3, 2).holds);
  EXPECT_TRUE(check_sstep(aems, Direction::Decreasing, 0, 3, 4).holds);
}

TEST(SStep, TiesAreNonStrict) {
  auto flat = seq_of({3, 3, 3});
  EXPECT_TRUE(check_sstep(flat, Direction::Increasing, 0, 2, 1).holds);
  EXPECT_TRUE(check_sstep(flat, Direction::Decreasing, 0, 2, 1).holds);
  EXPECT_FALSE(check_sstep(flat, Direction::Increasing, 0, 2, 1, Strictness::Strict).holds);
}

TEST(Unimodal, ClawCompositeIsNot) {
  auto v = check_unimodal(seq_of({1, 49, 48, 64}));
  EXPECT_FALSE(v.unimodal);
  EXPECT_EQ(v.mode, 3u);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(*v.witness, std::make_pair(std::size_t{1}, std::size_t{2}));
}

TEST(Unimodal, AgreesWithValleyOracle) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> val(0, 4);
  std::uniform_int_distribution<int> len(1, 9);
  for (int i = 0; i < 500; ++i) {
    std::vector<long> a(static_cast<std::size_t>(len(rng)));
    for (auto &x : a)
      x = val(rng);
    auto s = seq_of(a);
    auto v = check_unimodal(s);
    EXPECT_EQ(v.unimodal, unimodal_oracle(a)) << i;
    auto up = check_sstep(s, Direction::Increasing, 0, v.mode, 1);
    auto down = check_sstep(s, Direction::Decreasing, v.mode, a.size() - 1, 1);
    EXPECT_EQ(up.holds && down.holds, v.unimodal);
    if (v.witness) {
      const auto [p, q] = *v.witness;
      EXPECT_LT(p, q);
      Direction kind = q <= v.mode ? Direction::Increasing : Direction::Decreasing;
      EXPECT_TRUE(witness_violates(s, kind, *v.witness)) << i;
    }
    for (auto kind : {Direction::Increasing, Direction::Decreasing})
      for (std::size_t step = 1; step <= 3; ++step) {
        auto rep = check_sstep(s, kind, 0, a.size() - 1, step);
        if (rep.witness) {
          EXPECT_GE(rep.witness->second - rep.witness->first, step);
          EXPECT_TRUE(witness_violates(s, kind, *rep.witness));
        }
      }
  }
}

TEST(SStep, VacuousWhenStepTooLong) {
  auto s = seq_of({5, 1, 7, 0});
  EXPECT_TRUE(check_sstep(s, Direction::Increasing, 0, 3, 4).holds);
  EXPECT_TRUE(check_sstep(s, Direction::Decreasing, 1, 2, 2).holds);
}

TEST(PropertyBGS, Examples) {
  auto q4 = count_by_size(hypercube(4));
  EXPECT_TRUE(check_property_bgs(q4, 8, 0, mpq_class(1, 5), 1).holds);
  auto sym = seq_of({1, 4, 6, 4, 1});
  EXPECT_TRUE(check_property_bgs(sym, 4, 0, 0, 1).holds);
  auto dip = seq_of({1, 4, 3, 6, 4, 1});
  EXPECT_FALSE(check_property_bgs(dip, 5, 0, 0, 1).holds);
  EXPECT_THROW(check_property_bgs(seq_of({1, 49, 48, 64}), mpq_class(49, 2), 0, 0, 1),
               InvalidArgument);
}

TEST(PropertyBGS, MonotoneInStepAndParameters) {
  const mpq_class grid[] = {0, mpq_class(1, 10), mpq_class(1, 4)};
  for (const auto &c : regular_bipartite_corpus()) {
    auto seq = count_by_size(c.graph);
    mpq_class n(static_cast<unsigned long>(c.graph.size() / 2));
    for (const auto &beta : grid)
      for (const auto &gamma : grid)
        for (std::size_t s = 1; s <= 4; ++s) {
          if (!check_property_bgs(seq, n, beta, gamma, s).holds)
            continue;
          EXPECT_TRUE(check_property_bgs(seq, n, beta, gamma, s + 1).holds) << c.spec;
          for (const auto &b2 : grid)
            for (const auto &g2 : grid)
              if (b2 >= beta && g2 >= gamma) {
                EXPECT_TRUE(check_property_bgs(seq, n, b2, g2, s).holds) << c.spec;
              }
        }
  }
}

TEST(FinalThird, Examples) {
  auto v = check_final_third(seq_of({1, 8, 16, 8, 2}));
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.start, 3u);
  EXPECT_TRUE(check_final_third(seq_of({1, 5, 9, 9, 9, 9, 9})).holds);
  auto bad = check_final_third(seq_of({1, 5, 3, 2, 4}));
  EXPECT_FALSE(bad.holds);
  ASSERT_TRUE(bad.witness);
  EXPECT_EQ(*bad.witness, std::make_pair(std::size_t{3}, std::size_t{4}));
}

TEST(FinalThird, HoldsOnSmallBipartiteGraphs) {
  for (const auto &g : bipartite_sample(12, 9, 4, 99)) {
    auto seq = count_by_size(g.graph);
    EXPECT_TRUE(check_final_third(seq).holds) << g.label;
  }
}

TEST(Transition, PredictedLimits) {
  EXPECT_NEAR(transition_limit(0).mid(), std::exp(0.5), 1e-15);
  EXPECT_NEAR(transition_limit(40).mid(), 1.0, 1e-30);
  EXPECT_TRUE(certainly_less(transition_limit(1), transition_limit(0)));
  EXPECT_EQ(transition_coordinate(5, 8), 0);
  EXPECT_EQ(transition_coordinate(5, 16), mpq_class(5, 2));
}

TEST(Transition, ExactRatioAtFiveCube) {
  auto q5 = count_by_size(hypercube(5));
  // i_8(Q_5) / (2 C(16, 8)) = 44240 / 25740.
  Interval r = transition_ratio_log2(5, 8, q5.counts[8]);
  EXPECT_TRUE(r.overlaps(log2_exact(mpq_class(44240) / 25740)));
  EXPECT_GT(r.mid(), 0);
  EXPECT_THROW(transition_ratio_log2(5, 17, 1), InvalidArgument);
  EXPECT_THROW(transition_ratio_log2(5, 3, 0), InvalidArgument);
}
