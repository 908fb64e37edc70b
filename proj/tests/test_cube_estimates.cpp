#include <gtest/gtest.h>

#include <cmath>

#include "stableseq/cube_estimates.hpp"
#include "stableseq/cube_structure.hpp"

using namespace stableseq;

namespace {

mpz_class Z(unsigned long v) { return mpz_class(v); }

// Grid of 50 t values spread over range123 at dimension d.
std::vector<mpz_class> upper_range_grid(int d) {
  const mpz_class N = cube_half(d);
  const mpz_class lo = upper_range_start(d).ceil_hi();
  std::vector<mpz_class> out;
  for (unsigned long i = 0; i < 50; ++i)
    out.push_back(lo + (N - 1 - lo) * i / 49);
  return out;
}

} // namespace

TEST(Activity, LambdaOfT) {
  for (int d = 2; d <= 12; ++d)
    EXPECT_EQ(lambda_of_t(d, pow2(static_cast<unsigned long>(d - 2))), 1);
  EXPECT_EQ(lambda_of_t(5, Z(8)), 1);
  EXPECT_EQ(lambda_of_t(5, Z(4)), mpq_class(1, 3));
  EXPECT_EQ(lambda_of_t(5, Z(0)), 0);
  EXPECT_THROW(lambda_of_t(5, Z(16)), InvalidArgument);
}

TEST(Activity, SetWeight) {
  EXPECT_EQ(set_weight(mpq_class(3, 7), 0, 0), 1);
  for (unsigned long d = 2; d <= 6; ++d)
    for (unsigned long k = 1; k <= 4; ++k)
      EXPECT_EQ(set_weight(1, k, d * k), 1 / mpq_class(pow2(d * k)));
  EXPECT_TRUE(set_weight_ln(2, 3, 4).contains(0) == false);
  EXPECT_NEAR(set_weight_ln(2, 3, 4).mid(), 3 * std::log(2.0) - 4 * std::log(3.0), 1e-14);
}

TEST(Activity, WeightOfSparseSetsFactorises) {
  // F_{lambda(t)}(k, dk) = (t/N (1 - t/N)^{d-1})^k.
  for (int d = 2; d <= 10; ++d) {
    const mpz_class N = cube_half(d);
    for (mpz_class t = 1; t < N; t += 1 + N / 7) {
      mpq_class x(t, N);
      x.canonicalize();
      mpq_class base = x * pow_q(1 - x, static_cast<unsigned long>(d - 1));
      for (unsigned long k = 0; k <= 5; ++k)
        EXPECT_EQ(set_weight(lambda_of_t(d, t), k, k * d), pow_q(base, k)) << d << " " << t;
    }
  }
}

TEST(WindowExponent, DecreasesPastTheTurningPoint) {
  for (int d : {8, 10, 12}) {
    const mpz_class N = cube_half(d);
    mpq_class start(N - 1, d - 1);
    for (mpz_class t = ceil_q(start); t + 1 <= N; ++t)
      EXPECT_GE(window_exponent_exact(d, t), window_exponent_exact(d, t + 1)) << d << " " << t;
    EXPECT_TRUE(window_exponent(d, N / 3).contains(window_exponent_exact(d, N / 3)));
  }
}

TEST(CutOff, Values) {
  // At t = 2^{d-2} the exponent is exactly 1/2, so f = ceil(5^7 e / 2).
  const auto expected = static_cast<long>(std::ceil(78125.0L * std::exp(1.0L) / 2));
  EXPECT_EQ(expected, 106183);
  for (int d : {20, 40, 60})
    EXPECT_EQ(sparse_cutoff(d, pow2(static_cast<unsigned long>(d - 2))), expected);
  for (int d = 2; d <= 30; ++d)
    EXPECT_EQ(sparse_cutoff(d, cube_half(d)), d);
  const int d = 10;
  const mpz_class N = cube_half(d);
  for (mpz_class t = ceil_q(mpq_class(N - 1, d - 1)); t < N; ++t) {
    EXPECT_GE(sparse_cutoff(d, t), sparse_cutoff(d, t + 1));
    EXPECT_GE(sparse_cutoff(d, t), d);
  }
  EXPECT_THROW(sparse_cutoff(d, Z(0)), InvalidArgument);
}

TEST(SumBounds, ClosedForms) {
  for (int d = 2; d <= 12; ++d) {
    // lambda = 1: 1/2 + 4 d^2 2^{-d}.
    mpq_class expect = mpq_class(1, 2) + mpq_class(4 * d * d) / mpq_class(pow2(d));
    EXPECT_TRUE(small_sum_bound(d, 1).lnBound.contains(expect)) << d;
    // k = 1: 2^d lambda / (1 + lambda)^d.
    for (const mpq_class &lam : {mpq_class(1, 2), mpq_class(1), mpq_class(2)}) {
      mpq_class v = mpq_class(pow2(d)) * lam / pow_q(1 + lam, static_cast<unsigned long>(d));
      EXPECT_TRUE(linked_sum_bound(d, lam, 1).lnBound.overlaps(log(Interval(v)))) << d;
    }
  }
  EXPECT_THROW(small_sum_bound(4, 0), InvalidArgument);
  EXPECT_THROW(linked_sum_bound(4, 1, 0), InvalidArgument);
}

TEST(SumBounds, FirstTermDominatesForLargeActivity) {
  for (int d = 20; d <= 40; ++d) {
    Interval first = Interval(1L) * pow(Interval(mpq_class(2, 3)), static_cast<unsigned long>(d));
    double ratio = small_sum_bound(d, 2).lnBound.mid() / first.mid();
    EXPECT_NEAR(ratio, 1.0, 0.05) << d;
  }
}

TEST(SumBounds, LinkedSixTermForm) {
  const int d = 30;
  const mpq_class lam = 1;
  Interval expect = Interval(5L) + Interval(10L) * log(Interval(30L)) +
                    Interval(30L) * Interval::ln2() + set_weight_ln(lam, 6, 6 * d - 60);
  EXPECT_TRUE(linked_sum_bound(d, lam, 6).lnBound.overlaps(expect));
}

TEST(SumBounds, LiteralSumsAgainstBounds) {
  // Frozen outcome: the small-set bound holds at d = 4, 5; the k = 1 linked
  // bound fails at small d for lambda >= 1 (and at d = 5 for lambda = 1/2).
  const mpq_class lambdas[] = {mpq_class(1, 2), 1, 2};
  for (int d : {4, 5}) {
    auto small = small_set_profile(d, SmallPredicate::Small);
    auto linked = small_set_profile(d, SmallPredicate::SmallTwoLinked);
    for (const auto &lam : lambdas) {
      Interval s = log(Interval(small.weighted_sum(lam)));
      EXPECT_TRUE(certainly_le(s, small_sum_bound(d, lam).lnBound)) << d << " " << lam;
      for (long k : {2L, 6L}) {
        mpq_class sum = linked.weighted_sum(lam, static_cast<std::size_t>(k));
        if (sum > 0) {
          EXPECT_TRUE(certainly_le(log(Interval(sum)), linked_sum_bound(d, lam, k).lnBound))
              << d << " " << lam << " " << k;
        }
      }
      Interval one = log(Interval(linked.weighted_sum(lam, 1)));
      bool fails = certainly_less(linked_sum_bound(d, lam, 1).lnBound, one);
      bool expectFail = !(d == 4 && lam == mpq_class(1, 2));
      EXPECT_EQ(fails, expectFail) << d << " " << lam;
    }
  }
}

TEST(ErrorFactors, LowerNotApplicableAtSmallD) {
  EXPECT_THROW(lower_error_factor(5, Z(8)), NotApplicable);
  auto e = cube_window(5, Z(8));
  EXPECT_FALSE(e.e1Log2);
  EXPECT_FALSE(e.e1Note.empty());
  EXPECT_THROW(lower_error_factor(20, cube_half(20)), NotApplicable);
}

TEST(ErrorFactors, UpperStaysFiniteInLogForm) {
  auto u = upper_error_factor(20, Z(100000));
  EXPECT_TRUE(std::isfinite(u.lnE2.hi()));
  EXPECT_GE(u.lnE2.lo(), u.lnTypeI.lo());
  EXPECT_GE(u.lnE2.lo(), u.lnTypeII.lo());
  EXPECT_GE(u.lnE2.lo(), u.lnTypeIII.lo());
}

TEST(ErrorFactors, TypeTwoIsNegligible) {
  for (int d = 10; d <= 60; d += 5) {
    auto u = upper_error_factor(d, pow2(static_cast<unsigned long>(d - 2)));
    EXPECT_TRUE(certainly_less(u.lnTypeII, u.lnTypeI)) << d;
  }
}

TEST(ErrorFactors, WindowIsOrdered) {
  for (int d = 20; d <= 100; d += 8)
    for (const auto &t : upper_range_grid(d)) {
      auto e = cube_window(d, t);
      ASSERT_TRUE(e.fCut);
      EXPECT_GE(*e.fCut, d);
      if (e.e1Log2 && e.e2Log2) {
        EXPECT_TRUE(certainly_le(*e.e1Log2, *e.e2Log2)) << d << " " << t;
      }
      if (e.e1Log2) {
        EXPECT_LE(e.e1Log2->lo(), 0);
      }
      if (e.e2Log2) {
        EXPECT_GE(e.e2Log2->hi(), 0);
      }
    }
}

TEST(ErrorFactors, CentralEstimate) {
  // log2 of 2 C(N, t) e^{mu}.
  const int d = 12;
  const mpz_class t = 700;
  Interval expect = Interval(1L) + log2_binomial(cube_half(d), t) +
                    window_exponent(d, t) / Interval::ln2();
  EXPECT_TRUE(cube_window(d, t).centralLog2.overlaps(expect));
}

TEST(Ranges, QuarterPointThreshold) {
  // t = 2^{d-2} sits in range123 from d = 57 on (log taken base 2).
  for (int d = 13; d <= 120; ++d) {
    auto tag = classify_range(d, pow2(static_cast<unsigned long>(d - 2)));
    EXPECT_EQ(tag == RangeTag::UpperRange, d >= 57) << d;
  }
}

TEST(Ranges, Tags) {
  for (int d : {20, 64})
    EXPECT_EQ(classify_range(d, cube_half(d) - 1), RangeTag::UpperRange);
  EXPECT_EQ(classify_range(64, Z(0)), RangeTag::Degenerate);
  EXPECT_EQ(classify_range(64, cube_half(64)), RangeTag::UpperRange);
  EXPECT_EQ(classify_range(64, cube_half(64) + 1), RangeTag::Degenerate);
  EXPECT_EQ(classify_range(64, Z(1)), RangeTag::Below);
  // With c = 1 the lower range is empty at d = 64 (log2 64 / 64^{1/3} > 1).
  const mpq_class c(1, 10);
  const mpz_class mid = ((lower_range_start(64, c).ceil_hi() + upper_range_start(64).floor_lo()) / 2);
  EXPECT_EQ(classify_range(64, mid, c), RangeTag::LowerRange);
  EXPECT_NE(classify_range(64, mid), RangeTag::LowerRange);
  EXPECT_STREQ(to_string(RangeTag::UpperRange), "range123");
  EXPECT_STREQ(to_string(RangeTag::LowerRange), "range4");
}

TEST(Ranges, ConstantShiftsLowerStart) {
  EXPECT_TRUE(certainly_less(lower_range_start(64, 1), lower_range_start(64, 2)));
}

TEST(Cases, FrozenThresholds) {
  auto c2 = unimodality_case(2);
  ASSERT_TRUE(c2.d0);
  EXPECT_EQ(*c2.d0, 23);
  EXPECT_TRUE(c2.monotoneTail);
  EXPECT_TRUE(c2.holds[50 - c2.dMin]);
  auto c3 = unimodality_case(3);
  ASSERT_TRUE(c3.d0);
  EXPECT_EQ(*c3.d0, 2);
  auto c4 = unimodality_case(4);
  EXPECT_FALSE(c4.d0);
  EXPECT_FALSE(c4.holds.back());
  EXPECT_THROW(unimodality_case(5), InvalidArgument);
}

TEST(Cases, ThirdCaseAuxiliaryThreshold) {
  for (int d = 30; d <= 60; ++d)
    EXPECT_FALSE(case3_auxiliary(d).actualHolds) << d;
  EXPECT_FALSE(case3_auxiliary(388).actualHolds);
  for (int d = 389; d <= 420; ++d)
    EXPECT_TRUE(case3_auxiliary(d).actualHolds) << d;
  for (int d = 30; d <= 420; d += 13)
    EXPECT_TRUE(certainly_le(case3_auxiliary(d).actual, case3_auxiliary(d).viaSlope)) << d;
}

TEST(Cases, FourthCaseAuxiliary) {
  for (int d = 4; d <= 120; ++d)
    EXPECT_TRUE(case4_auxiliary(d).actualHolds) << d;
}

TEST(Cases, SlopeGuard) {
  const int d = 12;
  auto r = step_ratio_check(d, cube_half(d) - 1, Interval(2L));
  EXPECT_FALSE(r.slopeApplicable);
  EXPECT_FALSE(r.slopeHolds);
  EXPECT_TRUE(step_ratio_check(d, cube_half(d) - 2, Interval(2L)).slopeApplicable);
}
