#ifndef STABLESEQ_CUBE_ESTIMATES_HPP
#define STABLESEQ_CUBE_ESTIMATES_HPP

// Analytic estimates for i_t(Q_d).
//
// Throughout, N = 2^{d-1} is the size of each parity class,
// lambda(t) = t/(N - t) is the activity matched to density t, and
// mu(d, t) = t (1 - t/N)^{d-1} is the exponent of the central estimate
//   i_t(Q_d) ~ 2 C(N, t) exp{mu(d, t)}.
// The lower and upper error factors E1 <= 1 <= E2 bracket i_t(Q_d) around
// that central value; each has explicit validity conditions.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "stableseq/combinatorics.hpp"
#include "stableseq/error.hpp"
#include "stableseq/interval.hpp"

namespace stableseq {

inline mpz_class cube_half(int d) {
  if (d < 1)
    throw InvalidArgument("cube dimension must be at least 1");
  return pow2(static_cast<unsigned long>(d - 1));
}

/// lambda(t) = t / (2^{d-1} - t), exact.
inline mpq_class lambda_of_t(int d, const mpz_class &t) {
  const mpz_class half = cube_half(d);
  if (t < 0 || t > half)
    throw InvalidArgument("t outside [0, 2^{d-1}]");
  if (t == half)
    throw InvalidArgument("lambda(t) has a pole at t = 2^{d-1}");
  mpq_class l(t, half - t);
  l.canonicalize();
  return l;
}

/// F_lambda(a, g) = lambda^a (1 + lambda)^{-g}, exact.
inline mpq_class set_weight(const mpq_class &lambda, unsigned long a, unsigned long g) {
  if (lambda <= 0)
    throw InvalidArgument("lambda must be positive");
  return pow_q(lambda, a) / pow_q(1 + lambda, g);
}

/// ln F_lambda(a, g); g may be negative here.
inline Interval set_weight_ln(const mpq_class &lambda, long a, long g) {
  if (lambda <= 0)
    throw InvalidArgument("lambda must be positive");
  return Interval(a) * log(Interval(lambda)) - Interval(g) * log(Interval(mpq_class(1 + lambda)));
}

/// mu(d, t) = t (1 - t/N)^{d-1}, exact.
inline mpq_class window_exponent_exact(int d, const mpz_class &t) {
  const mpz_class half = cube_half(d);
  mpq_class x(t, half);
  x.canonicalize();
  return t * pow_q(1 - x, static_cast<unsigned long>(d - 1));
}

inline Interval window_exponent(int d, const mpz_class &t) {
  const mpz_class half = cube_half(d);
  if (t < 0 || t > half)
    throw InvalidArgument("t outside [0, 2^{d-1}]");
  mpq_class x(t, half);
  x.canonicalize();
  return Interval(t) * pow(Interval(mpq_class(1 - x)), static_cast<unsigned long>(d - 1));
}

/// Cut-off f = max{d, 5^7 e mu(d, t)}, rounded up to an integer. Defined for
/// 0 < t <= 2^{d-1}; at t = 2^{d-1} the exponent vanishes and f = d.
inline mpz_class sparse_cutoff(int d, const mpz_class &t) {
  if (t <= 0 || t > cube_half(d))
    throw InvalidArgument("cut-off needs 0 < t <= 2^{d-1}");
  Interval v = Interval(78125L) * Interval::e() * window_exponent(d, t);
  mpz_class f = v.ceil_hi();
  return f > d ? f : mpz_class(d);
}

// ------------------------------------------------------------ sum bounds

/// Range guard lambda > c log2(d) / d^{1/3} used by the sum bounds.
inline bool activity_in_range(int d, const mpq_class &lambda, const mpq_class &c) {
  Interval thr = Interval(c) * log2(Interval(static_cast<long>(d))) /
                 exp(log(Interval(static_cast<long>(d))) / Interval(3L));
  return certainly_less(thr, Interval(lambda));
}

struct SumBound {
  Interval lnBound; ///< natural log of the bound
  bool inRange = true;
};

/// ln of exp{(lambda/2)(2/(1+lambda))^d + d^2 lambda^2 (1+lambda)^2 2^d / (1+lambda)^{2d}},
/// the bound on the sum of F_lambda(|A|, |N(A)|) over small A in E.
inline SumBound small_sum_bound(int d, const mpq_class &lambda, const mpq_class &c = 1) {
  if (lambda <= 0)
    throw InvalidArgument("lambda must be positive");
  const auto ud = static_cast<unsigned long>(d);
  Interval l(lambda), one(1L), two(2L);
  Interval first = l / two * pow(two / (one + l), ud);
  Interval second = Interval(static_cast<long>(d) * d) * l * l * pow(one + l, 2) *
                    pow(two, ud) / pow(one + l, 2 * ud);
  return {first + second, activity_in_range(d, lambda, c)};
}

/// ln of e^{k-1} d^{2k-2} 2^d F_lambda(k, kd - 2k(k-1)), the bound on the
/// sum over small 2-linked A in E with |A| >= k.
inline SumBound linked_sum_bound(int d, const mpq_class &lambda, long k, const mpq_class &c = 1) {
  if (k < 1)
    throw InvalidArgument("k must be at least 1");
  Interval v = Interval(k - 1) + Interval(2 * k - 2) * log(Interval(static_cast<long>(d))) +
               Interval(static_cast<long>(d)) * Interval::ln2() +
               set_weight_ln(lambda, k, k * d - 2 * k * (k - 1));
  return {v, activity_in_range(d, lambda, c)};
}

// ---------------------------------------------------------- error factors

struct LowerErrorFactor {
  mpz_class f;
  Interval lnE0; ///< ln(1 - 2 (e mu/f)^f e^{-mu})
  Interval lnE1; ///< -3 f^2 / t + lnE0
};

/// E1 = exp{-3f^2/t} E0 with E0 = 1 - 2 (e mu / f)^f exp{-mu}, so that
/// i_t(Q_d) >= 2 C(N, t) exp{mu} E1. Throws NotApplicable unless
/// t <= (3/4)N, f < t/2 and f <= (N - t)/(2d).
inline LowerErrorFactor lower_error_factor(int d, const mpz_class &t) {
  const mpz_class half = cube_half(d);
  if (t <= 0 || t >= half)
    throw NotApplicable("lower error factor needs 0 < t < 2^{d-1}");
  if (4 * t > 3 * half)
    throw NotApplicable("t above (3/4) 2^{d-1}: the trivial lower bound applies instead");
  LowerErrorFactor r;
  r.f = sparse_cutoff(d, t);
  if (!(2 * r.f < t))
    throw NotApplicable("cut-off f = " + r.f.get_str() + " is not below t/2");
  if (2 * d * r.f > half - t)
    throw NotApplicable("cut-off f = " + r.f.get_str() + " exceeds (2^{d-1} - t)/(2d)");
  Interval mu = window_exponent(d, t);
  Interval fI(r.f);
  Interval tail = Interval(2L) * pow(Interval::e() * mu / fI, r.f.get_ui()) * exp(-mu);
  r.lnE0 = log(Interval(1L) - tail);
  r.lnE1 = -(Interval(3L) * fI * fI / Interval(t)) + r.lnE0;
  return r;
}

struct UpperErrorFactor {
  mpz_class f;
  Interval lnTypeI;   ///< A + d^2 f^2 / N
  Interval lnTypeII;  ///< -f ln 3
  Interval lnTypeIII; ///< ln(3 e^5 d^10 2^{3d/2} F(6, 6d - 60)) + A
  Interval lnE2;      ///< ln of the sum of the three terms
  bool inRange = true;
};

/// Natural log of a sum of exponentials, without overflow.
inline Interval log_sum_exp(std::initializer_list<Interval> terms) {
  Interval top = *terms.begin();
  for (const auto &x : terms)
    top = max(top, x);
  // Shift by a point value so that each exponent is <= a small width.
  Interval shift(mpq_class(top.hi_exact()));
  Interval acc(0L);
  for (const auto &x : terms)
    acc += exp(x - shift);
  return shift + log(acc);
}

/// E2 such that i_t(Q_d) <= 2 C(N, t) exp{mu} E2, where
/// A = d^2 t^2 2^d / (N - t)^2 (1 - t/N)^{2d-2}. Kept in log form because
/// the first term overflows any float for moderate d.
inline UpperErrorFactor upper_error_factor(int d, const mpz_class &t, const mpq_class &c = 1) {
  const mpz_class half = cube_half(d);
  if (t <= 0 || t >= half)
    throw NotApplicable("upper error factor needs 0 < t < 2^{d-1}");
  UpperErrorFactor r;
  r.f = sparse_cutoff(d, t);
  const auto ud = static_cast<unsigned long>(d);
  mpq_class x(t, half);
  x.canonicalize();
  Interval dd(static_cast<long>(d)), tI(t), gap(mpz_class(half - t));
  Interval A = dd * dd * tI * tI * pow(Interval(2L), ud) / (gap * gap) *
               pow(Interval(mpq_class(1 - x)), 2 * ud - 2);
  Interval fI(r.f);
  r.lnTypeI = A + dd * dd * fI * fI / Interval(half);
  r.lnTypeII = -(fI * log(Interval(3L)));
  mpq_class lambda = lambda_of_t(d, t);
  r.lnTypeIII = log(Interval(3L)) + Interval(5L) + Interval(10L) * log(dd) +
                Interval(mpq_class(3 * d) / 2) * Interval::ln2() +
                set_weight_ln(lambda, 6, 6L * d - 60) + A;
  r.lnE2 = log_sum_exp({r.lnTypeI, r.lnTypeII, r.lnTypeIII});
  r.inRange = certainly_less(Interval(mpq_class(c * half)) * log2(dd) / exp(log(dd) / Interval(3L)), tI);
  return r;
}

// -------------------------------------------------------------- windows

enum class RangeTag { Degenerate, Below, LowerRange, UpperRange };

inline const char *to_string(RangeTag r) {
  switch (r) {
  case RangeTag::Degenerate:
    return "degenerate";
  case RangeTag::Below:
    return "below";
  case RangeTag::LowerRange:
    return "range4";
  case RangeTag::UpperRange:
    return "range123";
  }
  return "?";
}

/// N (1 - 1/sqrt2 + 2 log2(d)/d), the start of the upper range.
inline Interval upper_range_start(int d) {
  Interval dd(static_cast<long>(d));
  Interval frac = Interval(1L) - Interval(1L) / sqrt(Interval(2L)) + Interval(2L) * log2(dd) / dd;
  return Interval(cube_half(d)) * frac;
}

/// N c log2(d) / d^{1/3}, the start of the lower range.
inline Interval lower_range_start(int d, const mpq_class &c) {
  Interval dd(static_cast<long>(d));
  return Interval(cube_half(d)) * Interval(c) * log2(dd) / exp(log(dd) / Interval(3L));
}

/// Upper range: upper_range_start <= t <= N. Lower range:
/// lower_range_start <= t < upper_range_start. Degenerate: d < 2, t <= 0
/// or t > N.
inline RangeTag classify_range(int d, const mpz_class &t, const mpq_class &c = 1) {
  if (d < 2 || t <= 0 || t > cube_half(d))
    return RangeTag::Degenerate;
  Interval tI(t);
  if (!certainly_less(tI, upper_range_start(d)))
    return RangeTag::UpperRange;
  if (!certainly_less(tI, lower_range_start(d, c)))
    return RangeTag::LowerRange;
  return RangeTag::Below;
}

struct CubeEstimate {
  int d = 0;
  mpz_class t;
  std::optional<mpq_class> lambda;
  Interval centralLog2; ///< log2 of 2 C(N, t) exp{mu}
  std::optional<Interval> e1Log2;
  std::optional<Interval> e2Log2;
  std::string e1Note;
  std::string e2Note;
  std::optional<mpz_class> fCut;
  RangeTag tag = RangeTag::Degenerate;
};

/// Central estimate plus the [E1, E2] window wherever each factor applies.
inline CubeEstimate cube_window(int d, const mpz_class &t, const mpq_class &c = 1) {
  CubeEstimate est;
  est.d = d;
  est.t = t;
  est.tag = classify_range(d, t, c);
  const mpz_class half = cube_half(d);
  if (t < 0 || t > half)
    throw InvalidArgument("t outside [0, 2^{d-1}]");
  if (t < half)
    est.lambda = lambda_of_t(d, t);
  est.centralLog2 = Interval(1L) + log2_binomial(half, t) +
                    window_exponent(d, t) / Interval::ln2();
  if (t > 0)
    est.fCut = sparse_cutoff(d, t);
  try {
    est.e1Log2 = lower_error_factor(d, t).lnE1 / Interval::ln2();
  } catch (const NotApplicable &e) {
    est.e1Note = e.what();
  }
  try {
    est.e2Log2 = upper_error_factor(d, t, c).lnE2 / Interval::ln2();
  } catch (const NotApplicable &e) {
    est.e2Note = e.what();
  }
  return est;
}

// --------------------------------------------------- unimodality windows

struct CaseVerdict {
  std::string name;
  int dMin = 2;
  int dMax = 200;
  std::vector<bool> holds;          ///< holds[d - dMin]
  std::optional<int> d0;            ///< least d with holds on [d, dMax]
  bool monotoneTail = false;        ///< ratio monotone on [d0, dMax]
};

namespace detail {
inline mpq_class two_pow_q(long e) {
  if (e >= 0)
    return mpq_class(pow2(static_cast<unsigned long>(e)));
  return mpq_class(mpz_class(1), pow2(static_cast<unsigned long>(-e)));
}

struct Ratio {
  mpq_class num, den;
};

/// Closing inequalities of the three bounded cases, as num/den.
inline Ratio case_ratio(int which, long d) {
  const mpq_class p = two_pow_q(d), q = two_pow_q(d - 2), h = two_pow_q(d - 1);
  const mpq_class d2 = d * d, d4 = d2 * d2;
  switch (which) {
  case 2:
    return {(1 - 14 * d2 / p) * (q + 5 * d4 + 1), (1 + 4 * d4 / p) * (q - 5 * d4)};
  case 3:
    return {(1 + mpq_class(2) / (d2 * d)) * (q - h / d + 1),
            (1 - mpq_class(1) / (d4 * d)) * (q + h / d)};
  case 4:
    return {(1 + 5 * d4 / p) * (q - 15 * d2 + 1), (1 - 14 * d2 / p) * (q + 15 * d2)};
  default:
    throw InvalidArgument("unknown case");
  }
}
} // namespace detail

/// Exact rational check of a closing inequality for every d in
/// [dMin, dMax]. Case 2 requires num/den > 1, cases 3 and 4 require < 1;
/// both factors must be positive for the ratio to mean anything.
inline CaseVerdict unimodality_case(int which, int dMin = 2, int dMax = 200) {
  CaseVerdict v;
  v.name = "case " + std::to_string(which);
  v.dMin = dMin;
  v.dMax = dMax;
  std::vector<mpq_class> ratios;
  for (int d = dMin; d <= dMax; ++d) {
    auto r = detail::case_ratio(which, d);
    bool ok = r.num > 0 && r.den > 0 && (which == 2 ? r.num > r.den : r.num < r.den);
    v.holds.push_back(ok);
    ratios.push_back(r.den > 0 ? mpq_class(r.num / r.den) : mpq_class(0));
  }
  for (int d = dMax; d >= dMin && v.holds[static_cast<std::size_t>(d - dMin)]; --d)
    v.d0 = d;
  if (v.d0) {
    bool inc = true, dec = true;
    for (int d = *v.d0 + 1; d <= dMax; ++d) {
      const auto &a = ratios[static_cast<std::size_t>(d - 1 - dMin)];
      const auto &b = ratios[static_cast<std::size_t>(d - dMin)];
      inc = inc && a <= b;
      dec = dec && a >= b;
    }
    v.monotoneTail = inc || dec;
  }
  return v;
}

/// h(a, b) = a (1 - b/N)^{d-1}.
inline Interval cube_h(int d, const mpz_class &a, const mpz_class &b) {
  mpq_class x(b, cube_half(d));
  x.canonicalize();
  return Interval(a) * pow(Interval(mpq_class(1 - x)), static_cast<unsigned long>(d - 1));
}

struct StepRatioCheck {
  Interval actual;     ///< exp{h(t,t) - h(t+1,t+1)}
  Interval viaSlope;   ///< exp{h(t,t) 2(d-1)/(N - t)}
  Interval target;     ///< the claimed bound (1 + 0.76^d or 1 + d^2/2^d)
  bool actualHolds = false;
  bool slopeHolds = false;
  bool slopeApplicable = false; ///< N - t >= 2
};

/// Compares exp{h(t,t) - h(t+1,t+1)} and its slope bound against `target`.
inline StepRatioCheck step_ratio_check(int d, const mpz_class &t, const Interval &target) {
  // h(t,t) - h(t+1,t+1) cancels about d bits.
  ScopedPrecision prec(working_precision() + 2 * static_cast<unsigned>(d));
  const mpz_class half = cube_half(d);
  StepRatioCheck r;
  r.actual = exp(cube_h(d, t, t) - cube_h(d, t + 1, t + 1));
  r.slopeApplicable = half - t >= 2;
  r.viaSlope = r.slopeApplicable
                   ? exp(cube_h(d, t, t) * Interval(static_cast<long>(2 * (d - 1))) /
                         Interval(mpz_class(half - t)))
                   : Interval(0L);
  r.target = target;
  r.actualHolds = certainly_le(r.actual, target);
  r.slopeHolds = r.slopeApplicable && certainly_le(r.viaSlope, target);
  return r;
}

/// Case 3 auxiliary at the worst point t = 2^{d-3} against 1 + 0.76^d.
inline StepRatioCheck case3_auxiliary(int d) {
  if (d < 4)
    throw InvalidArgument("case 3 auxiliary needs d >= 4");
  // 1 + 0.76^d needs about d/2 more bits than the base precision to stay above 1.
  ScopedPrecision prec(working_precision() + 2 * static_cast<unsigned>(d));
  Interval target = Interval(1L) + pow(Interval(mpq_class(76, 100)), static_cast<unsigned long>(d));
  mpz_class t = pow2(static_cast<unsigned long>(d - 3));
  StepRatioCheck r = step_ratio_check(d, t, target);
  // The slope bound is evaluated at t but with N - t replaced by N - 2^{d-2}.
  Interval slope = cube_h(d, t, t) * Interval(static_cast<long>(2 * (d - 1))) /
                   Interval(pow2(static_cast<unsigned long>(d - 2)));
  r.viaSlope = exp(slope);
  r.slopeApplicable = true;
  r.slopeHolds = certainly_le(r.viaSlope, target);
  return r;
}

/// Case 4 auxiliary against 1 + d^2/2^d at the left end of its t-range,
/// t = ceil(2^{d-1}(1/2 - 1/d)), where h(t,t) is largest.
inline StepRatioCheck case4_auxiliary(int d) {
  if (d < 3)
    throw InvalidArgument("case 4 auxiliary needs d >= 3");
  ScopedPrecision prec(working_precision() + 2 * static_cast<unsigned>(d));
  Interval target = Interval(1L) + Interval(mpq_class(static_cast<long>(d) * d, 1) /
                                            mpq_class(pow2(static_cast<unsigned long>(d))));
  mpq_class left = mpq_class(cube_half(d)) * (mpq_class(1, 2) - mpq_class(1, d));
  return step_ratio_check(d, ceil_q(left), target);
}

} // namespace stableseq

#endif // STABLESEQ_CUBE_ESTIMATES_HPP
