#ifndef STABLESEQ_BOUNDS_HPP
#define STABLESEQ_BOUNDS_HPP

// Closed-form bounds on i_t(G) and on the independence polynomial for
// regular and almost-regular bipartite graphs.
//
// All bounds are returned as log2 values enclosed in an Interval. Callers
// use hi() of an upper bound and lo() of a lower bound; comparisons against
// exact counts are made so that rounding can only hide a violation of a
// bound by less than the enclosure width, never invent one.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stableseq/combinatorics.hpp"
#include "stableseq/error.hpp"
#include "stableseq/exact_count.hpp"
#include "stableseq/graph.hpp"
#include "stableseq/interval.hpp"

namespace stableseq {

// ------------------------------------------------------------------ entropy

struct EntropyValue {
  mpq_class x;
  Interval value; ///< H(x) in bits
};

/// Binary entropy H(x) = -x log2 x - (1-x) log2(1-x), with H(0) = H(1) = 0.
inline EntropyValue entropy(const mpq_class &x) {
  if (x < 0 || x > 1)
    throw InvalidArgument("entropy argument outside [0, 1]");
  if (x == 0 || x == 1)
    return {x, Interval(0L)};
  Interval p(x), q(mpq_class(1 - x));
  return {x, -(p * log2(p)) - q * log2(q)};
}

/// H over an interval argument strictly inside (0, 1).
inline Interval entropy(const Interval &x) {
  Interval one(1L);
  return -(x * log2(x)) - (one - x) * log2(one - x);
}

/// H'(x) = log2((1 - x)/x) for 0 < x < 1.
inline Interval entropy_slope(const mpq_class &x) {
  if (x <= 0 || x >= 1)
    throw InvalidArgument("entropy slope needs 0 < x < 1");
  return log2_exact((1 - x) / x);
}

// ------------------------------------------------------ regular-graph bounds

/// Upper bound log2 i_t <= H(2t/|V|) |V|/2 + |V|/(2d), valid for every
/// d-regular graph.
inline Interval entropy_upper_log2(std::uint64_t nVerts, std::uint64_t d, std::uint64_t t) {
  if (d < 1)
    throw InvalidArgument("degree must be at least 1");
  if (nVerts < 1)
    throw InvalidArgument("vertex count must be positive");
  if (2 * t > nVerts)
    throw InvalidArgument("t exceeds |V|/2");
  mpq_class x(2 * t, nVerts);
  x.canonicalize();
  mpq_class half(nVerts, 2), slack(nVerts, 2 * d);
  half.canonicalize();
  slack.canonicalize();
  return entropy(x).value * Interval(half) + Interval(slack);
}

struct HalfBinomialLower {
  mpz_class binom;       ///< C(floor(|V|/2), t)
  Interval exactLog2;    ///< log2 of binom
  Interval weakenedLog2; ///< H(2t/|V|) |V|/2 - (1/2) log2 |V|
};

/// Lower bound i_t >= C(|V|/2, t) for bipartite regular graphs, together
/// with its Stirling-weakened form.
inline HalfBinomialLower half_binomial_lower(std::uint64_t nVerts, std::uint64_t t) {
  if (nVerts < 1)
    throw InvalidArgument("vertex count must be positive");
  if (2 * t > nVerts)
    throw InvalidArgument("t exceeds |V|/2");
  HalfBinomialLower r;
  const auto half = static_cast<std::int64_t>(nVerts / 2);
  r.binom = binomial(half, static_cast<std::int64_t>(t));
  r.exactLog2 = log2_exact(mpq_class(r.binom));
  mpq_class x(2 * t, nVerts), h(nVerts, 2);
  x.canonicalize();
  h.canonicalize();
  r.weakenedLog2 =
      entropy(x).value * Interval(h) - Interval(mpq_class(1, 2)) * log2(Interval(nVerts));
  return r;
}

/// log2 of 2^{|V|/(2d)} (1 + lambda)^{|V|/2}, an upper bound on P(G, lambda)
/// for d-regular G.
inline Interval regular_partition_bound(std::uint64_t nVerts, std::uint64_t d,
                                        const mpq_class &lambda) {
  if (d < 1)
    throw InvalidArgument("degree must be at least 1");
  if (lambda <= 0)
    throw InvalidArgument("lambda must be positive");
  mpq_class slack(nVerts, 2 * d), half(nVerts, 2);
  slack.canonicalize();
  half.canonicalize();
  return Interval(slack) + Interval(half) * log2_exact(1 + lambda);
}

/// log2 of (partition bound)/lambda^t, an upper bound on i_t for any lambda > 0.
inline Interval partition_count_bound_at(std::uint64_t nVerts, std::uint64_t d, std::uint64_t t,
                                         const mpq_class &lambda) {
  return regular_partition_bound(nVerts, d, lambda) -
         Interval(static_cast<unsigned long>(t)) * log2_exact(lambda);
}

/// The entropy upper bound re-derived from the partition bound at the
/// optimizing activity lambda* = 2t/(|V| - 2t). Independent of
/// entropy_upper_log2's arithmetic route; used to cross-check it.
inline Interval optimized_count_upper(std::uint64_t nVerts, std::uint64_t d, std::uint64_t t) {
  if (2 * t > nVerts)
    throw InvalidArgument("t exceeds |V|/2");
  if (d < 1)
    throw InvalidArgument("degree must be at least 1");
  if (t == 0 || 2 * t == nVerts) {
    mpq_class slack(nVerts, 2 * d);
    slack.canonicalize();
    return Interval(slack);
  }
  mpq_class lambda(2 * t, nVerts - 2 * t);
  lambda.canonicalize();
  return partition_count_bound_at(nVerts, d, t, lambda);
}

// ------------------------------------------------ almost-regular bipartite

/// C(lambda): 2(1 + 1/lambda) below 1/127, 256 on [1/127, 127],
/// 2(1 + lambda) above 127. Continuous at both breakpoints.
inline mpq_class almost_regular_constant(const mpq_class &lambda) {
  if (lambda <= 0)
    throw InvalidArgument("lambda must be positive");
  if (lambda <= mpq_class(1, 127))
    return 2 * (1 + 1 / lambda);
  if (lambda >= 127)
    return 2 * (1 + lambda);
  return 256;
}

/// log2 of (1+lambda)^n C(lambda)^{n h}, with 2n = |V|.
inline Interval almost_regular_partition_bound(std::uint64_t nVerts, const mpq_class &h,
                                               const mpq_class &lambda) {
  mpq_class n(nVerts, 2);
  n.canonicalize();
  return Interval(n) * log2_exact(1 + lambda) +
         Interval(mpq_class(n * h)) * log2_exact(almost_regular_constant(lambda));
}

inline Interval almost_regular_partition_bound(const Graph &g, const Bipartition &b,
                                               const mpq_class &d, const mpq_class &lambda) {
  if (lambda <= 0)
    throw InvalidArgument("lambda must be positive");
  return almost_regular_partition_bound(g.size(), regularity_profile(g, b, d).hValue, lambda);
}

/// Penalty C(t, n) of the per-size almost-regular bound
/// i_t <= 2^{H(t/n) n + C(t,n) n h}: log2(2n/(n-t)) for t >= 127n/128,
/// 8 in the middle, log2(2n/t) for t <= n/128. Where two branches apply
/// the smaller value is returned.
inline Interval count_penalty_coefficient(const mpq_class &t, const mpq_class &n) {
  if (!(t > 0 && t < n))
    throw InvalidArgument("penalty coefficient needs 0 < t < n");
  std::optional<Interval> best;
  auto take = [&](Interval v) {
    if (!best || certainly_less(v, *best))
      best = std::move(v);
  };
  if (t >= n * mpq_class(127, 128))
    take(log2_exact(2 * n / (n - t)));
  if (t >= n / 128 && t <= n * mpq_class(127, 128))
    take(Interval(8L));
  if (t <= n / 128)
    take(log2_exact(2 * n / t));
  return *best;
}

/// Least constant the penalty table supports on t in [eps n, (1-eps) n]:
/// the maximum of count_penalty_coefficient over that range.
inline Interval range_penalty_constant(const mpq_class &eps) {
  if (eps <= 0 || eps >= mpq_class(1, 2))
    throw InvalidArgument("epsilon must lie in (0, 1/2)");
  if (eps < mpq_class(1, 128))
    return log2_exact(2 / eps);
  return Interval(8L);
}

/// Per-size almost-regular upper bound H(t/n) n + C(t,n) n h.
inline Interval almost_regular_count_upper(const mpq_class &n, const mpq_class &h,
                                           const mpq_class &t) {
  return entropy(mpq_class(t / n)).value * Interval(n) +
         count_penalty_coefficient(t, n) * Interval(mpq_class(n * h));
}

// ------------------------------------------------------- step monotonicity

/// Certified test of H(l/n) - H(j/n) > penalty + log2(2n)/(2n). True
/// means the bounds prove i_l > i_j; false means "not certified".
inline bool growth_certified(std::uint64_t n, const Interval &penalty, std::uint64_t j,
                             std::uint64_t l) {
  if (n < 1 || j > n || l > n)
    throw InvalidArgument("growth_certified: indices outside [0, n]");
  mpq_class xl(l, n), xj(j, n);
  xl.canonicalize();
  xj.canonicalize();
  Interval lhs = entropy(xl).value - entropy(xj).value;
  Interval rhs = penalty + log2(Interval(2 * n)) / Interval(2 * n);
  return certainly_less(rhs, lhs);
}

/// Regular case: penalty 1/d.
inline bool growth_certified_regular(std::uint64_t n, std::uint64_t d, std::uint64_t j,
                                     std::uint64_t l) {
  if (d < 1)
    throw InvalidArgument("degree must be at least 1");
  return growth_certified(n, Interval(mpq_class(1, d)), j, l);
}

struct StepBound {
  std::uint64_t s = 1;      ///< least certified step size
  std::uint64_t right = 0;  ///< right end floor((1-eps) n / 2) of the interval
  bool vacuous = false;     ///< no s <= right works; s = right + 1
  Interval slopeConstant;   ///< 1 / H'((1 - eps)/2)
  Interval analytic;        ///< slopeConstant * (n/d + log2 2n)
};

/// Least s such that every pair j < l in [0, (1-eps)n/2] with l - j >= s
/// passes growth_certified_regular. H is concave, so for a fixed gap the
/// hardest pair sits at the right end; a scan over s at that end suffices.
inline StepBound regular_step_bound(std::uint64_t n, std::uint64_t d, const mpq_class &eps) {
  if (eps <= 0 || eps >= 1)
    throw InvalidArgument("epsilon must lie in (0, 1)");
  if (n < 1 || d < 1)
    throw InvalidArgument("n and d must be positive");
  StepBound r;
  r.right = floor_q((1 - eps) * n / 2).get_ui();
  r.slopeConstant = Interval(1L) / entropy_slope((1 - eps) / 2);
  mpq_class nd(n, d);
  nd.canonicalize();
  r.analytic = r.slopeConstant * (Interval(nd) + log2(Interval(2 * n)));
  for (std::uint64_t s = 1; s <= r.right; ++s)
    if (growth_certified_regular(n, d, r.right - s, r.right)) {
      r.s = s;
      return r;
    }
  r.s = r.right + 1;
  r.vacuous = true;
  return r;
}

/// C(eps) for the almost-regular step size s = C(eps) max{log2 n, n h}:
/// (range_penalty_constant + 1) / H'((1-eps)/2). The +1 absorbs the
/// log2(2n)/2 term, since log2(2n)/2 <= log2 n for n >= 2.
inline Interval almost_regular_step_constant(const mpq_class &eps) {
  return (range_penalty_constant(eps) + Interval(1L)) / entropy_slope((1 - eps) / 2);
}

inline std::uint64_t almost_regular_step(std::uint64_t n, const mpq_class &h,
                                         const mpq_class &eps) {
  Interval scale = max(log2(Interval(std::max<std::uint64_t>(n, 2))), Interval(mpq_class(n * h)));
  return (almost_regular_step_constant(eps) * scale).ceil_hi().get_ui();
}

// --------------------------------------------------------------- BoundTable

struct BoundRow {
  std::size_t t = 0;
  Interval lowerLog2;
  Interval upperLog2;
  std::vector<std::string> tags;
  std::optional<mpz_class> exact;
};

struct BoundTable {
  std::uint64_t nVerts = 0;
  std::uint64_t d = 0;
  std::vector<BoundRow> rows;
};

/// Per-t sandwich for a d-regular bipartite graph on nVerts vertices,
/// optionally annotated with the exact counts.
inline BoundTable regular_bound_table(std::uint64_t nVerts, std::uint64_t d,
                                      const IndSetSequence *exact = nullptr) {
  BoundTable table{nVerts, d, {}};
  for (std::uint64_t t = 0; 2 * t <= nVerts; ++t) {
    BoundRow row;
    row.t = t;
    row.lowerLog2 = half_binomial_lower(nVerts, t).exactLog2;
    row.upperLog2 = entropy_upper_log2(nVerts, d, t);
    row.tags = {"half-binomial-lower", "entropy-upper"};
    if (exact)
      row.exact = exact->at(t);
    table.rows.push_back(std::move(row));
  }
  return table;
}

struct SandwichViolation {
  std::size_t t;
  bool lowerSide;
};

/// Rows where the exact count escapes [lower, upper]. The lower side is an
/// exact integer comparison; the upper side flags only certain violations.
inline std::vector<SandwichViolation> sandwich_violations(const BoundTable &table) {
  std::vector<SandwichViolation> out;
  for (const auto &row : table.rows) {
    if (!row.exact)
      continue;
    const mpz_class &it = *row.exact;
    if (it < half_binomial_lower(table.nVerts, row.t).binom)
      out.push_back({row.t, true});
    else if (it > 0 && certainly_less(row.upperLog2, log2_exact(mpq_class(it))))
      out.push_back({row.t, false});
  }
  return out;
}

} // namespace stableseq

#endif // STABLESEQ_BOUNDS_HPP
