#ifndef STABLESEQ_SEQ_ANALYSIS_HPP
#define STABLESEQ_SEQ_ANALYSIS_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stableseq/combinatorics.hpp"
#include "stableseq/error.hpp"
#include "stableseq/exact_count.hpp"
#include "stableseq/interval.hpp"

namespace stableseq {

enum class Direction { Increasing, Decreasing };

/// Non-strict compares with <= / >=; strict requires < / >.
enum class Strictness { NonStrict, Strict };

struct MonotonicityReport {
  Direction kind = Direction::Increasing;
  Strictness strictness = Strictness::NonStrict;
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t s = 1;
  bool holds = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

namespace detail {
/// True when (a_i, a_j) with i < j breaks the requested monotonicity.
inline bool breaks(const mpz_class &ai, const mpz_class &aj, Direction dir, Strictness st) {
  if (dir == Direction::Increasing)
    return st == Strictness::NonStrict ? ai > aj : ai >= aj;
  return st == Strictness::NonStrict ? ai < aj : ai <= aj;
}
} // namespace detail

/// s-step monotonicity of counts on [lo, hi]: for all lo <= i <= j <= hi
/// with j - i >= s, a_i <= a_j (increasing) or a_i >= a_j (decreasing).
///
/// Linear time: a suffix extremum tells whether index i has any violating
/// partner, and the first such i is then scanned for its first partner, so
/// the witness is the lexicographically first violating pair.
inline MonotonicityReport check_sstep(std::span<const mpz_class> a, Direction kind,
                                      std::size_t lo, std::size_t hi, std::size_t s,
                                      Strictness st = Strictness::NonStrict) {
  if (s < 1)
    throw InvalidArgument("step size must be at least 1");
  if (lo > hi || hi >= a.size())
    throw InvalidArgument("malformed interval [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] for a sequence of length " +
                          std::to_string(a.size()));
  MonotonicityReport r{kind, st, lo, hi, s, true, std::nullopt};
  if (hi - lo < s)
    return r;
  // ext[k] = index of the min (increasing) / max (decreasing) of a[k..hi].
  std::vector<std::size_t> ext(hi - lo + 1);
  ext[hi - lo] = hi;
  for (std::size_t k = hi; k-- > lo;) {
    std::size_t best = ext[k + 1 - lo];
    bool better = kind == Direction::Increasing ? a[k] < a[best] : a[k] > a[best];
    ext[k - lo] = better ? k : best;
  }
  for (std::size_t i = lo; i + s <= hi; ++i) {
    if (!detail::breaks(a[i], a[ext[i + s - lo]], kind, st))
      continue;
    for (std::size_t j = i + s; j <= hi; ++j)
      if (detail::breaks(a[i], a[j], kind, st)) {
        r.holds = false;
        r.witness = std::make_pair(i, j);
        return r;
      }
  }
  return r;
}

inline MonotonicityReport check_sstep(const IndSetSequence &seq, Direction kind, std::size_t lo,
                                      std::size_t hi, std::size_t s,
                                      Strictness st = Strictness::NonStrict) {
  return check_sstep(std::span<const mpz_class>(seq.counts), kind, lo, hi, s, st);
}

struct UnimodalityVerdict {
  bool unimodal = true;
  std::size_t mode = 0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Unimodality with the mode at the first maximum. A witness (i, j) is a
/// pair after the mode with a_i < a_j, or before it with a_i > a_j.
inline UnimodalityVerdict check_unimodal(const IndSetSequence &seq) {
  UnimodalityVerdict v;
  const auto &a = seq.counts;
  if (a.empty())
    return v;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] > a[v.mode])
      v.mode = i;
  auto up = check_sstep(seq, Direction::Increasing, 0, v.mode, 1);
  auto down = check_sstep(seq, Direction::Decreasing, v.mode, a.size() - 1, 1);
  if (!up.holds) {
    v.unimodal = false;
    v.witness = up.witness;
  } else if (!down.holds) {
    v.unimodal = false;
    v.witness = down.witness;
  }
  return v;
}

struct PropertyBGS {
  mpq_class beta;
  mpq_class gamma;
  std::size_t s = 1;
  bool holds = true;
  MonotonicityReport increasing;
  MonotonicityReport decreasing;
  bool increasingEmpty = false;
  bool decreasingEmpty = false;
};

/// Property (beta, gamma, s) for a bipartite graph on 2n vertices:
/// s-step increase on [beta n, (1-gamma) n/2] and s-step decrease on
/// [(1+gamma) n/2, (1-beta) n]. Endpoints are rounded inward; an empty
/// interval holds vacuously. The sequence must reach index (1-beta) n.
inline PropertyBGS check_property_bgs(const IndSetSequence &seq, const mpq_class &n,
                                      const mpq_class &beta, const mpq_class &gamma,
                                      std::size_t s) {
  if (n <= 0 || n.get_den() != 1)
    throw InvalidArgument("property (beta, gamma, s) needs an integer half-order n");
  if (beta < 0 || beta >= 1 || gamma < 0 || gamma >= 1)
    throw InvalidArgument("beta and gamma must lie in [0, 1)");
  PropertyBGS p;
  p.beta = beta;
  p.gamma = gamma;
  p.s = s;
  const mpz_class incLo = ceil_q(beta * n), incHi = floor_q((1 - gamma) * n / 2);
  const mpz_class decLo = ceil_q((1 + gamma) * n / 2), decHi = floor_q((1 - beta) * n);
  if (decHi > static_cast<unsigned long>(seq.alpha()))
    throw InvalidArgument("sequence has alpha = " + std::to_string(seq.alpha()) +
                          " but the frame needs indices up to " + decHi.get_str() +
                          " (graph not balanced bipartite on 2n vertices?)");
  auto run = [&](const mpz_class &lo, const mpz_class &hi, Direction dir, bool &empty) {
    if (lo > hi) {
      empty = true;
      return MonotonicityReport{dir, Strictness::NonStrict, 0, 0, s, true, std::nullopt};
    }
    return check_sstep(seq, dir, lo.get_ui(), hi.get_ui(), s);
  };
  p.increasing = run(incLo, incHi, Direction::Increasing, p.increasingEmpty);
  p.decreasing = run(decLo, decHi, Direction::Decreasing, p.decreasingEmpty);
  p.holds = p.increasing.holds && p.decreasing.holds;
  return p;
}

struct FinalThirdVerdict {
  bool holds = true;
  std::size_t start = 0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Non-increasing run i_k >= i_{k+1} >= ... >= i_alpha with
/// k = ceil((2 alpha - 1)/3).
inline FinalThirdVerdict check_final_third(const IndSetSequence &seq) {
  FinalThirdVerdict v;
  const std::size_t alpha = seq.alpha();
  v.start = alpha == 0 ? 0 : (2 * alpha - 1 + 2) / 3;
  for (std::size_t i = v.start; i < alpha; ++i)
    if (seq.counts[i] < seq.counts[i + 1]) {
      v.holds = false;
      v.witness = std::make_pair(i, i + 1);
      break;
    }
  return v;
}

// -------------------------------------------------------- hypercube ratio

/// log2 of i_t(Q_d) / (2 C(2^{d-1}, t)).
inline Interval transition_ratio_log2(int d, std::uint64_t t, const mpz_class &it) {
  if (d < 1 || d > 62)
    throw InvalidArgument("transition ratio needs 1 <= d <= 62");
  const mpz_class half = pow2(static_cast<unsigned long>(d - 1));
  if (mpz_class(std::to_string(t)) > half)
    throw InvalidArgument("t exceeds 2^{d-1}");
  if (it <= 0)
    throw InvalidArgument("count must be positive");
  return log2_exact(mpq_class(it)) - Interval(1L) -
         log2_binomial(half, mpz_class(std::to_string(t)));
}

/// g = d (t / 2^{d-1} - 1/2), the window coordinate of t.
inline mpq_class transition_coordinate(int d, std::uint64_t t) {
  mpq_class x(mpz_class(std::to_string(t)), pow2(static_cast<unsigned long>(d - 1)));
  x.canonicalize();
  return d * (x - mpq_class(1, 2));
}

/// Limit exp{e^{-2g}/2} predicted for the ratio when the coordinate tends to g.
inline Interval transition_limit(const mpq_class &g) {
  return exp(exp(Interval(mpq_class(-2 * g))) / Interval(2L));
}

} // namespace stableseq

#endif // STABLESEQ_SEQ_ANALYSIS_HPP
