#ifndef STABLESEQ_EXACT_COUNT_HPP
#define STABLESEQ_EXACT_COUNT_HPP

// Exact independent-set sequences {i_t(G)}.
//
// Two independent backends:
//  * general   - branch on a maximum-degree vertex v,
//                seq(G) = seq(G - v) + x * seq(G - N[v]);
//  * bipartite - walk all subsets A of the smaller class E in Gray-code
//                order, tabulate (|A|, |N(A)|) and expand
//                i_t = sum_A C(|O| - |N(A)|, t - |A|).

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "stableseq/combinatorics.hpp"
#include "stableseq/error.hpp"
#include "stableseq/graph.hpp"

namespace stableseq {

struct IndSetSequence {
  std::vector<mpz_class> counts; ///< counts[t] = i_t, t = 0..alpha

  std::size_t alpha() const { return counts.empty() ? 0 : counts.size() - 1; }

  /// i_t, or 0 for t beyond alpha.
  mpz_class at(std::size_t t) const { return t < counts.size() ? counts[t] : mpz_class(0); }

  mpz_class total() const {
    mpz_class s = 0;
    for (const auto &c : counts)
      s += c;
    return s;
  }

  /// counts[0] = 1, counts[1] = |V|, all entries positive (hence the last).
  bool check_invariants(std::size_t vertexCount) const {
    if (counts.empty() || counts[0] != 1)
      return false;
    if (vertexCount > 0 && (counts.size() < 2 || counts[1] != static_cast<unsigned long>(vertexCount)))
      return false;
    return std::all_of(counts.begin(), counts.end(), [](const mpz_class &c) { return c > 0; });
  }

  friend bool operator==(const IndSetSequence &a, const IndSetSequence &b) {
    return a.counts == b.counts;
  }
};

enum class Backend { Auto, General, SideProfile };

struct CountOptions {
  Backend backend = Backend::Auto;
  std::size_t generalCap = 63;  ///< vertices; 63 is the bit-mask width limit
  std::size_t sideCap = 28;     ///< size of the enumerated class
  unsigned workers = 1;
};

/// Joint distribution of (|A|, |N(A)|) over all subsets A of class E.
struct SideProfile {
  std::size_t sizeE = 0;
  std::size_t sizeO = 0;
  std::vector<std::vector<mpz_class>> table; ///< table[a][m]

  const mpz_class &at(std::size_t a, std::size_t m) const { return table[a][m]; }

  mpz_class total() const {
    mpz_class s = 0;
    for (const auto &row : table)
      for (const auto &c : row)
        s += c;
    return s;
  }

  /// i_t = sum_{a,m} table[a][m] * C(|O| - m, t - a).
  IndSetSequence to_sequence() const {
    std::vector<mpz_class> out(sizeE + sizeO + 1, 0);
    for (std::size_t a = 0; a <= sizeE; ++a)
      for (std::size_t m = 0; m <= sizeO; ++m) {
        if (table[a][m] == 0)
          continue;
        const std::size_t free = sizeO - m;
        for (std::size_t j = 0; j <= free; ++j)
          out[a + j] += table[a][m] * binomial(static_cast<std::int64_t>(free), static_cast<std::int64_t>(j));
      }
    while (out.size() > 1 && out.back() == 0)
      out.pop_back();
    return {std::move(out)};
  }
};

namespace detail {

inline const std::array<std::array<std::uint64_t, 64>, 64> &small_binomials() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 64>, 64> c{};
    for (std::size_t n = 0; n < 64; ++n) {
      c[n][0] = 1;
      for (std::size_t k = 1; k <= n; ++k)
        c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
    }
    return c;
  }();
  return table;
}

/// Pure branching counter on graphs with at most 63 vertices. Counts never
/// exceed 2^63, so 64-bit accumulators are exact.
class BranchCounter {
public:
  explicit BranchCounter(const Graph &g) : n_(g.size()) {
    for (Vertex v = 0; v < n_; ++v)
      for (Vertex u : g.neighbors(v))
        nb_[v] |= std::uint64_t{1} << u;
  }

  std::array<std::uint64_t, 64> run() {
    acc_.fill(0);
    std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    rec(all, 0);
    return acc_;
  }

private:
  void rec(std::uint64_t mask, unsigned shift) {
    int best = -1, bestDeg = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      int v = std::countr_zero(m);
      int deg = std::popcount(nb_[v] & mask);
      if (deg > bestDeg) {
        bestDeg = deg;
        best = v;
      }
    }
    if (bestDeg == 0) {
      const auto &c = small_binomials();
      int k = std::popcount(mask);
      for (int j = 0; j <= k; ++j)
        acc_[shift + j] += c[k][j];
      return;
    }
    std::uint64_t bit = std::uint64_t{1} << best;
    rec(mask & ~bit, shift);
    rec(mask & ~(nb_[best] | bit), shift + 1);
  }

  std::size_t n_;
  std::array<std::uint64_t, 64> nb_{};
  std::array<std::uint64_t, 64> acc_{};
};

} // namespace detail

/// General backend: any graph with at most `cap` (<= 63) vertices.
inline IndSetSequence count_general(const Graph &g, std::size_t cap = 63) {
  if (cap > 63)
    cap = 63;
  if (g.size() > cap)
    throw CapExceeded("general backend handles at most " + std::to_string(cap) + " vertices");
  auto acc = detail::BranchCounter(g).run();
  std::vector<mpz_class> out;
  for (std::size_t t = 0; t < acc.size() && acc[t] != 0; ++t)
    out.emplace_back(std::to_string(acc[t]));
  if (out.empty())
    out.emplace_back(1);
  return {std::move(out)};
}

/// Incremental N(A) tracker for subsets A of one side of a bipartite graph.
///
/// Subsets of `side` are encoded as bit masks over the positions of
/// `side`. Each vertex of the other side carries a coverage counter, so
/// toggling one member of A costs O(degree).
class NeighborhoodWalker {
public:
  NeighborhoodWalker(const Graph &g, std::span<const Vertex> side, std::span<const Vertex> other)
      : cover_(other.size(), 0) {
    std::vector<std::uint32_t> index(g.size(), UINT32_MAX);
    for (std::size_t i = 0; i < other.size(); ++i)
      index[other[i]] = static_cast<std::uint32_t>(i);
    adj_.resize(side.size());
    for (std::size_t i = 0; i < side.size(); ++i)
      for (Vertex u : g.neighbors(side[i])) {
        if (index[u] == UINT32_MAX)
          throw NotBipartite("edge inside one side of the supplied bipartition");
        adj_[i].push_back(index[u]);
      }
  }

  std::size_t side_size() const { return adj_.size(); }
  std::uint64_t subset() const { return subset_; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(subset_)); }
  std::size_t nbhd_size() const { return covered_; }
  /// Coverage counters over the other side (0 = not in N(A)).
  std::span<const std::uint32_t> coverage() const { return cover_; }

  void reset(std::uint64_t subset) {
    std::fill(cover_.begin(), cover_.end(), 0);
    covered_ = 0;
    subset_ = 0;
    for (std::uint64_t m = subset; m; m &= m - 1)
      toggle(static_cast<std::size_t>(std::countr_zero(m)));
  }

  void toggle(std::size_t i) {
    std::uint64_t bit = std::uint64_t{1} << i;
    if (subset_ & bit) {
      subset_ &= ~bit;
      for (auto u : adj_[i])
        if (--cover_[u] == 0)
          --covered_;
    } else {
      subset_ |= bit;
      for (auto u : adj_[i])
        if (cover_[u]++ == 0)
          ++covered_;
    }
  }

  /// Visit every subset whose high bits (>= lowBits) equal those of
  /// `prefix`, in Gray-code order over the low bits.
  template <class Visit> void walk(std::uint64_t prefix, unsigned lowBits, Visit &&visit) {
    reset(prefix);
    visit(*this);
    const std::uint64_t steps = std::uint64_t{1} << lowBits;
    for (std::uint64_t i = 1; i < steps; ++i) {
      toggle(static_cast<std::size_t>(std::countr_zero(i)));
      visit(*this);
    }
  }

private:
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> cover_;
  std::size_t covered_ = 0;
  std::uint64_t subset_ = 0;
};

/// Runs a Gray-code walk over all 2^k subsets of `side`, split across
/// `workers` threads by fixing high-order bits. Each task gets its own
/// state from `make_local()`; the caller merges the returned states, so
/// results do not depend on the worker count as long as merging commutes.
template <class Local, class MakeLocal, class Visit>
std::vector<Local> parallel_subset_walk(const Graph &g, std::span<const Vertex> side,
                                        std::span<const Vertex> other, unsigned workers,
                                        MakeLocal make_local, Visit visit) {
  const unsigned k = static_cast<unsigned>(side.size());
  unsigned highBits = 0;
  while ((1u << highBits) < std::max(1u, workers) && highBits < k && highBits < 10)
    ++highBits;
  const unsigned lowBits = k - highBits;
  const std::size_t tasks = std::size_t{1} << highBits;
  std::vector<Local> locals;
  locals.reserve(tasks);
  for (std::size_t i = 0; i < tasks; ++i)
    locals.push_back(make_local());
  auto run_task = [&](std::size_t task) {
    NeighborhoodWalker w(g, side, other);
    Local &local = locals[task];
    w.walk(static_cast<std::uint64_t>(task) << lowBits, lowBits,
           [&](const NeighborhoodWalker &s) { visit(local, s); });
  };
  if (workers <= 1 || tasks == 1) {
    for (std::size_t t = 0; t < tasks; ++t)
      run_task(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < tasks; t += workers)
          run_task(t);
      });
    for (auto &th : pool)
      th.join();
  }
  return locals;
}

/// Exact (|A|, |N(A)|) table over all subsets A of class E.
inline SideProfile side_profile(const Graph &g, const Bipartition &b, std::size_t cap = 28,
                                unsigned workers = 1) {
  if (b.sizeE() > cap || b.sizeE() > 40)
    throw CapExceeded("side profile enumerates 2^" + std::to_string(b.sizeE()) +
                      " subsets; cap is 2^" + std::to_string(std::min<std::size_t>(cap, 40)));
  const std::size_t rows = b.sizeE() + 1, cols = b.sizeO() + 1;
  using Local = std::vector<std::uint64_t>;
  auto locals = parallel_subset_walk<Local>(
      g, b.membersE, b.membersO, workers, [&] { return Local(rows * cols, 0); },
      [cols](Local &t, const NeighborhoodWalker &w) { ++t[w.size() * cols + w.nbhd_size()]; });
  SideProfile p;
  p.sizeE = b.sizeE();
  p.sizeO = b.sizeO();
  p.table.assign(rows, std::vector<mpz_class>(cols, 0));
  for (const auto &t : locals)
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t m = 0; m < cols; ++m)
        if (auto c = t[a * cols + m])
          p.table[a][m] += mpz_class(std::to_string(c));
  return p;
}

inline IndSetSequence count_bipartite(const Graph &g, const Bipartition &b, std::size_t cap = 28,
                                      unsigned workers = 1) {
  return side_profile(g, b, cap, workers).to_sequence();
}

/// Exact independent-set sequence with backend selection.
inline IndSetSequence count_by_size(const Graph &g, const CountOptions &opt = {}) {
  switch (opt.backend) {
  case Backend::General:
    return count_general(g, opt.generalCap);
  case Backend::SideProfile: {
    Bipartition b = require_bipartition(g);
    return count_bipartite(g, b, opt.sideCap, opt.workers);
  }
  case Backend::Auto:
    break;
  }
  auto r = bipartition(g);
  if (r.bipartite() && r.parts->sizeE() <= opt.sideCap)
    return count_bipartite(g, *r.parts, opt.sideCap, opt.workers);
  if (g.size() <= std::min<std::size_t>(opt.generalCap, 63))
    return count_general(g, opt.generalCap);
  throw CapExceeded("graph too large for both counting backends");
}

/// P(G, lambda) = sum_t i_t lambda^t, exactly.
inline mpq_class polynomial_eval(const IndSetSequence &seq, const mpq_class &lambda) {
  mpq_class acc = 0;
  for (auto it = seq.counts.rbegin(); it != seq.counts.rend(); ++it)
    acc = acc * lambda + mpq_class(*it);
  acc.canonicalize();
  return acc;
}

} // namespace stableseq

#endif // STABLESEQ_EXACT_COUNT_HPP
