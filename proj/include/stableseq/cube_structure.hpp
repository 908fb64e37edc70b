#ifndef STABLESEQ_CUBE_STRUCTURE_HPP
#define STABLESEQ_CUBE_STRUCTURE_HPP

// Exact set structure on the hypercube Q_d: neighbourhoods, closures,
// 2-linked components, and the two enumeration bounds on i_t(Q_d) built
// from them.
//
// Vertices of Q_d are the integers 0 .. 2^d - 1; E is the even-weight class.

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "stableseq/bitset.hpp"
#include "stableseq/combinatorics.hpp"
#include "stableseq/cube_estimates.hpp"
#include "stableseq/error.hpp"
#include "stableseq/exact_count.hpp"
#include "stableseq/graph.hpp"

namespace stableseq {

inline constexpr int kMaxCubeSetDim = 20;

enum class Side { E, O, Mixed };

inline const char *to_string(Side s) {
  switch (s) {
  case Side::E:
    return "E";
  case Side::O:
    return "O";
  case Side::Mixed:
    return "mixed";
  }
  return "?";
}

inline bool even_weight(std::uint32_t v) { return std::popcount(v) % 2 == 0; }

class VertexSet {
public:
  explicit VertexSet(int d) : d_(check_dim(d)), bits_(std::size_t{1} << d) {}

  VertexSet(int d, std::initializer_list<std::uint32_t> members) : VertexSet(d) {
    for (auto v : members)
      insert(v);
  }

  template <class Range> static VertexSet of(int d, const Range &members) {
    VertexSet s(d);
    for (auto v : members)
      s.insert(static_cast<std::uint32_t>(v));
    return s;
  }

  int dim() const { return d_; }
  std::uint32_t universe() const { return std::uint32_t{1} << d_; }
  const DynBitset &bits() const { return bits_; }

  void insert(std::uint32_t v) {
    if (v >= universe())
      throw InvalidArgument("vertex " + std::to_string(v) + " outside Q_" + std::to_string(d_));
    bits_.set(v);
  }
  void erase(std::uint32_t v) { bits_.reset(v); }
  bool contains(std::uint32_t v) const { return v < universe() && bits_.test(v); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    bits_.for_each([&](std::size_t v) { out.push_back(static_cast<std::uint32_t>(v)); });
    return out;
  }

  /// E for the empty set.
  Side side() const {
    bool anyE = false, anyO = false;
    bits_.for_each([&](std::size_t v) { (even_weight(static_cast<std::uint32_t>(v)) ? anyE : anyO) = true; });
    if (anyE && anyO)
      return Side::Mixed;
    return anyO ? Side::O : Side::E;
  }

  bool operator==(const VertexSet &o) const { return d_ == o.d_ && bits_ == o.bits_; }

private:
  static int check_dim(int d) {
    if (d < 1)
      throw InvalidArgument("vertex sets need d >= 1");
    if (d > kMaxCubeSetDim)
      throw CapExceeded("vertex sets support 1 <= d <= " + std::to_string(kMaxCubeSetDim));
    return d;
  }

  int d_;
  DynBitset bits_;
};

/// Vertices outside A adjacent to some vertex of A.
inline VertexSet neighborhood(const VertexSet &A) {
  const int d = A.dim();
  VertexSet out(d);
  A.bits().for_each([&](std::size_t v) {
    for (int i = 0; i < d; ++i) {
      auto u = static_cast<std::uint32_t>(v) ^ (std::uint32_t{1} << i);
      if (!A.contains(u))
        out.insert(u);
    }
  });
  return out;
}

/// [A] = {v : N({v}) is a subset of N(A)}, taken literally: members of A
/// that are adjacent to A are left out.
inline VertexSet closure(const VertexSet &A) {
  const int d = A.dim();
  const VertexSet NA = neighborhood(A);
  VertexSet out(d);
  // Any qualifying v has all (at least one) neighbours in N(A).
  NA.bits().for_each([&](std::size_t w) {
    for (int i = 0; i < d; ++i) {
      auto v = static_cast<std::uint32_t>(w) ^ (std::uint32_t{1} << i);
      if (out.contains(v))
        continue;
      bool inside = true;
      for (int j = 0; j < d && inside; ++j)
        inside = NA.contains(v ^ (std::uint32_t{1} << j));
      if (inside)
        out.insert(v);
    }
  });
  return out;
}

/// |[A]| <= 2^{d-2}; needs d >= 2.
inline bool is_small(const VertexSet &A) {
  if (A.dim() < 2)
    throw InvalidArgument("smallness needs d >= 2");
  return closure(A).size() <= (std::size_t{1} << (A.dim() - 2));
}

namespace detail {
struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

inline std::vector<VertexSet> group_parts(const VertexSet &A, DisjointSets &ds,
                                          const std::vector<std::uint32_t> &slotOf) {
  std::vector<VertexSet> parts;
  std::vector<std::uint32_t> slot(ds.parent.size(), UINT32_MAX);
  for (auto v : A.members()) {
    auto r = ds.find(slotOf[v]);
    if (slot[r] == UINT32_MAX) {
      slot[r] = static_cast<std::uint32_t>(parts.size());
      parts.emplace_back(A.dim());
    }
    parts[slot[r]].insert(v);
  }
  return parts;
}

/// Parts of A under the 2-linked relation, listed by least member. Inside
/// one class two members share a neighbour exactly when they are at
/// distance 2, so the parts are the components of that relation. A mixed
/// set can also be linked through an edge inside N(A), so there the parts
/// come from the components of A u N(A).
inline std::vector<VertexSet> linked_parts(const VertexSet &A) {
  const int d = A.dim();
  std::vector<std::uint32_t> slotOf(A.universe(), UINT32_MAX);
  std::uint32_t next = 0;
  if (A.side() != Side::Mixed) {
    for (auto v : A.members())
      slotOf[v] = next++;
    DisjointSets ds(next);
    for (auto v : A.members())
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
          const auto w = v ^ (std::uint32_t{1} << a) ^ (std::uint32_t{1} << b);
          if (slotOf[w] != UINT32_MAX)
            ds.unite(slotOf[v], slotOf[w]);
        }
    return group_parts(A, ds, slotOf);
  }
  const VertexSet NA = neighborhood(A);
  for (std::uint32_t v = 0; v < A.universe(); ++v)
    if (A.contains(v) || NA.contains(v))
      slotOf[v] = next++;
  DisjointSets ds(next);
  for (std::uint32_t v = 0; v < A.universe(); ++v)
    if (slotOf[v] != UINT32_MAX)
      for (int a = 0; a < d; ++a) {
        const auto u = v ^ (std::uint32_t{1} << a);
        if (slotOf[u] != UINT32_MAX)
          ds.unite(slotOf[v], slotOf[u]);
      }
  return group_parts(A, ds, slotOf);
}
} // namespace detail

/// Maximal 2-linked subsets of a single-class A. Within one class two
/// vertices share a neighbour exactly when they are at distance 2.
inline std::vector<VertexSet> two_components(const VertexSet &A) {
  if (A.side() == Side::Mixed)
    throw InvalidArgument("two_components expects a set inside one parity class");
  return detail::linked_parts(A);
}

/// A u N(A) induces a connected subgraph of Q_d (breadth-first search, no
/// distance shortcut). The empty set is not 2-linked.
inline bool is_two_linked(const VertexSet &A) {
  if (A.empty())
    return false;
  const int d = A.dim();
  const VertexSet NA = neighborhood(A);
  DynBitset seen(A.universe());
  std::vector<std::uint32_t> stack{A.members().front()};
  seen.set(stack.back());
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (int i = 0; i < d; ++i) {
      auto u = v ^ (std::uint32_t{1} << i);
      if ((A.contains(u) || NA.contains(u)) && !seen.test(u)) {
        seen.set(u);
        stack.push_back(u);
        ++reached;
      }
    }
  }
  return reached == A.size() + NA.size();
}

struct StructureStats {
  int d = 0;
  std::size_t size = 0;
  std::size_t nbhd = 0;
  std::size_t closure = 0;
  bool small = false;
  std::size_t comps = 0;
  std::size_t maxComp = 0;
  Side side = Side::E;
};

inline StructureStats structure_stats(const VertexSet &A) {
  StructureStats s;
  s.d = A.dim();
  s.size = A.size();
  s.nbhd = neighborhood(A).size();
  s.closure = closure(A).size();
  s.small = s.d >= 2 && s.closure <= (std::size_t{1} << (s.d - 2));
  s.side = A.side();
  auto parts = detail::linked_parts(A);
  s.comps = parts.size();
  for (const auto &p : parts)
    s.maxComp = std::max(s.maxComp, p.size());
  return s;
}

// ------------------------------------------------- sparse subsets of E

/// The even-weight vertices of Q_d in increasing order.
inline std::vector<std::uint32_t> even_class(int d) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < (std::uint32_t{1} << d); ++v)
    if (even_weight(v))
      out.push_back(v);
  return out;
}

inline constexpr int kMaxSparseDim = 6;

/// counts[k] = #{A in E : |A| = k, cl(A) <= 1}, i.e. members pairwise at
/// distance >= 4. Exact backtracking over E in increasing order.
inline std::vector<mpz_class> sparse_set_counts(int d) {
  if (d < 1 || d > kMaxSparseDim)
    throw CapExceeded("sparse set counts enumerate subsets of E only for d <= " +
                      std::to_string(kMaxSparseDim));
  const auto E = even_class(d);
  const std::size_t n = E.size();
  // far[i]: later members of E at distance >= 4 from E[i].
  std::vector<std::uint64_t> far(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::popcount(E[i] ^ E[j]) >= 4)
        far[i] |= std::uint64_t{1} << j;
  std::vector<std::uint64_t> raw(n + 1, 0);
  auto rec = [&](auto &self, std::uint64_t allowed, std::size_t k) -> void {
    ++raw[k];
    for (std::uint64_t m = allowed; m; m &= m - 1) {
      auto i = static_cast<std::size_t>(std::countr_zero(m));
      self(self, allowed & far[i], k + 1);
    }
  };
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  rec(rec, all, 0);
  std::vector<mpz_class> counts;
  for (std::size_t k = 0; k <= n && raw[k]; ++k)
    counts.emplace_back(static_cast<unsigned long>(raw[k]));
  return counts;
}

/// 2 sum_{k <= f} #{A in E : cl(A) <= 1, |A| = k} C(2^{d-1} - dk, t - k),
/// a lower bound on i_t(Q_d) whenever f < t/2.
inline mpz_class cube_sparse_lower(int d, std::uint64_t t, std::uint64_t f) {
  if (!(2 * f < t))
    throw NotApplicable("cut-off f = " + std::to_string(f) + " is not below t/2 = " +
                        std::to_string(t) + "/2");
  const std::uint64_t half = std::uint64_t{1} << (d - 1);
  if (t > half)
    throw InvalidArgument("t exceeds 2^{d-1}");
  const auto counts = sparse_set_counts(d);
  mpz_class sum = 0;
  for (std::uint64_t k = 0; k <= f && k < counts.size() && k <= t; ++k) {
    const std::int64_t top = static_cast<std::int64_t>(half) - static_cast<std::int64_t>(d * k);
    if (top < 0)
      break;
    sum += counts[k] * binomial(static_cast<std::uint64_t>(top), t - k);
  }
  return 2 * sum;
}

/// Same bound with the cut-off f = max{d, 5^7 e t (1 - t/N)^{d-1}}.
inline mpz_class cube_sparse_lower(int d, std::uint64_t t) {
  if (t == 0)
    throw NotApplicable("no cut-off below t/2 at t = 0");
  return cube_sparse_lower(d, t, sparse_cutoff(d, mpz_class(static_cast<unsigned long>(t))).get_ui());
}

// --------------------------------------------- small subsets of E, d <= 5

inline constexpr int kMaxSmallSetDim = 5;

enum class SmallPredicate { Small, SmallTwoLinked };

inline const char *to_string(SmallPredicate p) {
  return p == SmallPredicate::Small ? "small" : "small-2-linked";
}

/// table[a][g] = number of A in E with |A| = a, |N(A)| = g satisfying the
/// predicate. The empty set is small but not 2-linked.
struct SmallSetProfile {
  int d = 0;
  SmallPredicate predicate = SmallPredicate::Small;
  std::vector<std::vector<mpz_class>> table;

  bool operator==(const SmallSetProfile &) const = default;

  /// sum of table[a][g] lambda^a (1 + lambda)^{-g} over a >= minSize.
  mpq_class weighted_sum(const mpq_class &lambda, std::size_t minSize = 0) const {
    mpq_class s = 0;
    for (std::size_t a = minSize; a < table.size(); ++a)
      for (std::size_t g = 0; g < table[a].size(); ++g)
        if (table[a][g] != 0)
          s += table[a][g] * set_weight(lambda, a, g);
    return s;
  }
};

/// Walks all 2^{2^{d-1}} subsets of E in Gray-code order. With `prefilter`
/// a subset with |A u N(A)| > 3 2^{d-2} is rejected before its closure is
/// computed: a small A has |A u N(A)| <= |[A]| + |N([A])| <= 2^{d-2} + 2^{d-1}.
inline SmallSetProfile small_set_profile(int d, SmallPredicate pred, unsigned workers = 1,
                                         bool prefilter = true) {
  if (d < 2 || d > kMaxSmallSetDim)
    throw CapExceeded("small set enumeration supports 2 <= d <= " +
                      std::to_string(kMaxSmallSetDim));
  const Graph q = hypercube(d);
  const auto b = require_bipartition(q);
  const auto &E = b.membersE;
  const auto &O = b.membersO;
  const std::size_t n = E.size();
  const std::size_t quarter = std::size_t{1} << (d - 2);
  std::vector<std::uint32_t> indexO(q.size(), 0), indexE(q.size(), 0);
  for (std::size_t i = 0; i < O.size(); ++i)
    indexO[O[i]] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < n; ++i)
    indexE[E[i]] = static_cast<std::uint32_t>(i);
  // nbO[i]: neighbours of E[i] as a mask over O; near[i]: members of E at
  // distance 2 from E[i] as a mask over E.
  std::vector<std::uint64_t> nbO(n, 0), near(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (Vertex u : q.neighbors(E[i])) {
      nbO[i] |= std::uint64_t{1} << indexO[u];
      for (Vertex w : q.neighbors(u))
        if (w != E[i])
          near[i] |= std::uint64_t{1} << indexE[w];
    }
  const std::size_t cols = O.size() + 1;
  using Local = std::vector<std::uint64_t>;
  auto locals = parallel_subset_walk<Local>(
      q, E, O, workers, [&] { return Local((n + 1) * cols, 0); },
      [&](Local &tab, const NeighborhoodWalker &w) {
        const std::size_t a = w.size(), g = w.nbhd_size();
        const std::uint64_t A = w.subset();
        if (pred == SmallPredicate::SmallTwoLinked) {
          if (A == 0)
            return;
          std::uint64_t reach = A & (~A + 1), frontier = reach;
          while (frontier) {
            std::uint64_t next = 0;
            for (std::uint64_t m = frontier; m; m &= m - 1)
              next |= near[static_cast<std::size_t>(std::countr_zero(m))];
            frontier = next & A & ~reach;
            reach |= frontier;
          }
          if (reach != A)
            return;
        }
        if (prefilter && a + g > 3 * quarter)
          return;
        std::uint64_t NA = 0;
        const auto cov = w.coverage();
        for (std::size_t j = 0; j < cov.size(); ++j)
          if (cov[j])
            NA |= std::uint64_t{1} << j;
        // For nonempty A in E the closure lies in E.
        std::size_t cl = 0;
        if (A != 0)
          for (std::size_t i = 0; i < n; ++i)
            cl += (nbO[i] & ~NA) == 0;
        if (cl <= quarter)
          ++tab[a * cols + g];
      });
  SmallSetProfile p;
  p.d = d;
  p.predicate = pred;
  p.table.assign(n + 1, std::vector<mpz_class>(cols, 0));
  for (const auto &tab : locals)
    for (std::size_t a = 0; a <= n; ++a)
      for (std::size_t g = 0; g < cols; ++g)
        if (auto c = tab[a * cols + g])
          p.table[a][g] += mpz_class(static_cast<unsigned long>(c));
  return p;
}

/// 2 sum over small A in E of C(2^{d-1} - |N(A)|, t - |A|), an upper bound
/// on i_t(Q_d), from a profile with the Small predicate.
inline mpz_class cube_small_upper(const SmallSetProfile &p, std::uint64_t t) {
  if (p.predicate != SmallPredicate::Small)
    throw InvalidArgument("cube_small_upper needs the profile of small sets");
  const std::uint64_t half = std::uint64_t{1} << (p.d - 1);
  mpz_class sum = 0;
  for (std::uint64_t a = 0; a < p.table.size() && a <= t; ++a)
    for (std::uint64_t g = 0; g < p.table[a].size() && g <= half; ++g)
      if (p.table[a][g] != 0)
        sum += p.table[a][g] * binomial(half - g, t - a);
  return 2 * sum;
}

inline mpz_class cube_small_upper(int d, std::uint64_t t, unsigned workers = 1) {
  return cube_small_upper(small_set_profile(d, SmallPredicate::Small, workers), t);
}

// ----------------------------------------------- binomial shift identity

struct ShiftIdentity {
  mpq_class lhs; ///< C(2^{d-1} - g, t - a)
  mpq_class rhs; ///< F_{lambda(t)}(a, g) C(2^{d-1}, t) E(a, g)
  mpq_class correction; ///< E(a, g)
  bool equal = false;
};

/// C(N - g, t - a) = F_{lambda(t)}(a, g) C(N, t) E(a, g), with
/// E(a, g) = prod_{i<a}(1 - i/t) prod_{i<g-a}(1 - i/(N - t)) / prod_{i<g}(1 - i/N).
inline ShiftIdentity binomial_shift_identity(int d, std::uint64_t t, std::uint64_t a,
                                             std::uint64_t g) {
  const mpz_class half = cube_half(d);
  const mpz_class T(static_cast<unsigned long>(t));
  if (T == 0 || T >= half)
    throw NotApplicable("identity is refused at t = 0 and t = 2^{d-1}, where lambda(t) degenerates");
  if (g < a)
    throw InvalidArgument("identity needs g >= a");
  if (a > t)
    throw InvalidArgument("identity needs t >= a");
  if (mpz_class(static_cast<unsigned long>(g)) > half)
    throw NotApplicable("E(a, g) has a zero denominator when g > 2^{d-1}");
  ShiftIdentity r;
  mpq_class num = 1, den = 1;
  for (std::uint64_t i = 0; i < a; ++i)
    num *= 1 - mpq_class(static_cast<unsigned long>(i)) / T;
  const mpz_class rest = half - T;
  for (std::uint64_t i = 0; i + a < g; ++i)
    num *= 1 - mpq_class(static_cast<unsigned long>(i)) / rest;
  for (std::uint64_t i = 0; i < g; ++i)
    den *= 1 - mpq_class(static_cast<unsigned long>(i)) / half;
  r.correction = num / den;
  const mpz_class top = half - static_cast<unsigned long>(g);
  r.lhs = binomial(top.get_ui(), t - a);
  r.rhs = set_weight(lambda_of_t(d, T), a, g) * mpq_class(binomial(half.get_ui(), t)) * r.correction;
  r.equal = r.lhs == r.rhs;
  return r;
}

} // namespace stableseq

#endif // STABLESEQ_CUBE_STRUCTURE_HPP
