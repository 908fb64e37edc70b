#ifndef STABLESEQ_TESTS_ORACLES_HPP
#define STABLESEQ_TESTS_ORACLES_HPP

// Slow, obviously-correct reference computations. Nothing here calls into
// the library's counting, closure or bound code.

#include <gmp.h>
#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "stableseq/graph.hpp"

namespace oracle {

/// Counts independent sets by size by testing every vertex subset against
/// an adjacency matrix. n <= 24.
inline std::vector<mpz_class> independent_counts(const stableseq::Graph &g) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto &e : g.edges()) {
    adj[e.u][e.v] = true;
    adj[e.v][e.u] = true;
  }
  std::vector<std::uint64_t> raw(n + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1))
        continue;
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> j & 1) && adj[i][j])
          ok = false;
    }
    if (ok)
      ++raw[static_cast<std::size_t>(std::popcount(mask))];
  }
  while (raw.size() > 1 && raw.back() == 0)
    raw.pop_back();
  std::vector<mpz_class> out;
  for (auto r : raw)
    out.emplace_back(static_cast<unsigned long>(r));
  return out;
}

inline mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline int hamming(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

using Set = std::set<std::uint32_t>;

/// N(A): vertices outside A at Hamming distance 1 from some member.
inline Set cube_neighborhood(int d, const Set &A) {
  Set out;
  for (std::uint32_t w = 0; w < (1u << d); ++w) {
    if (A.count(w))
      continue;
    for (auto a : A)
      if (hamming(a, w) == 1) {
        out.insert(w);
        break;
      }
  }
  return out;
}

/// [A] = {v : every neighbour of v lies in N(A)}.
inline Set cube_closure(int d, const Set &A) {
  const Set NA = cube_neighborhood(d, A);
  Set out;
  for (std::uint32_t v = 0; v < (1u << d); ++v) {
    bool all = true;
    for (std::uint32_t w = 0; w < (1u << d) && all; ++w)
      if (hamming(v, w) == 1 && !NA.count(w))
        all = false;
    if (all)
      out.insert(v);
  }
  return out;
}

/// Connected pieces of A under "joined by a path in A u N(A)", found by
/// flooding the cube one Hamming step at a time.
inline std::vector<Set> linked_pieces(int d, const Set &A) {
  Set region = A;
  for (auto w : cube_neighborhood(d, A))
    region.insert(w);
  Set seen;
  std::vector<Set> out;
  for (auto a : A) {
    if (seen.count(a))
      continue;
    Set piece;
    std::vector<std::uint32_t> todo{a};
    seen.insert(a);
    while (!todo.empty()) {
      auto v = todo.back();
      todo.pop_back();
      if (A.count(v))
        piece.insert(v);
      for (auto w : region)
        if (hamming(v, w) == 1 && !seen.count(w)) {
          seen.insert(w);
          todo.push_back(w);
        }
    }
    out.push_back(piece);
  }
  return out;
}

inline std::vector<std::uint32_t> even_vertices(int d) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < (1u << d); ++v)
    if (std::popcount(v) % 2 == 0)
      out.push_back(v);
  return out;
}

/// table[a][g] = #{A in E small : |A| = a, |N(A)| = g}, over every subset
/// of E with the brute closure. d <= 5.
inline std::vector<std::vector<mpz_class>> small_profile(int d, bool requireLinked) {
  const auto E = even_vertices(d);
  const std::size_t n = E.size();
  const std::size_t cols = (std::size_t{1} << (d - 1)) + 1;
  std::vector<std::vector<mpz_class>> table(n + 1, std::vector<mpz_class>(cols, 0));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Set A;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1)
        A.insert(E[i]);
    if (cube_closure(d, A).size() > (std::size_t{1} << (d - 2)))
      continue;
    if (requireLinked && (A.empty() || linked_pieces(d, A).size() != 1))
      continue;
    table[A.size()][cube_neighborhood(d, A).size()] += 1;
  }
  return table;
}

/// #{A in E : |A| = k, members pairwise at distance >= 4}, by full subset scan.
inline std::vector<mpz_class> sparse_counts(int d) {
  const auto E = even_vertices(d);
  const std::size_t n = E.size();
  std::vector<unsigned long> raw(n + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && hamming(E[i], E[j]) < 4)
          ok = false;
    if (ok)
      ++raw[static_cast<std::size_t>(std::popcount(mask))];
  }
  std::vector<mpz_class> out;
  for (std::size_t k = 0; k <= n && raw[k]; ++k)
    out.emplace_back(raw[k]);
  return out;
}

/// Binary entropy in double precision.
inline double entropy(double x) {
  if (x <= 0 || x >= 1)
    return 0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

} // namespace oracle

#endif // STABLESEQ_TESTS_ORACLES_HPP
