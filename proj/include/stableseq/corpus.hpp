#ifndef STABLESEQ_CORPUS_HPP
#define STABLESEQ_CORPUS_HPP

// Fixed graph collections used by the verification suite and the tests.

#include <cstdint>
#include <string>
#include <vector>

#include "stableseq/graph.hpp"
#include "stableseq/percolation.hpp"

namespace stableseq {

struct CorpusGraph {
  std::string spec;
  Graph graph;
  std::uint64_t degree = 0;
};

/// Regular bipartite graphs on at most 24 vertices: complete bipartite
/// graphs, even cycles, small cubes, crowns, bipartite circulants and
/// disjoint unions of these.
inline std::vector<CorpusGraph> regular_bipartite_corpus() {
  std::vector<std::string> specs;
  for (int d = 1; d <= 12; ++d)
    specs.push_back("knn:" + std::to_string(d) + "," + std::to_string(d));
  for (int n = 6; n <= 24; n += 2)
    specs.push_back("cycle:" + std::to_string(n));
  for (int d = 2; d <= 4; ++d)
    specs.push_back("qd:" + std::to_string(d));
  for (int n = 4; n <= 12; ++n)
    specs.push_back("crown:" + std::to_string(n));
  for (const char *s : {"circ:12,1,3", "circ:16,1,5", "circ:20,1,3,5", "circ:24,1,5,7",
                        "2xknn:3,3", "3xknn:2,2", "4xknn:3,3", "2xcycle:6", "2xqd:3",
                        "qd:3+knn:3,3", "cycle:8+cycle:12", "2xcrown:5"})
    specs.emplace_back(s);
  std::vector<CorpusGraph> out;
  for (const auto &s : specs) {
    Graph g = parse_graph_spec(s);
    if (!g.is_regular())
      throw InvalidArgument("corpus entry " + s + " is not regular");
    out.push_back({s, g, g.max_degree()});
  }
  return out;
}

/// Bipartite graphs with parts 0..a-1 and a..a+b-1 and edges chosen by
/// `mask` over the a*b possible pairs (row-major).
inline Graph bipartite_from_mask(int a, int b, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      if (mask >> (i * b + j) & 1)
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(a + j)});
  return Graph(static_cast<std::size_t>(a + b), edges);
}

struct SampleGraph {
  std::string label;
  Graph graph;
};

/// Bipartite sample on at most `maxVertices` vertices: every edge set for
/// part sizes with a*b <= exhaustiveProduct, and `perShape` seeded random
/// graphs (edge density cycling through 1/5, 7/20, 1/2, 7/10) for every
/// other pair of part sizes a <= b.
inline std::vector<SampleGraph> bipartite_sample(int maxVertices = 14, int exhaustiveProduct = 9,
                                                 int perShape = 24, std::uint64_t seed = 2024) {
  std::vector<SampleGraph> out;
  const mpq_class densities[] = {mpq_class(1, 5), mpq_class(7, 20), mpq_class(1, 2),
                                 mpq_class(7, 10)};
  for (int a = 1; a <= maxVertices / 2; ++a)
    for (int b = a; a + b <= maxVertices; ++b) {
      const std::string shape = std::to_string(a) + "x" + std::to_string(b);
      if (a * b <= exhaustiveProduct) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << (a * b)); ++m)
          out.push_back({shape + ":" + std::to_string(m), bipartite_from_mask(a, b, m)});
        continue;
      }
      for (int k = 0; k < perShape; ++k) {
        const KeepRule rule(densities[k % 4]);
        std::uint64_t mask = 0;
        for (int e = 0; e < a * b; ++e)
          if (rule.keep(counter_hash(seed, static_cast<std::uint64_t>(a * 100 + b) * 1000 + k,
                                     static_cast<std::uint64_t>(e))))
            mask |= std::uint64_t{1} << e;
        out.push_back({shape + ":r" + std::to_string(k), bipartite_from_mask(a, b, mask)});
      }
    }
  return out;
}

} // namespace stableseq

#endif // STABLESEQ_CORPUS_HPP
