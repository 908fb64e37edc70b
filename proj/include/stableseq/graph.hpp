#ifndef STABLESEQ_GRAPH_HPP
#define STABLESEQ_GRAPH_HPP

// Simple undirected graphs, the named families used throughout the library,
// two-colouring, and the almost-regularity parameter h(G, d).

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stableseq/bitset.hpp"
#include "stableseq/error.hpp"

namespace stableseq {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge &, const Edge &) = default;
  friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Finite simple graph on vertices 0..n-1. Immutable after construction.
///
/// Neighbour lists are always kept (sorted). Neighbour bitsets are built
/// as well when n <= kDenseLimit; they back the bit-parallel algorithms.
class Graph {
public:
  static constexpr std::size_t kDenseLimit = 4096;

  Graph() = default;

  Graph(std::size_t n, std::span<const Edge> edges, std::vector<std::string> labels = {})
      : n_(n), nbrs_(n), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != n)
      throw InvalidArgument("label count does not match vertex count");
    for (const Edge &e : edges) {
      if (e.u >= n || e.v >= n)
        throw InvalidArgument("edge endpoint out of range");
      if (e.u == e.v)
        throw InvalidArgument("self-loops are not allowed");
      nbrs_[e.u].push_back(e.v);
      nbrs_[e.v].push_back(e.u);
    }
    for (auto &l : nbrs_) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
      m_ += l.size();
    }
    m_ /= 2;
    if (n_ <= kDenseLimit) {
      rows_.assign(n_, DynBitset(n_));
      for (std::size_t v = 0; v < n_; ++v)
        for (Vertex u : nbrs_[v])
          rows_[v].set(u);
    }
  }

  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return m_; }
  std::size_t degree(Vertex v) const { return nbrs_[v].size(); }
  std::span<const Vertex> neighbors(Vertex v) const { return nbrs_[v]; }
  bool dense() const { return !rows_.empty() || n_ == 0; }

  const DynBitset &neighbor_bits(Vertex v) const {
    if (rows_.empty())
      throw CapExceeded("neighbour bitsets are only built for graphs up to 4096 vertices");
    return rows_[v];
  }

  bool adjacent(Vertex u, Vertex v) const {
    if (!rows_.empty())
      return rows_[u].test(v);
    return std::binary_search(nbrs_[u].begin(), nbrs_[u].end(), v);
  }

  /// Edges with u < v in lexicographic order; this order indexes edges for
  /// percolation streams.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : nbrs_[u])
        if (u < v)
          out.push_back({u, v});
    return out;
  }

  std::size_t max_degree() const {
    std::size_t m = 0;
    for (const auto &l : nbrs_)
      m = std::max(m, l.size());
    return m;
  }
  std::size_t min_degree() const {
    if (n_ == 0)
      return 0;
    std::size_t m = nbrs_[0].size();
    for (const auto &l : nbrs_)
      m = std::min(m, l.size());
    return m;
  }
  bool is_regular() const { return max_degree() == min_degree(); }

  const std::vector<std::string> &labels() const { return labels_; }

  /// Full scan: symmetric, irreflexive, bitsets of width n matching the lists.
  bool check_invariants() const {
    for (Vertex v = 0; v < n_; ++v) {
      for (Vertex u : nbrs_[v]) {
        if (u == v || u >= n_)
          return false;
        if (!std::binary_search(nbrs_[u].begin(), nbrs_[u].end(), v))
          return false;
      }
      if (!rows_.empty()) {
        if (rows_[v].width() != n_ || rows_[v].count() != nbrs_[v].size() || rows_[v].test(v))
          return false;
        for (Vertex u : nbrs_[v])
          if (!rows_[v].test(u) || !rows_[u].test(v))
            return false;
      }
    }
    return true;
  }

private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<Vertex>> nbrs_;
  std::vector<DynBitset> rows_;
  std::vector<std::string> labels_;
};

struct GraphLimits {
  std::size_t max_vertices = std::size_t{1} << 20;
};

namespace detail {
inline void check_cap(std::size_t n, const GraphLimits &lim) {
  if (n > lim.max_vertices)
    throw CapExceeded("graph would have " + std::to_string(n) + " vertices (cap " +
                      std::to_string(lim.max_vertices) + ")");
}
} // namespace detail

// ---------------------------------------------------------------- families

/// Hypercube Q_d; vertex i is the binary string with value i.
inline Graph hypercube(int d, const GraphLimits &lim = {}) {
  if (d < 0)
    throw InvalidArgument("hypercube dimension must be non-negative");
  if (d > 30)
    throw CapExceeded("hypercube dimension too large");
  std::size_t n = std::size_t{1} << d;
  detail::check_cap(n, lim);
  std::vector<Edge> edges;
  edges.reserve(n * static_cast<std::size_t>(d) / 2);
  for (std::size_t v = 0; v < n; ++v)
    for (int i = 0; i < d; ++i) {
      std::size_t u = v ^ (std::size_t{1} << i);
      if (v < u)
        edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(u)});
    }
  return Graph(n, edges);
}

/// K_{a,b}: vertices 0..a-1 on one side, a..a+b-1 on the other.
inline Graph complete_bipartite(int a, int b, const GraphLimits &lim = {}) {
  if (a < 0 || b < 0)
    throw InvalidArgument("complete bipartite sides must be non-negative");
  std::size_t n = static_cast<std::size_t>(a) + static_cast<std::size_t>(b);
  detail::check_cap(n, lim);
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(a + j)});
  return Graph(n, edges);
}

inline Graph cycle_graph(int n, const GraphLimits &lim = {}) {
  if (n < 3)
    throw InvalidArgument("a cycle needs at least 3 vertices");
  detail::check_cap(static_cast<std::size_t>(n), lim);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  return Graph(static_cast<std::size_t>(n), edges);
}

inline Graph path_graph(int n, const GraphLimits &lim = {}) {
  if (n < 1)
    throw InvalidArgument("a path needs at least 1 vertex");
  detail::check_cap(static_cast<std::size_t>(n), lim);
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i)
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  return Graph(static_cast<std::size_t>(n), edges);
}

inline Graph empty_graph(int n, const GraphLimits &lim = {}) {
  if (n < 0)
    throw InvalidArgument("vertex count must be non-negative");
  detail::check_cap(static_cast<std::size_t>(n), lim);
  return Graph(static_cast<std::size_t>(n), std::span<const Edge>{});
}

/// K_{n,n} minus a perfect matching; (n-1)-regular bipartite.
inline Graph crown_graph(int n, const GraphLimits &lim = {}) {
  if (n < 1)
    throw InvalidArgument("crown graph needs n >= 1");
  detail::check_cap(2 * static_cast<std::size_t>(n), lim);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(n + j)});
  return Graph(2 * static_cast<std::size_t>(n), edges);
}

/// Circulant on Z_m joining i and i+o for each offset o. With m even and all
/// offsets odd the result is bipartite (even/odd residues).
inline Graph circulant(int m, std::span<const int> offsets, const GraphLimits &lim = {}) {
  if (m < 1)
    throw InvalidArgument("circulant order must be positive");
  detail::check_cap(static_cast<std::size_t>(m), lim);
  std::vector<Edge> edges;
  for (int o : offsets) {
    if (o <= 0 || o >= m)
      throw InvalidArgument("circulant offsets must lie in [1, m-1]");
    for (int i = 0; i < m; ++i)
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + o) % m)});
  }
  return Graph(static_cast<std::size_t>(m), edges);
}

/// Claw whose leaves become K_4, whose centre becomes K_37, and whose edges
/// become complete joins. Its independent set polynomial is
/// 1 + 49x + 48x^2 + 64x^3, a standard non-unimodal example.
inline Graph aems_claw_composite() {
  constexpr int center = 37, leaf = 4;
  std::vector<Edge> edges;
  auto clique = [&](int first, int size) {
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j)
        edges.push_back({static_cast<Vertex>(first + i), static_cast<Vertex>(first + j)});
  };
  clique(0, center);
  for (int l = 0; l < 3; ++l) {
    int first = center + l * leaf;
    clique(first, leaf);
    for (int c = 0; c < center; ++c)
      for (int i = 0; i < leaf; ++i)
        edges.push_back({static_cast<Vertex>(c), static_cast<Vertex>(first + i)});
  }
  return Graph(center + 3 * leaf, edges);
}

inline Graph disjoint_union(const Graph &a, const Graph &b, const GraphLimits &lim = {}) {
  detail::check_cap(a.size() + b.size(), lim);
  std::vector<Edge> edges = a.edges();
  auto shift = static_cast<Vertex>(a.size());
  for (Edge e : b.edges())
    edges.push_back({e.u + shift, e.v + shift});
  return Graph(a.size() + b.size(), edges);
}

// ----------------------------------------------------------------- file IO

/// Plain text: "n m" followed by m lines "u v" (0-based).
inline Graph read_graph(std::istream &in, const GraphLimits &lim = {}) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0)
    throw InvalidArgument("graph file: expected header 'n m'");
  detail::check_cap(static_cast<std::size_t>(n), lim);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(in >> u >> v))
      throw InvalidArgument("graph file: expected " + std::to_string(m) + " edge lines");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidArgument("graph file: endpoint out of range on edge " + std::to_string(i));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph(static_cast<std::size_t>(n), edges);
}

inline void write_graph(std::ostream &out, const Graph &g) {
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (Edge e : g.edges())
    out << e.u << ' ' << e.v << '\n';
}

// -------------------------------------------------------------- spec strings

namespace detail {
inline std::vector<int> parse_int_list(std::string_view s, std::string_view whole) {
  std::vector<int> out;
  while (!s.empty()) {
    auto comma = s.find(',');
    std::string_view tok = s.substr(0, comma);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
      throw InvalidArgument("malformed graph spec '" + std::string(whole) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos)
      break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

inline Graph parse_single_spec(std::string_view spec, const GraphLimits &lim) {
  auto colon = spec.find(':');
  std::string_view name = spec.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto args = [&](std::size_t want) {
    auto v = parse_int_list(rest, spec);
    if (want != 0 && v.size() != want)
      throw InvalidArgument("graph spec '" + std::string(spec) + "' expects " +
                            std::to_string(want) + " parameter(s)");
    return v;
  };
  if (name == "aems") {
    if (!rest.empty())
      throw InvalidArgument("graph spec 'aems' takes no parameters");
    return aems_claw_composite();
  }
  if (name == "qd")
    return hypercube(args(1)[0], lim);
  if (name == "knn") {
    auto v = args(2);
    return complete_bipartite(v[0], v[1], lim);
  }
  if (name == "star")
    return complete_bipartite(1, args(1)[0], lim);
  if (name == "cycle")
    return cycle_graph(args(1)[0], lim);
  if (name == "path")
    return path_graph(args(1)[0], lim);
  if (name == "empty")
    return empty_graph(args(1)[0], lim);
  if (name == "crown")
    return crown_graph(args(1)[0], lim);
  if (name == "circ") {
    auto v = args(0);
    if (v.size() < 2)
      throw InvalidArgument("graph spec 'circ:m,o1,...' needs an order and offsets");
    return circulant(v[0], std::span<const int>(v).subspan(1), lim);
  }
  if (name == "file") {
    std::ifstream in{std::string(rest)};
    if (!in)
      throw InvalidArgument("cannot open graph file '" + std::string(rest) + "'");
    return read_graph(in, lim);
  }
  throw InvalidArgument("unknown graph family '" + std::string(name) + "'");
}
} // namespace detail

/// Builds a graph from a spec string such as "qd:5", "knn:8,8", "cycle:12",
/// "path:4", "star:3", "crown:5", "circ:12,1,3", "empty:4", "aems" or
/// "file:PATH". Specs joined by '+' give a disjoint union; a "Nx" prefix
/// repeats a component ("3xknn:2,2").
inline Graph parse_graph_spec(std::string_view spec, const GraphLimits &lim = {}) {
  if (spec.empty())
    throw InvalidArgument("empty graph spec");
  Graph acc;
  bool first = true;
  while (true) {
    auto plus = spec.find('+');
    std::string_view part = spec.substr(0, plus);
    int copies = 1;
    if (auto x = part.find('x'); x != std::string_view::npos && x > 0 &&
                                 part.substr(0, x).find_first_not_of("0123456789") ==
                                     std::string_view::npos) {
      copies = detail::parse_int_list(part.substr(0, x), spec)[0];
      part.remove_prefix(x + 1);
      if (copies < 1)
        throw InvalidArgument("repeat count must be positive in '" + std::string(spec) + "'");
    }
    Graph g = detail::parse_single_spec(part, lim);
    for (int c = 0; c < copies; ++c) {
      acc = first ? g : disjoint_union(acc, g, lim);
      first = false;
    }
    if (plus == std::string_view::npos)
      break;
    spec.remove_prefix(plus + 1);
  }
  return acc;
}

// --------------------------------------------------------------- bipartition

/// Two colour classes with |classO| >= |classE|.
struct Bipartition {
  DynBitset classE;
  DynBitset classO;
  std::vector<Vertex> membersE;
  std::vector<Vertex> membersO;

  std::size_t sizeE() const { return membersE.size(); }
  std::size_t sizeO() const { return membersO.size(); }
  bool inE(Vertex v) const { return classE.test(v); }
};

struct BipartitionResult {
  std::optional<Bipartition> parts;
  /// Vertices of an odd cycle, in cycle order, when the graph is not bipartite.
  std::vector<Vertex> oddCycle;

  bool bipartite() const { return parts.has_value(); }
};

/// Breadth-first two-colouring. Each component is rooted at its smallest
/// vertex, which gets colour 0; colour 0 is the class E unless it is the
/// strictly larger class. On Q_d this makes E the even-weight strings.
inline BipartitionResult bipartition(const Graph &g) {
  const std::size_t n = g.size();
  std::vector<int> colour(n, -1);
  std::vector<Vertex> parent(n, 0);
  std::vector<std::size_t> depth(n, 0);
  BipartitionResult res;
  for (Vertex root = 0; root < n; ++root) {
    if (colour[root] != -1)
      continue;
    colour[root] = 0;
    parent[root] = root;
    std::queue<Vertex> q;
    q.push(root);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex u : g.neighbors(v)) {
        if (colour[u] == -1) {
          colour[u] = 1 - colour[v];
          parent[u] = v;
          depth[u] = depth[v] + 1;
          q.push(u);
        } else if (colour[u] == colour[v]) {
          // Climb both tree paths to their meeting point.
          std::vector<Vertex> left{v}, right{u};
          Vertex a = v, b = u;
          while (depth[a] > depth[b]) {
            a = parent[a];
            left.push_back(a);
          }
          while (depth[b] > depth[a]) {
            b = parent[b];
            right.push_back(b);
          }
          while (a != b) {
            a = parent[a];
            b = parent[b];
            left.push_back(a);
            right.push_back(b);
          }
          right.pop_back();
          res.oddCycle = std::move(left);
          res.oddCycle.insert(res.oddCycle.end(), right.rbegin(), right.rend());
          return res;
        }
      }
    }
  }
  Bipartition b{DynBitset(n), DynBitset(n), {}, {}};
  std::size_t zeros = static_cast<std::size_t>(std::count(colour.begin(), colour.end(), 0));
  int colourE = zeros <= n - zeros ? 0 : 1;
  for (Vertex v = 0; v < n; ++v) {
    if (colour[v] == colourE) {
      b.classE.set(v);
      b.membersE.push_back(v);
    } else {
      b.classO.set(v);
      b.membersO.push_back(v);
    }
  }
  res.parts = std::move(b);
  return res;
}

inline Bipartition require_bipartition(const Graph &g) {
  auto r = bipartition(g);
  if (!r.bipartite())
    throw NotBipartite("graph is not bipartite (odd cycle of length " +
                       std::to_string(r.oddCycle.size()) + ")");
  return std::move(*r.parts);
}

// ------------------------------------------------------------ almost-regular

/// The four summands of h(G, d), with 2n = |V| kept exact for odd |V|.
struct RegularityProfile {
  mpq_class d;
  mpq_class n;
  std::size_t lowDegCountE = 0;
  mpq_class excessDegSumO;
  std::size_t classGap = 0;
  mpq_class hValue;
};

/// h(G,d) = 1/d + #{v in E : d(v) < d}/n + sum_{v in O, d(v) >= d}(d(v)-d)/(dn)
///          + (|O| - |E|)/n.
inline RegularityProfile regularity_profile(const Graph &g, const Bipartition &b,
                                            const mpq_class &d) {
  if (d <= 0)
    throw InvalidArgument("reference degree d must be positive");
  if (g.size() == 0)
    throw InvalidArgument("h(G,d) is undefined for the empty graph");
  RegularityProfile p;
  p.d = d;
  p.n = mpq_class(static_cast<unsigned long>(g.size()), 2UL);
  p.n.canonicalize();
  for (Vertex v : b.membersE)
    if (mpq_class(static_cast<unsigned long>(g.degree(v))) < d)
      ++p.lowDegCountE;
  p.excessDegSumO = 0;
  for (Vertex v : b.membersO) {
    mpq_class dv(static_cast<unsigned long>(g.degree(v)));
    if (dv >= d)
      p.excessDegSumO += dv - d;
  }
  p.classGap = b.sizeO() - b.sizeE();
  p.hValue = 1 / d + mpq_class(static_cast<unsigned long>(p.lowDegCountE)) / p.n +
             p.excessDegSumO / (d * p.n) + mpq_class(static_cast<unsigned long>(p.classGap)) / p.n;
  p.hValue.canonicalize();
  return p;
}

/// Parses "a", "a/b" or a finite decimal ("0.25") into an exact rational.
inline mpq_class parse_rational(std::string_view s) {
  std::string str(s);
  try {
    if (auto dot = str.find('.'); dot != std::string::npos) {
      std::string digits = str.substr(0, dot) + str.substr(dot + 1);
      if (digits.empty() || digits == "-")
        throw InvalidArgument("malformed rational '" + str + "'");
      mpz_class num(digits, 10), den = 1;
      for (std::size_t i = dot + 1; i < str.size(); ++i)
        den *= 10;
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    mpq_class q(str, 10);
    if (q.get_den() == 0)
      throw InvalidArgument("zero denominator in '" + str + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument &) {
    throw InvalidArgument("malformed rational '" + str + "'");
  }
}

} // namespace stableseq

#endif // STABLESEQ_GRAPH_HPP
