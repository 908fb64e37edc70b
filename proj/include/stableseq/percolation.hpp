#ifndef STABLESEQ_PERCOLATION_HPP
#define STABLESEQ_PERCOLATION_HPP

// Bond percolation G^p and G(n, n, p), plus a harness that estimates how
// often sampled graphs have property (eps, eps, s).
//
// Randomness is counter based: the coin for edge e in stream k under seed
// x is a hash of (x, k, e), so samples do not depend on evaluation order or
// worker count.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "stableseq/bounds.hpp"
#include "stableseq/error.hpp"
#include "stableseq/exact_count.hpp"
#include "stableseq/graph.hpp"
#include "stableseq/seq_analysis.hpp"

namespace stableseq {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// 64-bit value determined by (seed, stream, index) alone.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ splitmix64(stream ^ 0x5851f42d4c957f2dULL));
  return splitmix64(x ^ splitmix64(index ^ 0x14057b7ef767814fULL));
}

/// Keep-threshold floor(p 2^64); an edge survives when its hash is below
/// it. p = 1 keeps everything.
struct KeepRule {
  bool all = false;
  std::uint64_t threshold = 0;

  explicit KeepRule(const mpq_class &p) {
    if (p < 0 || p > 1)
      throw InvalidArgument("retention probability must lie in [0, 1]");
    if (p == 1) {
      all = true;
      return;
    }
    mpz_class t = floor_q(p * mpq_class(pow2(64)));
    threshold = std::stoull(t.get_str());
  }

  bool keep(std::uint64_t h) const { return all || h < threshold; }
};

/// G^p: each edge of g (indexed in the order of g.edges()) is kept
/// independently with probability p.
inline Graph percolate(const Graph &g, const mpq_class &p, std::uint64_t seed,
                       std::uint64_t stream = 0) {
  const KeepRule rule(p);
  const auto all = g.edges();
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (rule.keep(counter_hash(seed, stream, i)))
      kept.push_back(all[i]);
  return Graph(g.size(), kept, g.labels());
}

/// G(n, n, p) = percolation on K_{n,n}; vertices 0..n-1 form one side.
inline Graph gnnp(int n, const mpq_class &p, std::uint64_t seed, std::uint64_t stream = 0) {
  if (n < 1)
    throw InvalidArgument("G(n, n, p) needs n >= 1");
  return percolate(complete_bipartite(n, n), p, seed, stream);
}

enum class StepRuleKind { AlmostRegular, Regular, Fixed };

/// How s is chosen per trial: C(eps) max{log2 n, n h(G, d')} (almost
/// regular), the regular-graph scan at the base degree, or a fixed value.
struct StepRule {
  StepRuleKind kind = StepRuleKind::AlmostRegular;
  std::uint64_t fixed = 1;

  std::string str() const {
    switch (kind) {
    case StepRuleKind::AlmostRegular:
      return "almost-regular";
    case StepRuleKind::Regular:
      return "regular";
    case StepRuleKind::Fixed:
      return "fixed:" + std::to_string(fixed);
    }
    return "?";
  }
};

inline StepRule parse_step_rule(std::string_view s) {
  if (s == "almost-regular")
    return {};
  if (s == "regular")
    return {StepRuleKind::Regular, 1};
  if (s.starts_with("fixed:")) {
    std::string num(s.substr(6));
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos || std::stoull(num) == 0)
      throw InvalidArgument("fixed step needs a positive integer, got '" + std::string(s) + "'");
    return {StepRuleKind::Fixed, std::stoull(num)};
  }
  throw InvalidArgument("unknown step rule '" + std::string(s) +
                        "' (expected almost-regular, regular or fixed:K)");
}

struct PercolationConfig {
  std::string base = "knn:16,16";
  mpq_class p = mpq_class(1, 2);
  std::uint64_t seed = 1;
  std::uint64_t trials = 100;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t stream = 0;
  std::size_t edges = 0;
  mpq_class hValue;
  std::uint64_t s = 1;
  bool verdict = false;
  bool vacuous = false; ///< s exceeds both interval lengths, so nothing was compared

  bool operator==(const TrialRecord &) const = default;
};

struct ExperimentSummary {
  PercolationConfig config;
  mpq_class epsilon;
  std::string stepRule;
  mpq_class dPrime;
  std::string dPrimeRule = "p * maxdeg(base)";
  std::vector<TrialRecord> perTrial;
  std::uint64_t successes = 0;
  std::uint64_t vacuous = 0;

  mpq_class success_rate() const {
    mpq_class r(static_cast<unsigned long>(successes), static_cast<unsigned long>(perTrial.size()));
    r.canonicalize();
    return r;
  }

  bool operator==(const ExperimentSummary &o) const {
    return config.base == o.config.base && config.p == o.config.p && config.seed == o.config.seed &&
           config.trials == o.config.trials && epsilon == o.epsilon && stepRule == o.stepRule &&
           dPrime == o.dPrime && perTrial == o.perTrial && successes == o.successes &&
           vacuous == o.vacuous;
  }
};

/// Samples config.trials percolated copies of the base graph (trial k uses
/// stream k), counts each exactly through the base bipartition, and checks
/// property (eps, eps, s) with s from `rule`.
inline ExperimentSummary run_experiment(const PercolationConfig &config, const mpq_class &epsilon,
                                        const StepRule &rule = {}, unsigned workers = 1,
                                        std::size_t sideCap = 22) {
  if (config.trials < 1)
    throw InvalidArgument("trials must be at least 1");
  if (epsilon <= 0 || epsilon >= 1)
    throw InvalidArgument("epsilon must lie in (0, 1)");
  const Graph base = parse_graph_spec(config.base);
  const Bipartition parts = require_bipartition(base);
  if (parts.sizeE() > sideCap)
    throw CapExceeded("exact counting of the samples enumerates 2^" +
                      std::to_string(parts.sizeE()) + " subsets; cap is 2^" +
                      std::to_string(sideCap));
  if (base.size() % 2 != 0)
    throw InvalidArgument("property (eps, eps, s) needs an even number of vertices");
  const std::uint64_t n = base.size() / 2;
  const std::uint64_t maxDeg = base.max_degree();
  ExperimentSummary out;
  out.config = config;
  out.epsilon = epsilon;
  out.stepRule = rule.str();
  out.dPrime = config.p * static_cast<unsigned long>(maxDeg);
  if (rule.kind == StepRuleKind::AlmostRegular && out.dPrime <= 0)
    throw InvalidArgument("d' = p * maxdeg(base) must be positive for the almost-regular rule");
  if (rule.kind == StepRuleKind::Regular && !base.is_regular())
    throw NotApplicable("the regular step rule needs a regular base graph");
  const std::uint64_t regularS =
      rule.kind == StepRuleKind::Regular ? regular_step_bound(n, maxDeg, epsilon).s : 0;

  out.perTrial.resize(config.trials);
  auto run_trial = [&](std::uint64_t k) {
    TrialRecord &rec = out.perTrial[k];
    rec.trial = k;
    rec.stream = k;
    Graph g = percolate(base, config.p, config.seed, k);
    rec.edges = g.edge_count();
    if (out.dPrime > 0)
      rec.hValue = regularity_profile(g, parts, out.dPrime).hValue;
    switch (rule.kind) {
    case StepRuleKind::AlmostRegular:
      rec.s = almost_regular_step(n, rec.hValue, epsilon);
      break;
    case StepRuleKind::Regular:
      rec.s = regularS;
      break;
    case StepRuleKind::Fixed:
      rec.s = rule.fixed;
      break;
    }
    auto seq = count_bipartite(g, parts, sideCap);
    auto prop = check_property_bgs(seq, mpq_class(static_cast<unsigned long>(n)), epsilon, epsilon,
                                   rec.s);
    rec.verdict = prop.holds;
    auto idle = [&](const MonotonicityReport &m, bool empty) { return empty || m.hi - m.lo < rec.s; };
    rec.vacuous = idle(prop.increasing, prop.increasingEmpty) && idle(prop.decreasing, prop.decreasingEmpty);
  };
  const unsigned pool = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(config.trials)));
  if (pool == 1) {
    for (std::uint64_t k = 0; k < config.trials; ++k)
      run_trial(k);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < pool; ++w)
      threads.emplace_back([&, w] {
        for (std::uint64_t k = w; k < config.trials; k += pool)
          run_trial(k);
      });
    for (auto &th : threads)
      th.join();
  }
  for (const auto &rec : out.perTrial) {
    out.successes += rec.verdict;
    out.vacuous += rec.vacuous;
  }
  return out;
}

} // namespace stableseq

#endif // STABLESEQ_PERCOLATION_HPP
