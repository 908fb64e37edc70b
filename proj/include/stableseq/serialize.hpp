#ifndef STABLESEQ_SERIALIZE_HPP
#define STABLESEQ_SERIALIZE_HPP

// JSON and CSV renderings of results, and the on-disk cache for small-set
// profiles. Big integers and rationals are written as decimal strings;
// intervals as their outward-rounded double endpoints.

#include <gmpxx.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "stableseq/bounds.hpp"
#include "stableseq/cube_estimates.hpp"
#include "stableseq/cube_structure.hpp"
#include "stableseq/exact_count.hpp"
#include "stableseq/percolation.hpp"
#include "stableseq/seq_analysis.hpp"

namespace stableseq {

using Json = nlohmann::ordered_json;

inline Json to_json(const Interval &x) { return Json{{"lo", x.lo()}, {"hi", x.hi()}}; }

inline Json to_json(const std::optional<std::pair<std::size_t, std::size_t>> &w) {
  if (!w)
    return nullptr;
  return Json::array({w->first, w->second});
}

inline Json to_json(const IndSetSequence &seq, const std::string &graph) {
  Json counts = Json::array();
  for (const auto &c : seq.counts)
    counts.push_back(c.get_str());
  return Json{{"graph", graph}, {"alpha", seq.alpha()}, {"total", seq.total().get_str()},
              {"counts", counts}};
}

inline Json to_json(const BoundTable &table) {
  Json rows = Json::array();
  for (const auto &r : table.rows) {
    Json row{{"t", r.t}, {"lower_log2", to_json(r.lowerLog2)}, {"upper_log2", to_json(r.upperLog2)},
             {"tags", r.tags}};
    row["exact"] = r.exact ? Json(r.exact->get_str()) : Json(nullptr);
    rows.push_back(row);
  }
  return Json{{"vertices", table.nVerts}, {"degree", table.d}, {"rows", rows}};
}

inline const char *to_string(Direction d) {
  return d == Direction::Increasing ? "increasing" : "decreasing";
}

inline Json to_json(const MonotonicityReport &r) {
  return Json{{"kind", to_string(r.kind)},
              {"strict", r.strictness == Strictness::Strict},
              {"lo", r.lo},
              {"hi", r.hi},
              {"s", r.s},
              {"holds", r.holds},
              {"witness", to_json(r.witness)}};
}

inline Json to_json(const UnimodalityVerdict &v) {
  return Json{{"property", "unimodal"},
              {"verdict", v.unimodal ? "unimodal" : "not unimodal"},
              {"holds", v.unimodal},
              {"mode", v.mode},
              {"witness", to_json(v.witness)}};
}

inline Json to_json(const PropertyBGS &p) {
  return Json{{"property", "beta-gamma-s"},
              {"beta", p.beta.get_str()},
              {"gamma", p.gamma.get_str()},
              {"s", p.s},
              {"holds", p.holds},
              {"increasing", to_json(p.increasing)},
              {"increasing_empty", p.increasingEmpty},
              {"decreasing", to_json(p.decreasing)},
              {"decreasing_empty", p.decreasingEmpty}};
}

inline Json to_json(const FinalThirdVerdict &v) {
  return Json{{"property", "final-third"},
              {"holds", v.holds},
              {"start", v.start},
              {"witness", to_json(v.witness)}};
}

inline Json to_json(const StructureStats &s) {
  return Json{{"d", s.d},          {"side", to_string(s.side)}, {"size", s.size},
              {"nbhd", s.nbhd},    {"closure", s.closure},      {"small", s.small},
              {"comps", s.comps},  {"max_comp", s.maxComp}};
}

inline Json to_json(const CubeEstimate &e) {
  Json j{{"d", e.d}, {"t", e.t.get_str()}, {"range", to_string(e.tag)}};
  j["lambda"] = e.lambda ? Json(e.lambda->get_str()) : Json(nullptr);
  j["f_cut"] = e.fCut ? Json(e.fCut->get_str()) : Json(nullptr);
  j["central_log2"] = to_json(e.centralLog2);
  j["e1_log2"] = e.e1Log2 ? to_json(*e.e1Log2) : Json(nullptr);
  if (!e.e1Log2)
    j["e1_note"] = e.e1Note;
  j["e2_log2"] = e.e2Log2 ? to_json(*e.e2Log2) : Json(nullptr);
  if (!e.e2Log2)
    j["e2_note"] = e.e2Note;
  return j;
}

inline Json to_json(const ExperimentSummary &s) {
  Json trials = Json::array();
  for (const auto &r : s.perTrial)
    trials.push_back(Json{{"trial", r.trial},
                          {"stream", r.stream},
                          {"edges", r.edges},
                          {"h", r.hValue.get_str()},
                          {"s", r.s},
                          {"verdict", r.verdict},
                          {"vacuous", r.vacuous}});
  return Json{{"base", s.config.base},
              {"p", s.config.p.get_str()},
              {"seed", s.config.seed},
              {"trials", s.config.trials},
              {"epsilon", s.epsilon.get_str()},
              {"s_rule", s.stepRule},
              {"d_prime", s.dPrime.get_str()},
              {"d_prime_rule", s.dPrimeRule},
              {"successes", s.successes},
              {"vacuous", s.vacuous},
              {"success_rate", s.success_rate().get_str()},
              {"per_trial", trials}};
}

// ------------------------------------------------------------------- CSV

inline std::string csv_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_csv(std::ostream &out, const IndSetSequence &seq) {
  out << "t,count\n";
  for (std::size_t t = 0; t < seq.counts.size(); ++t)
    out << t << ',' << seq.counts[t] << '\n';
}

inline void write_csv(std::ostream &out, const BoundTable &table) {
  out << "t,lower_log2_lo,lower_log2_hi,upper_log2_lo,upper_log2_hi,exact,tags\n";
  for (const auto &r : table.rows) {
    out << r.t << ',' << csv_double(r.lowerLog2.lo()) << ',' << csv_double(r.lowerLog2.hi()) << ','
        << csv_double(r.upperLog2.lo()) << ',' << csv_double(r.upperLog2.hi()) << ','
        << (r.exact ? r.exact->get_str() : std::string()) << ',';
    for (std::size_t i = 0; i < r.tags.size(); ++i)
      out << (i ? ";" : "") << r.tags[i];
    out << '\n';
  }
}

inline void write_csv(std::ostream &out, const ExperimentSummary &s) {
  out << "trial,stream,edges,h,s,verdict,vacuous\n";
  for (const auto &r : s.perTrial)
    out << r.trial << ',' << r.stream << ',' << r.edges << ',' << r.hValue << ',' << r.s << ','
        << (r.verdict ? 1 : 0) << ',' << (r.vacuous ? 1 : 0) << '\n';
}

// ------------------------------------------------------- profile cache

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline Json profile_table_json(const SmallSetProfile &p) {
  Json table = Json::array();
  for (const auto &row : p.table) {
    Json r = Json::array();
    for (const auto &c : row)
      r.push_back(c.get_str());
    table.push_back(r);
  }
  return table;
}

inline std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

inline std::filesystem::path profile_cache_path(const std::filesystem::path &dir, int d,
                                                SmallPredicate pred) {
  return dir / ("smallsets-d" + std::to_string(d) + "-" + to_string(pred) + ".json");
}

/// Loads a cached profile if the file exists, matches (d, predicate) and
/// its checksum; otherwise returns nullopt.
inline std::optional<SmallSetProfile> load_profile(const std::filesystem::path &file, int d,
                                                   SmallPredicate pred) {
  std::ifstream in(file);
  if (!in)
    return std::nullopt;
  try {
    Json j = Json::parse(in);
    if (j.at("d").get<int>() != d || j.at("predicate").get<std::string>() != to_string(pred))
      return std::nullopt;
    const Json &table = j.at("table");
    if (j.at("checksum").get<std::string>() != hex64(fnv1a(table.dump())))
      return std::nullopt;
    SmallSetProfile p;
    p.d = d;
    p.predicate = pred;
    for (const auto &row : table) {
      p.table.emplace_back();
      for (const auto &c : row)
        p.table.back().emplace_back(c.get<std::string>());
    }
    return p;
  } catch (const std::exception &) {
    return std::nullopt;
  }
}

inline void store_profile(const std::filesystem::path &file, const SmallSetProfile &p) {
  Json table = profile_table_json(p);
  Json j{{"d", p.d}, {"predicate", to_string(p.predicate)}, {"checksum", hex64(fnv1a(table.dump()))},
         {"table", table}};
  std::filesystem::create_directories(file.parent_path());
  std::ofstream(file) << j.dump() << '\n';
}

/// small_set_profile behind the cache in $STABLESEQ_CACHE_DIR (no caching
/// when unset). Corrupt or mismatched files are recomputed and replaced.
inline SmallSetProfile cached_small_set_profile(int d, SmallPredicate pred, unsigned workers = 1) {
  const char *dir = std::getenv("STABLESEQ_CACHE_DIR");
  if (!dir || !*dir)
    return small_set_profile(d, pred, workers);
  const auto file = profile_cache_path(dir, d, pred);
  if (auto hit = load_profile(file, d, pred))
    return *hit;
  auto p = small_set_profile(d, pred, workers);
  store_profile(file, p);
  return p;
}

} // namespace stableseq

#endif // STABLESEQ_SERIALIZE_HPP
