// Command-line front end. Exit codes: 0 success, 1 a mathematical check
// failed, 2 usage error (bad flags, malformed graph spec, cap exceeded).

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stableseq/stableseq.hpp"

using namespace stableseq;

namespace {

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string format = "plain";
  unsigned workers = 1;
  unsigned precision = 128;
  std::string cConstant = "1";
};

void print_json(const Json &j) { std::cout << j.dump(2) << '\n'; }

std::string join(const std::vector<mpz_class> &v) {
  std::ostringstream o;
  for (std::size_t i = 0; i < v.size(); ++i)
    o << (i ? " " : "") << v[i];
  return o.str();
}

std::string witness_str(const std::optional<std::pair<std::size_t, std::size_t>> &w) {
  return w ? "(" + std::to_string(w->first) + "," + std::to_string(w->second) + ")" : "none";
}

Backend parse_backend(const std::string &s) {
  if (s == "auto")
    return Backend::Auto;
  if (s == "general")
    return Backend::General;
  if (s == "side")
    return Backend::SideProfile;
  throw InvalidArgument("unknown backend '" + s + "'");
}

// ------------------------------------------------------------------ count

struct CountArgs {
  std::string graph;
  std::string backend = "auto";
};

int run_count(const Globals &g, const CountArgs &a) {
  CountOptions opt;
  opt.backend = parse_backend(a.backend);
  opt.workers = g.workers;
  Graph graph = parse_graph_spec(a.graph);
  auto seq = count_by_size(graph, opt);
  if (!seq.check_invariants(graph.size())) {
    std::cerr << "error: count sequence fails its basic invariants\n";
    return kMathFailure;
  }
  if (g.format == "json")
    print_json(to_json(seq, a.graph));
  else if (g.format == "csv")
    write_csv(std::cout, seq);
  else
    std::cout << "graph: " << a.graph << "\nalpha: " << seq.alpha() << "\ntotal: " << seq.total()
              << "\ncounts: " << join(seq.counts) << '\n';
  return kOk;
}

// ----------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string graph;
  bool exact = true;
};

int run_bounds(const Globals &g, const BoundsArgs &a) {
  Graph graph = parse_graph_spec(a.graph);
  if (!graph.is_regular() || graph.max_degree() == 0)
    throw NotApplicable("the count bounds need a regular graph of positive degree");
  require_bipartition(graph);
  std::optional<IndSetSequence> seq;
  if (a.exact) {
    CountOptions opt;
    opt.workers = g.workers;
    seq = count_by_size(graph, opt);
  }
  auto table = regular_bound_table(graph.size(), graph.max_degree(), seq ? &*seq : nullptr);
  auto bad = sandwich_violations(table);
  if (g.format == "json") {
    Json j = to_json(table);
    j["graph"] = a.graph;
    j["violations"] = bad.size();
    print_json(j);
  } else if (g.format == "csv") {
    write_csv(std::cout, table);
  } else {
    std::cout << "graph: " << a.graph << " (|V| = " << table.nVerts << ", d = " << table.d << ")\n";
    std::cout << "t  lower_log2  upper_log2" << (seq ? "  exact" : "") << '\n';
    for (const auto &r : table.rows) {
      std::cout << r.t << "  " << r.lowerLog2.str(10) << "  " << r.upperLog2.str(10);
      if (r.exact)
        std::cout << "  " << *r.exact;
      std::cout << '\n';
    }
    if (seq)
      std::cout << "violations: " << bad.size() << '\n';
  }
  return bad.empty() ? kOk : kMathFailure;
}

// ------------------------------------------------------------------ check

struct CheckArgs {
  std::string graph;
  std::string property = "unimodal";
  std::string beta = "0";
  std::string gamma = "0";
  std::size_t s = 1;
  std::size_t lo = 0;
  long hi = -1;
  std::string direction = "increasing";
};

int run_check(const Globals &g, const CheckArgs &a) {
  Graph graph = parse_graph_spec(a.graph);
  CountOptions opt;
  opt.workers = g.workers;
  auto seq = count_by_size(graph, opt);
  Json j;
  std::string plain;
  int code = kOk;
  if (a.property == "unimodal") {
    auto v = check_unimodal(seq);
    j = to_json(v);
    plain = std::string("verdict: ") + (v.unimodal ? "unimodal" : "not unimodal") +
            "\nmode: " + std::to_string(v.mode) + "\nwitness: " + witness_str(v.witness);
  } else if (a.property == "final-third") {
    auto v = check_final_third(seq);
    j = to_json(v);
    plain = std::string("verdict: ") + (v.holds ? "holds" : "fails") + "\nstart: " +
            std::to_string(v.start) + "\nwitness: " + witness_str(v.witness);
    // The final-third run is a theorem for bipartite graphs.
    if (!v.holds && bipartition(graph).parts)
      code = kMathFailure;
  } else if (a.property == "sstep") {
    Direction dir;
    if (a.direction == "increasing")
      dir = Direction::Increasing;
    else if (a.direction == "decreasing")
      dir = Direction::Decreasing;
    else
      throw InvalidArgument("direction must be increasing or decreasing");
    std::size_t hi = a.hi < 0 ? seq.alpha() : static_cast<std::size_t>(a.hi);
    auto v = check_sstep(seq, dir, a.lo, hi, a.s);
    j = to_json(v);
    plain = std::string("verdict: ") + (v.holds ? "holds" : "fails") + "\nwitness: " +
            witness_str(v.witness);
  } else if (a.property == "bgs") {
    if (graph.size() % 2 != 0)
      throw InvalidArgument("property (beta, gamma, s) needs an even number of vertices");
    auto v = check_property_bgs(seq, mpq_class(static_cast<unsigned long>(graph.size() / 2)),
                                parse_rational(a.beta), parse_rational(a.gamma), a.s);
    j = to_json(v);
    plain = std::string("verdict: ") + (v.holds ? "holds" : "fails") + "\nincreasing witness: " +
            witness_str(v.increasing.witness) + "\ndecreasing witness: " +
            witness_str(v.decreasing.witness);
  } else {
    throw InvalidArgument("unknown property '" + a.property + "'");
  }
  if (g.format == "json") {
    j["graph"] = a.graph;
    print_json(j);
  } else {
    std::cout << "graph: " << a.graph << "\nproperty: " << a.property << '\n' << plain << '\n';
  }
  return code;
}

// ------------------------------------------------------------ cube-window

struct WindowArgs {
  int d = 20;
  std::string t;
  std::size_t grid = 0;
  bool cases = false;
  int caseEnd = 200;
};

int run_cube_window(const Globals &g, const WindowArgs &a) {
  const mpq_class c = parse_rational(g.cConstant);
  if (a.cases) {
    Json out = Json::array();
    for (int which : {2, 3, 4}) {
      auto v = unimodality_case(which, 2, a.caseEnd);
      Json holds = Json::array();
      for (bool h : v.holds)
        holds.push_back(h);
      out.push_back(Json{{"case", v.name},
                         {"d_min", v.dMin},
                         {"d_max", v.dMax},
                         {"d0", v.d0 ? Json(*v.d0) : Json(nullptr)},
                         {"monotone_tail", v.monotoneTail},
                         {"holds", holds}});
    }
    if (g.format == "json") {
      print_json(out);
    } else {
      if (g.format == "csv")
        std::cout << "case,d0,monotone_tail\n";
      for (const auto &v : out) {
        std::string d0 = v["d0"].is_null() ? "none" : std::to_string(v["d0"].get<int>());
        if (g.format == "csv")
          std::cout << v["case"].get<std::string>() << ',' << d0 << ','
                    << (v["monotone_tail"].get<bool>() ? 1 : 0) << '\n';
        else
          std::cout << v["case"].get<std::string>() << ": d0 = " << d0
                    << (v["monotone_tail"].get<bool>() ? " (monotone tail)" : "") << '\n';
      }
    }
    return kOk;
  }
  std::vector<mpz_class> ts;
  const mpz_class half = cube_half(a.d);
  if (!a.t.empty()) {
    ts.emplace_back(a.t);
  } else {
    if (a.grid < 2)
      throw InvalidArgument("cube-window needs --t or --grid N (N >= 2)");
    for (std::size_t i = 0; i < a.grid; ++i)
      ts.push_back(1 + (half - 2) * static_cast<unsigned long>(i) /
                           static_cast<unsigned long>(a.grid - 1));
  }
  std::vector<CubeEstimate> rows;
  for (const auto &t : ts)
    rows.push_back(cube_window(a.d, t, c));
  if (g.format == "json") {
    Json out = Json::array();
    for (const auto &e : rows)
      out.push_back(to_json(e));
    print_json(rows.size() == 1 ? out[0] : out);
  } else if (g.format == "csv") {
    std::cout << "d,t,range,central_log2,e1_log2_lo,e1_log2_hi,e2_log2_lo,e2_log2_hi\n";
    for (const auto &e : rows) {
      std::cout << e.d << ',' << e.t << ',' << to_string(e.tag) << ','
                << csv_double(e.centralLog2.mid()) << ',';
      std::cout << (e.e1Log2 ? csv_double(e.e1Log2->lo()) + "," + csv_double(e.e1Log2->hi()) : ",")
                << ',';
      std::cout << (e.e2Log2 ? csv_double(e.e2Log2->lo()) + "," + csv_double(e.e2Log2->hi()) : ",")
                << '\n';
    }
  } else {
    for (const auto &e : rows) {
      std::cout << "d = " << e.d << ", t = " << e.t << ", range " << to_string(e.tag) << '\n'
                << "  central log2: " << e.centralLog2.str(12) << '\n'
                << "  E1 log2: " << (e.e1Log2 ? e.e1Log2->str(8) : "n/a (" + e.e1Note + ")") << '\n'
                << "  E2 log2: " << (e.e2Log2 ? e.e2Log2->str(8) : "n/a (" + e.e2Note + ")") << '\n';
    }
  }
  return kOk;
}

// --------------------------------------------------------- cube-structure

struct StructureArgs {
  int d = 4;
  std::string set;
  bool bounds = false;
  std::string identity;
};

std::vector<std::uint32_t> parse_vertex_list(const std::string &s, int d) {
  std::vector<std::uint32_t> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty())
      continue;
    bool bits = item.size() == static_cast<std::size_t>(d) &&
                item.find_first_not_of("01") == std::string::npos && d > 1;
    if (bits) {
      // Bit strings read left to right as coordinates 1..d.
      std::uint32_t v = 0;
      for (int i = 0; i < d; ++i)
        if (item[static_cast<std::size_t>(i)] == '1')
          v |= std::uint32_t{1} << i;
      out.push_back(v);
    } else {
      if (item.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidArgument("vertex '" + item + "' is neither an integer nor a " +
                              std::to_string(d) + "-bit string");
      out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
  }
  return out;
}

int run_cube_structure(const Globals &g, const StructureArgs &a) {
  if (!a.identity.empty()) {
    std::vector<std::uint64_t> v;
    std::stringstream in(a.identity);
    std::string item;
    while (std::getline(in, item, ','))
      v.push_back(std::stoull(item));
    if (v.size() != 3)
      throw InvalidArgument("--identity expects t,a,g");
    auto r = binomial_shift_identity(a.d, v[0], v[1], v[2]);
    if (g.format == "json")
      print_json(Json{{"d", a.d}, {"t", v[0]}, {"a", v[1]}, {"g", v[2]}, {"lhs", r.lhs.get_str()},
                      {"rhs", r.rhs.get_str()}, {"correction", r.correction.get_str()},
                      {"equal", r.equal}});
    else
      std::cout << "lhs: " << r.lhs << "\nrhs: " << r.rhs << "\nequal: " << (r.equal ? "yes" : "no")
                << '\n';
    return r.equal ? kOk : kMathFailure;
  }
  if (a.bounds) {
    CountOptions opt;
    opt.workers = g.workers;
    auto exact = count_by_size(hypercube(a.d), opt);
    auto profile = cached_small_set_profile(a.d, SmallPredicate::Small, g.workers);
    bool ok = true;
    Json rows = Json::array();
    for (std::uint64_t t = 0; t < exact.counts.size(); ++t) {
      mpz_class upper = cube_small_upper(profile, t);
      std::optional<mpz_class> lower;
      if (t > 0)
        lower = cube_sparse_lower(a.d, t, (t - 1) / 2);
      ok = ok && upper >= exact.counts[t] && (!lower || *lower <= exact.counts[t]);
      rows.push_back(Json{{"t", t},
                          {"lower", lower ? Json(lower->get_str()) : Json(nullptr)},
                          {"exact", exact.counts[t].get_str()},
                          {"upper", upper.get_str()}});
    }
    if (g.format == "json") {
      print_json(Json{{"d", a.d}, {"rows", rows}, {"ok", ok}});
    } else {
      std::cout << (g.format == "csv" ? "t,lower,exact,upper\n" : "t  lower  exact  upper\n");
      const char *sep = g.format == "csv" ? "," : "  ";
      for (const auto &r : rows)
        std::cout << r["t"].get<std::uint64_t>() << sep
                  << (r["lower"].is_null() ? "" : r["lower"].get<std::string>()) << sep
                  << r["exact"].get<std::string>() << sep << r["upper"].get<std::string>() << '\n';
    }
    return ok ? kOk : kMathFailure;
  }
  VertexSet A = VertexSet::of(a.d, parse_vertex_list(a.set, a.d));
  auto stats = structure_stats(A);
  if (g.format == "json") {
    print_json(to_json(stats));
  } else if (g.format == "csv") {
    std::cout << "d,side,size,nbhd,closure,small,comps,max_comp\n"
              << stats.d << ',' << to_string(stats.side) << ',' << stats.size << ',' << stats.nbhd
              << ',' << stats.closure << ',' << stats.small << ',' << stats.comps << ','
              << stats.maxComp << '\n';
  } else {
    std::cout << "side: " << to_string(stats.side) << "\nsize: " << stats.size
              << "\nnbhd: " << stats.nbhd << "\nclosure: " << stats.closure
              << "\nsmall: " << (stats.small ? "yes" : "no") << "\ncomps: " << stats.comps
              << "\nmax_comp: " << stats.maxComp << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------- transition

int run_transition(const Globals &g, int d) {
  if (d < 1 || d > 62)
    throw InvalidArgument("transition needs 1 <= d <= 62");
  const std::uint64_t half = std::uint64_t{1} << (d - 1);
  std::optional<IndSetSequence> exact;
  if (d <= 5) {
    CountOptions opt;
    opt.workers = g.workers;
    exact = count_by_size(hypercube(d), opt);
  }
  const std::string source = exact ? "exact" : "central-estimate";
  Json rows = Json::array();
  std::vector<std::tuple<std::uint64_t, mpq_class, Interval, Interval>> data;
  // Every t up to 4096 rows; beyond that an even subsample including both ends.
  const std::uint64_t stride = half <= 4096 ? 1 : half / 4096;
  for (std::uint64_t t = 0;; t = std::min(half, t + stride)) {
    Interval ratio = exact ? transition_ratio_log2(d, t, exact->counts[t])
                           : window_exponent(d, mpz_class(std::to_string(t))) / Interval::ln2();
    mpq_class coord = transition_coordinate(d, t);
    Interval limit = exp(Interval(mpq_class(-2 * coord))) / (Interval(2L) * Interval::ln2());
    data.emplace_back(t, coord, ratio, limit);
    if (t == half)
      break;
  }
  if (g.format == "json") {
    for (const auto &[t, coord, ratio, limit] : data)
      rows.push_back(Json{{"t", t}, {"g", coord.get_str()}, {"ratio_log2", ratio.mid()},
                          {"limit_log2", limit.mid()}});
    print_json(Json{{"d", d}, {"source", source}, {"rows", rows}});
  } else {
    std::cout << (g.format == "csv" ? "t,g,ratio_log2,limit_log2\n"
                                    : "# source: " + source + "\nt  g  ratio_log2  limit_log2\n");
    const char *sep = g.format == "csv" ? "," : "  ";
    for (const auto &[t, coord, ratio, limit] : data)
      std::cout << t << sep << csv_double(coord.get_d()) << sep << csv_double(ratio.mid()) << sep
                << csv_double(limit.mid()) << '\n';
  }
  return kOk;
}

// -------------------------------------------------------------- percolate

struct PercolateArgs {
  std::string base = "knn:16,16";
  std::string p = "1/2";
  std::uint64_t seed = 1;
  std::uint64_t trials = 100;
  std::string epsilon = "1/10";
  std::string sRule = "almost-regular";
};

int run_percolate(const Globals &g, const PercolateArgs &a) {
  PercolationConfig cfg;
  cfg.base = a.base;
  cfg.p = parse_rational(a.p);
  cfg.seed = a.seed;
  cfg.trials = a.trials;
  auto summary = run_experiment(cfg, parse_rational(a.epsilon), parse_step_rule(a.sRule), g.workers);
  if (g.format == "json")
    print_json(to_json(summary));
  else if (g.format == "csv")
    write_csv(std::cout, summary);
  else
    std::cout << "base: " << a.base << "\np: " << cfg.p << "\nseed: " << cfg.seed
              << "\ntrials: " << cfg.trials << "\nepsilon: " << summary.epsilon
              << "\ns rule: " << summary.stepRule << "\nd': " << summary.dPrime << " ("
              << summary.dPrimeRule << ")\nsuccesses: " << summary.successes
              << "\nvacuous: " << summary.vacuous << "\nsuccess rate: " << summary.success_rate()
              << '\n';
  return kOk;
}

// ----------------------------------------------------------- verify-paper

int run_verify(const Globals &g, const std::string &suite, int only) {
  if (suite != "small" && suite != "full")
    throw InvalidArgument("suite must be small or full");
  const auto &all = acceptance_criteria();
  if (only != 0 && (only < 1 || only > static_cast<int>(all.size())))
    throw InvalidArgument("criterion number out of range");
  bool ok = true;
  Json out = Json::array();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only)
      continue;
    auto r = all[i](g.workers);
    ok = ok && r.pass;
    if (g.format == "json")
      out.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail},
                         {"seconds", r.seconds}});
    else
      std::cout << format_result(r) << std::endl;
  }
  if (g.format == "json")
    print_json(out);
  return ok ? kOk : kMathFailure;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact and certified tools for independent-set sequences of bipartite graphs.\n"
               "Graph specs: qd:D, knn:A,B, star:K, cycle:N, path:N, empty:N, crown:N,\n"
               "circ:M,o1,o2,..., aems, file:PATH; join components with '+', repeat with 'Kx'."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}))
      ->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads for parallel scans")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--precision", g.precision, "Interval working precision in bits")
      ->check(CLI::Range(64u, 100000u))
      ->capture_default_str();
  app.add_option("--c-constant", g.cConstant,
                 "Constant c in the lower density range c log2(d)/d^(1/3) of the cube estimates")
      ->capture_default_str();

  CountArgs countArgs;
  auto *count = app.add_subcommand(
      "count", "Exact number of independent sets of each size, i_0(G), ..., i_alpha(G)");
  count->add_option("--graph", countArgs.graph, "Graph spec")->required();
  count->add_option("--backend", countArgs.backend, "auto, general (branching) or side (subset walk)")
      ->capture_default_str();

  BoundsArgs boundsArgs;
  auto *bounds = app.add_subcommand(
      "bounds", "Per-size lower bound C(|V|/2, t) and entropy upper bound for a regular bipartite "
                "graph, beside the exact counts; exit 1 if a count escapes its bounds");
  bounds->add_option("--graph", boundsArgs.graph, "Graph spec (regular, bipartite)")->required();
  bounds->add_flag("!--no-exact", boundsArgs.exact, "Skip the exact counts");

  CheckArgs checkArgs;
  auto *check = app.add_subcommand(
      "check", "Shape of the count sequence: unimodality, s-step monotonicity, property "
               "(beta, gamma, s), or the non-increasing final third of bipartite graphs");
  check->add_option("--graph", checkArgs.graph, "Graph spec")->required();
  check->add_option("--property", checkArgs.property, "unimodal, final-third, sstep or bgs")
      ->check(CLI::IsMember({"unimodal", "final-third", "sstep", "bgs"}))
      ->capture_default_str();
  check->add_option("--beta", checkArgs.beta, "beta for bgs")->capture_default_str();
  check->add_option("--gamma", checkArgs.gamma, "gamma for bgs")->capture_default_str();
  check->add_option("--s", checkArgs.s, "Step size for sstep and bgs")->capture_default_str();
  check->add_option("--lo", checkArgs.lo, "Interval start for sstep")->capture_default_str();
  check->add_option("--hi", checkArgs.hi, "Interval end for sstep (default alpha)");
  check->add_option("--direction", checkArgs.direction, "increasing or decreasing for sstep")
      ->capture_default_str();

  WindowArgs windowArgs;
  auto *window = app.add_subcommand(
      "cube-window", "Central estimate 2 C(2^(d-1), t) exp{t(1 - t/2^(d-1))^(d-1)} for the "
                     "hypercube with its lower and upper error factors and range tag; --cases "
                     "scans the closing inequalities of the unimodality argument");
  window->add_option("--d", windowArgs.d, "Cube dimension")->capture_default_str();
  window->add_option("--t", windowArgs.t, "Independent set size");
  window->add_option("--grid", windowArgs.grid, "Evenly spaced t values in [1, 2^(d-1) - 1]");
  window->add_flag("--cases", windowArgs.cases, "Exact scan of the three closing inequalities");
  window->add_option("--case-end", windowArgs.caseEnd, "Last d of the case scan")
      ->capture_default_str();

  StructureArgs structureArgs;
  auto *structure = app.add_subcommand(
      "cube-structure", "Neighbourhood, closure, smallness and 2-linked components of a vertex "
                        "set of Q_d; --bounds brackets i_t(Q_d) by sparse and small-set sums; "
                        "--identity checks the binomial shift identity");
  structure->add_option("--d", structureArgs.d, "Cube dimension")->capture_default_str();
  structure->add_option("--set", structureArgs.set,
                        "Comma-separated vertices as integers or d-bit strings");
  structure->add_flag("--bounds", structureArgs.bounds, "Enumeration bounds against exact counts (d <= 5)");
  structure->add_option("--identity", structureArgs.identity, "t,a,g for the binomial shift identity");

  int transitionD = 5;
  auto *transition = app.add_subcommand(
      "transition", "Ratio i_t(Q_d) / (2 C(2^(d-1), t)) against its predicted limit "
                    "exp{e^(-2g)/2} at g = d(t/2^(d-1) - 1/2); exact counts for d <= 5");
  transition->add_option("--d", transitionD, "Cube dimension")->capture_default_str();

  PercolateArgs percArgs;
  auto *percolateCmd = app.add_subcommand(
      "percolate", "Keep each edge of a base graph with probability p and record how often the "
                   "sample has property (eps, eps, s)");
  percolateCmd->add_option("--base", percArgs.base, "Base graph spec")->capture_default_str();
  percolateCmd->add_option("--p", percArgs.p, "Edge retention probability")->capture_default_str();
  percolateCmd->add_option("--seed", percArgs.seed, "Seed")->capture_default_str();
  percolateCmd->add_option("--trials", percArgs.trials, "Number of samples")->capture_default_str();
  percolateCmd->add_option("--epsilon", percArgs.epsilon, "epsilon")->capture_default_str();
  percolateCmd->add_option("--s-rule", percArgs.sRule, "almost-regular, regular or fixed:K")
      ->capture_default_str();

  std::string suite = "small";
  int only = 0;
  auto *verifyCmd = app.add_subcommand(
      "verify-paper", "Run the acceptance checks, one PASS/FAIL line each; exit 1 if any fails");
  verifyCmd->add_option("--suite", suite, "small or full (both run every check)")->capture_default_str();
  verifyCmd->add_option("--only", only, "Run a single check by number");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    set_working_precision(g.precision);
    if (*count)
      return run_count(g, countArgs);
    if (*bounds)
      return run_bounds(g, boundsArgs);
    if (*check)
      return run_check(g, checkArgs);
    if (*window)
      return run_cube_window(g, windowArgs);
    if (*structure)
      return run_cube_structure(g, structureArgs);
    if (*transition)
      return run_transition(g, transitionD);
    if (*percolateCmd)
      return run_percolate(g, percArgs);
    if (*verifyCmd)
      return run_verify(g, suite, only);
  } catch (const stableseq::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
