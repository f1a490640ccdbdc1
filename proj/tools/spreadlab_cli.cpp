// Command-line front end: decompositions, verification, spread estimates,
// threshold sweeps, one-shot containment solves and LLL comparison checks.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spreadlab/decompose.hpp"
#include "spreadlab/designs.hpp"
#include "spreadlab/graph.hpp"
#include "spreadlab/prob.hpp"
#include "spreadlab/spread.hpp"
#include "spreadlab/threshold.hpp"

using namespace spreadlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnreliable = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::string profile = "desk";
  long trials = 0;  // 0: subcommand default
  std::string out;
  long long budget = kDefaultNodeBudget;
};

/// Writes to --out when given, else to stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InvalidInput("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

long trials_or(const Globals& g, long fallback) { return g.trials > 0 ? g.trials : fallback; }

GraphPtr load_host(const std::string& graph_path, int n) {
  if (!graph_path.empty()) {
    std::ifstream in(graph_path);
    if (!in) throw InvalidInput("cannot open graph file '" + graph_path + "'");
    return std::make_shared<const BipartiteGraph>(read_graph(in));
  }
  if (n < 1) throw InvalidInput("--n must be >= 1");
  return std::make_shared<const BipartiteGraph>(complete_bipartite(n));
}

CheckMode parse_mode(const std::string& s) {
  if (s == "auto") return CheckMode::Auto;
  if (s == "exhaustive") return CheckMode::Exhaustive;
  if (s == "sampled") return CheckMode::Sampled;
  if (s == "size-formula") return CheckMode::SizeFormula;
  throw InvalidInput("unknown check mode '" + s + "'");
}

struct ScheduleArgs {
  int S = 2;
  double epsilon = 0.25;
  std::optional<double> q;
  bool scheduled_boost = false;
  std::optional<double> D0;

  void add_to(CLI::App* app) {
    app->add_option("--S", S, "Branching factor")->check(CLI::PositiveNumber);
    app->add_option("--epsilon", epsilon, "Density parameter");
    app->add_option("--q", q, "Fixed boost probability q_r (desk profile)");
    app->add_flag("--scheduled-boost", scheduled_boost, "Desk profile: use q_r = D_r^{-1/8}");
    app->add_option("--D0", D0, "Root degree (defaults to the host degree)");
  }

  ParamSchedule build(const Globals& g, double host_degree, int round) const {
    ScheduleOptions o;
    o.q_override = q;
    o.scheduled_boost = scheduled_boost;
    return schedule(D0.value_or(host_degree), epsilon, S, round, parse_profile(g.profile), o);
  }
};

int host_degree(const GraphPtr& g) {
  const auto d = is_regular(EdgeSubset::all(g));
  if (!d) throw InvalidInput("host graph must be regular");
  return *d;
}

// ---------------------------------------------------------------------------

int run_decompose(const Globals& g, const std::string& graph, int n, int rounds, const ScheduleArgs& sa,
                  int retry_cap) {
  const GraphPtr host = load_host(graph, n);
  const ParamSchedule root = sa.build(g, host_degree(host), 0);
  RecurseOptions opts;
  opts.retry_cap = retry_cap;
  const Decomposition d = recurse(host, rounds, root, g.seed, opts);
  Output out(g.out);
  write_decomposition(out.stream(), d);
  return kExitOk;
}

int run_verify_nice(const Globals& g, const std::string& graph, int n, int round, const ScheduleArgs& sa,
                    const std::string& mode, long probes) {
  const GraphPtr host = load_host(graph, n);
  const auto d = is_regular(EdgeSubset::all(host));
  const ParamSchedule sched = sa.build(g, d.value_or(1), round);
  CheckOptions c{parse_mode(mode), 10, probes, g.seed};
  Output out(g.out);
  write_report(out.stream(), check_nice(EdgeSubset::all(host), sched, c));
  return kExitOk;
}

int run_verify_admissible(const Globals& g, const std::string& graph, int n, int round, const ScheduleArgs& sa,
                          const std::string& mode, long probes, long attempts) {
  const GraphPtr host = load_host(graph, n);
  const ParamSchedule sched = sa.build(g, host_degree(host), round);
  const EdgeSubset all = EdgeSubset::all(host);
  const EdgeLabeling lab = condition_labeling(all, sched, g.seed, attempts);
  CheckOptions c{parse_mode(mode), 10, probes, derive_seed(g.seed, {1})};
  Output out(g.out);
  out.stream() << "labeling_attempts " << lab.attempts << '\n';
  write_report(out.stream(), check_admissible(all, lab, sched, c));
  return kExitOk;
}

int run_spread(const Globals& g, const std::string& graph, int n, int rounds, const ScheduleArgs& sa, int part,
               std::optional<double> p, const std::string& sampler) {
  const GraphPtr host = load_host(graph, n);
  EdgeSampler draw;
  double ref = 0;
  if (sampler == "matching") {
    draw = matching_sampler(host);
    ref = 1.0 / host->n();
  } else if (sampler == "decomposition") {
    const int deg = host_degree(host);
    const ParamSchedule root = sa.build(g, deg, 0);
    draw = decomposition_sampler(host, rounds, root, part);
    ref = root.at_round(rounds).D_r / host->n();
  } else {
    throw InvalidInput("unknown sampler '" + sampler + "'");
  }
  const auto tests = default_spread_tests(*host, derive_seed(g.seed, {0x7e57}));
  const SpreadReport r = estimate_spread(draw, p.value_or(ref), tests, trials_or(g, 1000), g.seed);
  Output out(g.out);
  write_spread_csv(out.stream(), r);
  return kExitOk;
}

struct ThresholdArgs {
  std::string property = "latin";
  int n = 4;
  std::vector<double> ps;
  std::vector<int> ks;
  bool bisect = false;
  double lo = 0.0;
  double hi = 1.0;
  double tol = 0.01;
  int palette = 0;
};

int run_threshold(const Globals& g, const ThresholdArgs& a) {
  ThresholdExperiment exp;
  exp.property = parse_property(a.property);
  exp.n = a.n;
  exp.trials = trials_or(g, 100);
  exp.seed = g.seed;
  exp.node_budget = g.budget;
  exp.palette = a.palette;
  if (exp.structurally_absent()) {
    std::cerr << "note: no Steiner triple system exists on " << exp.n << " points (n != 1, 3 mod 6)\n";
  }

  std::vector<SuccessEstimate> rows;
  std::optional<BisectionResult> bisection;
  if (a.bisect) {
    bisection = bisect_threshold(exp, a.lo, a.hi, a.tol);
    rows = bisection->probes;
  } else if (!a.ks.empty()) {
    for (int k : a.ks) rows.push_back(success_prob_k(exp, k));
  } else {
    if (a.ps.empty()) throw InvalidInput("threshold: give --p, --k or --bisect");
    for (double p : a.ps) rows.push_back(success_prob(exp, p));
  }

  Output out(g.out);
  write_csv_header(out.stream());
  bool unreliable = false;
  for (const auto& r : rows) {
    write_csv_row(out.stream(), exp, r);
    unreliable = unreliable || r.unreliable;
  }
  if (bisection) std::cerr << "p_half " << bisection->p_half << '\n';
  if (unreliable) {
    std::cerr << "warning: more than 10% of trials exhausted the node budget\n";
    return kExitUnreliable;
  }
  return kExitOk;
}

struct SolveArgs {
  std::string property = "latin";
  std::string input;
  int n = 4;
  double p = 1.0;
  int k = 0;
  int palette = 0;
};

int run_solve(const Globals& g, const SolveArgs& a) {
  const ThresholdProperty prop = parse_property(a.property);
  std::ifstream in;
  if (!a.input.empty()) {
    in.open(a.input);
    if (!in) throw InvalidInput("cannot open input file '" + a.input + "'");
  }
  Output out(g.out);
  const auto status_line = [&](SolveStatus s, long long nodes) {
    std::cerr << (s == SolveStatus::Found ? "found" : s == SolveStatus::Absent ? "absent" : "unknown") << " nodes "
              << nodes << '\n';
    return s == SolveStatus::Unknown ? kExitUnreliable : kExitOk;
  };
  switch (prop) {
    case ThresholdProperty::Latin:
    case ThresholdProperty::Sts: {
      const bool latin = prop == ThresholdProperty::Latin;
      const TripleSystem t = !a.input.empty() ? read_triples(in)
                             : latin          ? sample_tripartite(a.n, a.p, g.seed)
                                              : sample_3graph(a.n, a.p, g.seed);
      const auto r = latin ? latin_square_exists(t, g.budget) : sts_exists(t, g.budget);
      if (r.witness) write_witness(out.stream(), *r.witness);
      return status_line(r.status, r.nodes);
    }
    case ThresholdProperty::ListBipartite:
    case ThresholdProperty::ListComplete: {
      const bool bip = prop == ThresholdProperty::ListBipartite;
      ListAssignment l;
      if (!a.input.empty()) {
        l = read_lists(in);
      } else {
        const int palette = bip ? a.n : (a.palette > 0 ? a.palette : 2 * a.n - 1);
        l = sample_lists(bip ? HostKind::CompleteBipartite : HostKind::Complete, bip ? a.n : 2 * a.n,
                         a.k > 0 ? a.k : palette, palette, g.seed);
      }
      const auto r = bip ? list_coloring_bipartite(l, g.budget) : list_coloring_complete(l, g.budget);
      if (r.witness) write_witness(out.stream(), l, *r.witness);
      return status_line(r.status, r.nodes);
    }
    case ThresholdProperty::NonEmpty:
      break;
  }
  throw InvalidInput("solve: property must be latin, sts, list-bipartite or list-complete");
}

int run_lll_check(const Globals& g, int max_vars) {
  Output out(g.out);
  const long instances = trials_or(g, 200);
  long holds = 0;
  out.stream() << "instance,vars,events,max_degree,overlap,event_bound,conditional,product,bound,holds\n";
  for (long i = 0; i < instances; ++i) {
    const auto inst = random_lll_instance(derive_seed(g.seed, {static_cast<std::uint64_t>(i)}), max_vars);
    const LllReport r = verify_lll_comparison(inst.space, inst.system, inst.query);
    holds += r.holds ? 1 : 0;
    out.stream() << i << ',' << inst.space.size() << ',' << inst.system.size() << ',' << r.max_degree << ','
                 << r.overlap << ',' << r.event_bound << ',' << r.conditional_prob << ',' << r.product_prob << ','
                 << r.bound << ',' << (r.holds ? 1 : 0) << '\n';
  }
  std::cerr << "comparison bound held in " << holds << " of " << instances << " instances\n";
  return holds == instances ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spread decompositions of regular bipartite graphs and threshold experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Root seed");
  app.add_option("--profile", g.profile, "Constant profile")->check(CLI::IsMember({"paper", "desk"}));
  app.add_option("--trials", g.trials, "Trials (or instances) per estimate");
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--budget", g.budget, "Node budget per exact-cover search");

  std::string graph;
  int n = 64;
  int rounds = 1;
  int round = 0;
  int retry_cap = 200;
  std::string mode = "auto";
  long probes = 64;
  long attempts = 1'000'000;
  int part = 0;
  std::optional<double> spread_p;
  std::string sampler = "decomposition";
  ScheduleArgs sa;
  ThresholdArgs ta;
  SolveArgs so;
  int max_vars = 12;

  auto* decompose = app.add_subcommand("decompose", "Run the recursive decomposition and write the parts");
  decompose->add_option("--graph", graph, "Regular bipartite host (default: K_{n,n})");
  decompose->add_option("--n", n, "Size of the complete host");
  decompose->add_option("--rounds", rounds, "Number of rounds")->check(CLI::NonNegativeNumber);
  decompose->add_option("--retry-cap", retry_cap, "Labelings tried per part");
  sa.add_to(decompose);

  auto* nice = app.add_subcommand("verify-nice", "Check N1/N2 for a host graph");
  nice->add_option("--graph", graph, "Regular bipartite host (default: K_{n,n})");
  nice->add_option("--n", n, "Size of the complete host");
  nice->add_option("--round", round, "Round index r");
  nice->add_option("--mode", mode, "auto, exhaustive, sampled or size-formula");
  nice->add_option("--probes", probes, "Probe budget in sampled mode");
  sa.add_to(nice);

  auto* adm = app.add_subcommand("verify-admissible", "Draw a conditioned labeling and check R1-E4");
  adm->add_option("--graph", graph, "Regular bipartite host (default: K_{n,n})");
  adm->add_option("--n", n, "Size of the complete host");
  adm->add_option("--round", round, "Round index r");
  adm->add_option("--mode", mode, "auto, exhaustive or sampled");
  adm->add_option("--probes", probes, "Probe budget in sampled mode");
  adm->add_option("--attempts", attempts, "Rejection budget for the labeling");
  sa.add_to(adm);

  auto* spread = app.add_subcommand("spread", "Estimate containment probabilities of test edge sets");
  spread->add_option("--graph", graph, "Regular bipartite host (default: K_{n,n})");
  spread->add_option("--n", n, "Size of the complete host");
  spread->add_option("--rounds", rounds, "Rounds of the decomposition sampler");
  spread->add_option("--part", part, "Part index sampled from the decomposition");
  spread->add_option("--p", spread_p, "Reference density (default D_r / n)");
  spread->add_option("--sampler", sampler, "decomposition or matching");
  sa.add_to(spread);

  auto* threshold = app.add_subcommand("threshold", "Success fractions and threshold bisection");
  threshold->add_option("--property", ta.property, "latin, sts, list-bipartite, list-complete or nonempty");
  threshold->add_option("--n", ta.n, "Instance size");
  threshold->add_option("--p", ta.ps, "Densities to evaluate")->delimiter(',');
  threshold->add_option("--k", ta.ks, "List sizes to evaluate (list properties)")->delimiter(',');
  threshold->add_option("--palette", ta.palette, "Palette for list-complete (default 2n-1)");
  threshold->add_flag("--bisect", ta.bisect, "Bisect for the density with success fraction 1/2");
  threshold->add_option("--lo", ta.lo, "Lower end of the bisection range");
  threshold->add_option("--hi", ta.hi, "Upper end of the bisection range");
  threshold->add_option("--tol", ta.tol, "Bisection tolerance");

  auto* solve = app.add_subcommand("solve", "Search one instance for a design or list coloring");
  solve->add_option("--property", so.property, "latin, sts, list-bipartite or list-complete");
  solve->add_option("--input", so.input, "Triple or list file (default: sample one)");
  solve->add_option("--n", so.n, "Size of the sampled instance");
  solve->add_option("--p", so.p, "Triple density of the sampled instance");
  solve->add_option("--k", so.k, "List size of the sampled instance (default: full palette)");
  solve->add_option("--palette", so.palette, "Palette for list-complete (default 2n-1)");

  auto* lll = app.add_subcommand("lll-check", "Exhaustively verify the LLL comparison bound on random instances");
  lll->add_option("--max-vars", max_vars, "Largest number of binary variables")->check(CLI::Range(2, 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*decompose) return run_decompose(g, graph, n, rounds, sa, retry_cap);
    if (*nice) return run_verify_nice(g, graph, n, round, sa, mode, probes);
    if (*adm) return run_verify_admissible(g, graph, n, round, sa, mode, probes, attempts);
    if (*spread) return run_spread(g, graph, n, rounds, sa, part, spread_p, sampler);
    if (*threshold) return run_threshold(g, ta);
    if (*solve) return run_solve(g, so);
    if (*lll) return run_lll_check(g, max_vars);
  } catch (const ParametersTooSmall& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
