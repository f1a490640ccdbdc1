#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "spreadlab/decompose.hpp"
#include "spreadlab/graph.hpp"

namespace spreadlab {

/// A test set T, as sorted edge identifiers of the host graph.
using EdgeSet = std::vector<EdgeId>;

/// Draws one random edge set W (sorted identifiers) from a seed.
using EdgeSampler = std::function<EdgeSet(std::uint64_t seed)>;

struct SpreadRow {
  int test_id = 0;
  int size = 0;
  double empirical_prob = 0;
  double ratio = 0;      // empirical_prob / p^{|T|}
  double std_error = 0;  // binomial standard error of empirical_prob
  bool flagged = false;  // ratio > 2
};

struct SpreadReport {
  double p = 0;
  std::vector<SpreadRow> tests;
  double max_ratio = 0;
  long samples = 0;
};

/// Frequency of T ⊆ W over `trials` draws W = sampler(derive_seed(seed, {t})).
SpreadReport estimate_spread(const EdgeSampler& sampler, double p, const std::vector<EdgeSet>& tests, long trials,
                             std::uint64_t seed);

/// Probability that a uniform perfect matching of K_{n,n} contains T: (n-|T|)!/n!.
double exact_matching_spread(int n, std::span<const Edge> t);

/// Σ_{G in cover} p^{|G|}, summed in log space.
double p_small_weight(const std::vector<EdgeSet>& cover, double p);

/// Singletons at three seeded vertices, 50 pairs (half disjoint, half sharing
/// a vertex) and 20 triples of distinct edges of g.
std::vector<EdgeSet> default_spread_tests(const BipartiteGraph& g, std::uint64_t seed);

/// Uniform perfect matching of K_{n,n}; `g` must be complete_bipartite(n).
EdgeSampler matching_sampler(GraphPtr g);

/// Part `part` of recurse(g, rounds, sched, seed, opts).
EdgeSampler decomposition_sampler(GraphPtr g, int rounds, ParamSchedule sched, int part, RecurseOptions opts = {});

/// CSV with columns test_id,size,empirical_prob,ratio,stderr.
void write_spread_csv(std::ostream& out, const SpreadReport& r);

}  // namespace spreadlab
