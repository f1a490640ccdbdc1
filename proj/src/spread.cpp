#include "spreadlab/spread.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>

namespace spreadlab {

SpreadReport estimate_spread(const EdgeSampler& sampler, double p, const std::vector<EdgeSet>& tests, long trials,
                             std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("estimate_spread: trials must be >= 1");
  if (tests.empty()) throw InvalidInput("estimate_spread: no test sets");
  std::vector<EdgeSet> sorted = tests;
  for (auto& t : sorted) std::sort(t.begin(), t.end());

  std::vector<long> hits(sorted.size(), 0);
  for (long trial = 0; trial < trials; ++trial) {
    const EdgeSet w = sampler(derive_seed(seed, {static_cast<std::uint64_t>(trial)}));
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (std::includes(w.begin(), w.end(), sorted[k].begin(), sorted[k].end())) ++hits[k];
    }
  }

  SpreadReport r;
  r.p = p;
  r.samples = trials;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    SpreadRow row;
    row.test_id = static_cast<int>(k);
    row.size = static_cast<int>(sorted[k].size());
    row.empirical_prob = static_cast<double>(hits[k]) / static_cast<double>(trials);
    row.std_error = std::sqrt(row.empirical_prob * (1.0 - row.empirical_prob) / static_cast<double>(trials));
    const double base = std::pow(p, row.size);
    row.ratio = base > 0 ? row.empirical_prob / base : (row.empirical_prob > 0 ? INFINITY : 0.0);
    row.flagged = row.ratio > 2.0;
    r.max_ratio = std::max(r.max_ratio, row.ratio);
    r.tests.push_back(row);
  }
  return r;
}

double exact_matching_spread(int n, std::span<const Edge> t) {
  std::set<int> as;
  std::set<int> bs;
  for (const Edge& e : t) {
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) throw InvalidInput("exact_matching_spread: edge out of range");
    if (!as.insert(e.a).second || !bs.insert(e.b).second) {
      throw InvalidInput("exact_matching_spread: T is not a matching");
    }
  }
  // (n - k)! / n! = 1 / (n (n-1) ... (n-k+1))
  double p = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) p /= static_cast<double>(n - static_cast<int>(i));
  return p;
}

double p_small_weight(const std::vector<EdgeSet>& cover, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p_small_weight: p must lie in [0, 1]");
  if (p == 0.0) {
    return static_cast<double>(std::count_if(cover.begin(), cover.end(), [](const EdgeSet& s) { return s.empty(); }));
  }
  if (cover.empty()) return 0.0;
  const double lp = std::log(p);
  double top = -INFINITY;
  for (const auto& s : cover) top = std::max(top, lp * static_cast<double>(s.size()));
  double sum = 0.0;
  for (const auto& s : cover) sum += std::exp(lp * static_cast<double>(s.size()) - top);
  return std::exp(top + std::log(sum));
}

std::vector<EdgeSet> default_spread_tests(const BipartiteGraph& g, std::uint64_t seed) {
  const auto m = g.num_edges();
  if (m < 3) throw InvalidInput("default_spread_tests: need at least 3 edges");
  Rng rng(seed);
  std::vector<EdgeSet> out;

  const auto pick_vertex = [&] {
    const auto k = uniform_below(rng, static_cast<std::uint64_t>(2 * g.n()));
    return Vertex{k < static_cast<std::uint64_t>(g.n()) ? Side::A : Side::B, static_cast<int>(k % g.n())};
  };
  for (int k = 0; k < 3; ++k) {
    for (EdgeId id : g.incident(pick_vertex())) out.push_back({id});
  }

  const auto random_edge = [&] { return static_cast<EdgeId>(uniform_below(rng, m)); };
  const auto shares = [&](EdgeId x, EdgeId y) {
    return g.edge(x).a == g.edge(y).a || g.edge(x).b == g.edge(y).b;
  };
  for (int k = 0; k < 50; ++k) {
    const bool want_shared = k % 2 == 1;
    // Rejection; gives up on the shape constraint for pathological hosts.
    EdgeId x = random_edge();
    EdgeId y = random_edge();
    for (int tries = 0; tries < 1000 && (x == y || shares(x, y) != want_shared); ++tries) {
      x = random_edge();
      y = random_edge();
    }
    if (x == y) continue;
    out.push_back({std::min(x, y), std::max(x, y)});
  }
  for (int k = 0; k < 20; ++k) {
    std::set<EdgeId> t;
    while (t.size() < 3) t.insert(random_edge());
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

EdgeSampler matching_sampler(GraphPtr g) {
  if (g->num_edges() != static_cast<std::size_t>(g->n()) * static_cast<std::size_t>(g->n())) {
    throw InvalidInput("matching_sampler: host must be complete bipartite");
  }
  return [g](std::uint64_t seed) {
    Rng rng(seed);
    const int n = g->n();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    shuffle(perm.begin(), perm.end(), rng);
    EdgeSet w;
    for (int a = 0; a < n; ++a) w.push_back(static_cast<EdgeId>(a * n + perm[static_cast<std::size_t>(a)]));
    return w;
  };
}

EdgeSampler decomposition_sampler(GraphPtr g, int rounds, ParamSchedule sched, int part, RecurseOptions opts) {
  return [g = std::move(g), rounds, sched = std::move(sched), part, opts](std::uint64_t seed) {
    const Decomposition d = recurse(g, rounds, sched, seed, opts);
    if (part < 0 || static_cast<std::size_t>(part) >= d.parts.size()) {
      throw InvalidInput("decomposition_sampler: part index out of range");
    }
    const auto members = d.parts[static_cast<std::size_t>(part)].members();
    return EdgeSet(members.begin(), members.end());
  };
}

void write_spread_csv(std::ostream& out, const SpreadReport& r) {
  out << "test_id,size,empirical_prob,ratio,stderr\n";
  for (const auto& row : r.tests) {
    out << row.test_id << ',' << row.size << ',' << row.empirical_prob << ',' << row.ratio << ',' << row.std_error
        << '\n';
  }
}

}  // namespace spreadlab
