#include "spreadlab/degree_flow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>

namespace spreadlab {

namespace {

/// Dinic max flow on a small layered network; scratch state lives per instance.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {}

  int add_arc(int from, int to, int cap) {
    const int id = static_cast<int>(to_.size());
    push(from, to, cap);
    push(to, from, 0);
    return id;
  }

  int residual(int arc) const { return cap_[static_cast<std::size_t>(arc)]; }

  long max_flow(int s, int t) {
    long total = 0;
    while (build_levels(s, t)) {
      iter_ = head_;
      while (int pushed = augment(s, t, std::numeric_limits<int>::max())) total += pushed;
    }
    return total;
  }

 private:
  void push(int from, int to, int cap) {
    to_.push_back(to);
    cap_.push_back(cap);
    next_.push_back(head_[static_cast<std::size_t>(from)]);
    head_[static_cast<std::size_t>(from)] = static_cast<int>(to_.size()) - 1;
  }

  bool build_levels(int s, int t) {
    level_.assign(head_.size(), -1);
    std::vector<int> queue{s};
    level_[static_cast<std::size_t>(s)] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
        const int v = to_[static_cast<std::size_t>(e)];
        if (cap_[static_cast<std::size_t>(e)] > 0 && level_[static_cast<std::size_t>(v)] < 0) {
          level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
          queue.push_back(v);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  int augment(int u, int t, int limit) {
    if (u == t) return limit;
    for (int& e = iter_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
      const auto ue = static_cast<std::size_t>(e);
      const int v = to_[ue];
      if (cap_[ue] <= 0 || level_[static_cast<std::size_t>(v)] != level_[static_cast<std::size_t>(u)] + 1) continue;
      if (int got = augment(v, t, std::min(limit, cap_[ue]))) {
        cap_[ue] -= got;
        cap_[ue ^ 1U] += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> to_;
  std::vector<int> cap_;
  std::vector<int> next_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

void validate(int n, const DegreePrescription& p) {
  if (p.f.size() != static_cast<std::size_t>(n) || p.g.size() != static_cast<std::size_t>(n)) {
    throw InvalidInput("prescription: f and g must have one entry per vertex");
  }
  const auto negative = [](int x) { return x < 0; };
  if (std::any_of(p.f.begin(), p.f.end(), negative) || std::any_of(p.g.begin(), p.g.end(), negative)) {
    throw InvalidInput("prescription: negative target degree");
  }
  if (std::accumulate(p.f.begin(), p.f.end(), 0L) != std::accumulate(p.g.begin(), p.g.end(), 0L)) {
    throw InvalidInput("prescription: sum of f differs from sum of g");
  }
}

/// Worst B' for a fixed A': the minimum over B' of |E(A',B')| + sum_{b not in B'} g(b).
std::optional<HallViolation> worst_pair(const EdgeSubset& host, const DegreePrescription& p, const VertexSet& a_set) {
  const int n = host.n();
  std::vector<long> into_b(static_cast<std::size_t>(n), 0);
  for (EdgeId id : host.members()) {
    const Edge& e = host.parent().edge(id);
    if (a_set.contains(e.a)) ++into_b[static_cast<std::size_t>(e.b)];
  }
  VertexSet b_set(n);
  long supply = 0;
  long edges = 0;
  for (int b = 0; b < n; ++b) {
    const auto ub = static_cast<std::size_t>(b);
    if (into_b[ub] < p.g[ub]) {
      b_set.insert(b);
      supply += into_b[ub];
      edges += into_b[ub];
    } else {
      supply += p.g[ub];
    }
  }
  long demand_a = 0;
  for (int a = 0; a < n; ++a) demand_a += a_set.contains(a) ? p.f[static_cast<std::size_t>(a)] : 0;
  if (supply >= demand_a) return std::nullopt;
  return HallViolation{a_set, b_set, edges, hall_deficiency(p, a_set, b_set)};
}

}  // namespace

std::optional<EdgeSubset> degree_prescribed_subgraph(const EdgeSubset& host, const DegreePrescription& p) {
  const int n = host.n();
  validate(n, p);
  const int source = 2 * n;
  const int sink = 2 * n + 1;
  FlowNetwork net(2 * n + 2);
  // Edge arcs first so that the DFS order from each A-vertex follows edge ids.
  std::vector<int> arc_of(host.size());
  for (std::size_t k = host.size(); k-- > 0;) {
    const Edge& e = host.parent().edge(host.members()[k]);
    arc_of[k] = net.add_arc(e.a, n + e.b, 1);
  }
  long required = 0;
  for (int a = 0; a < n; ++a) {
    net.add_arc(source, a, p.f[static_cast<std::size_t>(a)]);
    required += p.f[static_cast<std::size_t>(a)];
  }
  for (int b = 0; b < n; ++b) net.add_arc(n + b, sink, p.g[static_cast<std::size_t>(b)]);
  if (net.max_flow(source, sink) != required) return std::nullopt;
  std::vector<EdgeId> chosen;
  for (std::size_t k = 0; k < host.size(); ++k) {
    if (net.residual(arc_of[k]) == 0) chosen.push_back(host.members()[k]);
  }
  return EdgeSubset(host.parent_ptr(), std::move(chosen));
}

std::optional<EdgeSubset> degree_prescribed_subgraph(const GraphPtr& g, const DegreePrescription& p) {
  return degree_prescribed_subgraph(EdgeSubset::all(g), p);
}

long hall_deficiency(const DegreePrescription& p, const VertexSet& a_set, const VertexSet& b_set) {
  long total = 0;
  for (std::size_t v = 0; v < p.f.size(); ++v) {
    if (a_set.contains(static_cast<int>(v))) total += p.f[v];
    if (!b_set.contains(static_cast<int>(v))) total -= p.g[v];
  }
  return total;
}

std::optional<HallViolation> check_hall_all(const EdgeSubset& host, const DegreePrescription& p) {
  const int n = host.n();
  validate(n, p);
  if (n > 20) throw InvalidInput("check_hall_all: exhaustive mode needs n <= 20");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet a_set(n);
    for (int a = 0; a < n; ++a) {
      if ((mask >> a) & 1U) a_set.insert(a);
    }
    if (auto v = worst_pair(host, p, a_set)) return v;
  }
  return std::nullopt;
}

std::optional<HallViolation> check_hall_sampled(const EdgeSubset& host, const DegreePrescription& p, long budget,
                                                Rng& rng) {
  const int n = host.n();
  validate(n, p);
  for (long probe = 0; probe < budget; ++probe) {
    VertexSet a_set(n);
    for (int a = 0; a < n; ++a) {
      if (bernoulli(rng, 0.5)) a_set.insert(a);
    }
    if (auto v = worst_pair(host, p, a_set)) return v;
  }
  return std::nullopt;
}

std::optional<EdgeSubset> complete_within(const EdgeSubset& k, const EdgeSubset& reservoir, int d) {
  if (!k.disjoint_from(reservoir)) throw InvalidInput("complete_within: K and reservoir overlap");
  const auto deg = k.degrees();
  for (const auto& side : deg) {
    if (!side.empty() && *std::max_element(side.begin(), side.end()) > d) {
      throw InvalidInput("complete_within: target degree below the maximum degree of K");
    }
  }
  DegreePrescription p{deg[0], deg[1]};
  for (auto& x : p.f) x = d - x;
  for (auto& x : p.g) x = d - x;
  // Both sides have n vertices and K contributes equally to each side, so the sums agree.
  auto extra = degree_prescribed_subgraph(reservoir, p);
  if (!extra) return std::nullopt;
  return k.unite(*extra);
}

void write_prescription(std::ostream& out, const DegreePrescription& p) {
  for (std::size_t v = 0; v < p.f.size(); ++v) out << 'a' << v << ' ' << p.f[v] << '\n';
  for (std::size_t v = 0; v < p.g.size(); ++v) out << 'b' << v << ' ' << p.g[v] << '\n';
}

}  // namespace spreadlab
