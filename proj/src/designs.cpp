#include "spreadlab/designs.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "spreadlab/random.hpp"

namespace spreadlab {
namespace {

int pair_index(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  // Position of {u, v} among pairs in lexicographic order.
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

template <typename W>
Containment<W> from_result(const ExactCoverResult& r) {
  Containment<W> out;
  out.status = r.status;
  out.nodes = r.nodes;
  return out;
}

ExactCoverInstance latin_like(int n, const std::vector<Triple>& triples) {
  ExactCoverInstance inst;
  inst.primary = 3 * n * n;
  const int nn = n * n;
  for (const Triple& t : triples) {
    inst.rows.push_back({t[0] * n + t[1], nn + t[0] * n + t[2], 2 * nn + t[1] * n + t[2]});
  }
  return inst;
}

}  // namespace

ExactCoverInstance latin_instance(const TripleSystem& t) {
  if (t.mode() != TripleMode::Tripartite) throw InvalidInput("latin_square_exists: system must be tripartite");
  return latin_like(t.n(), {t.triples().begin(), t.triples().end()});
}

ExactCoverInstance sts_instance(const TripleSystem& h) {
  if (h.mode() != TripleMode::Plain) throw InvalidInput("sts_exists: system must be plain");
  const int n = h.n();
  ExactCoverInstance inst;
  inst.primary = n * (n - 1) / 2;
  for (const Triple& t : h.triples()) {
    inst.rows.push_back({pair_index(n, t[0], t[1]), pair_index(n, t[0], t[2]), pair_index(n, t[1], t[2])});
  }
  return inst;
}

Containment<TripleWitness> latin_square_exists(const TripleSystem& t, long long node_budget) {
  const auto r = solve_exact_cover(latin_instance(t), node_budget);
  auto out = from_result<TripleWitness>(r);
  if (r.status == SolveStatus::Found) {
    TripleWitness w;
    for (int row : r.rows) w.push_back(t.triples()[static_cast<std::size_t>(row)]);
    out.witness = std::move(w);
  }
  return out;
}

Containment<TripleWitness> sts_exists(const TripleSystem& h, long long node_budget) {
  const auto r = solve_exact_cover(sts_instance(h), node_budget);
  auto out = from_result<TripleWitness>(r);
  if (r.status == SolveStatus::Found) {
    TripleWitness w;
    for (int row : r.rows) w.push_back(h.triples()[static_cast<std::size_t>(row)]);
    out.witness = std::move(w);
  }
  return out;
}

Containment<ColoringWitness> list_coloring_bipartite(const ListAssignment& l, long long node_budget) {
  l.validate();
  if (l.host != HostKind::CompleteBipartite) throw InvalidInput("list_coloring_bipartite: host must be K_{n,n}");
  if (l.palette != l.host_n) throw InvalidInput("list_coloring_bipartite: palette must be [n]");
  const int n = l.host_n;
  const auto edges = l.host_edges();
  std::vector<Triple> triples;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (int c : l.lists[e]) triples.push_back({edges[e].a, edges[e].b, c});
  }
  const auto r = solve_exact_cover(latin_like(n, triples), node_budget);
  auto out = from_result<ColoringWitness>(r);
  if (r.status == SolveStatus::Found) {
    ColoringWitness w(edges.size(), -1);
    for (int row : r.rows) {
      const Triple& t = triples[static_cast<std::size_t>(row)];
      w[static_cast<std::size_t>(t[0] * n + t[1])] = t[2];
    }
    out.witness = std::move(w);
  }
  return out;
}

Containment<ColoringWitness> list_coloring_complete(const ListAssignment& l, long long node_budget) {
  l.validate();
  if (l.host != HostKind::Complete) throw InvalidInput("list_coloring_complete: host must be complete");
  const int m = l.host_n;
  const auto edges = l.host_edges();
  ExactCoverInstance inst;
  inst.primary = static_cast<int>(edges.size());
  inst.secondary = m * l.palette;
  std::vector<std::pair<int, int>> choice;  // (edge, color) per row
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (int c : l.lists[e]) {
      inst.rows.push_back({static_cast<int>(e), inst.primary + edges[e].a * l.palette + c,
                           inst.primary + edges[e].b * l.palette + c});
      choice.emplace_back(static_cast<int>(e), c);
    }
  }
  const auto r = solve_exact_cover(inst, node_budget);
  auto out = from_result<ColoringWitness>(r);
  if (r.status == SolveStatus::Found) {
    ColoringWitness w(edges.size(), -1);
    for (int row : r.rows) {
      const auto [e, c] = choice[static_cast<std::size_t>(row)];
      w[static_cast<std::size_t>(e)] = c;
    }
    out.witness = std::move(w);
  }
  return out;
}

// ---------------------------------------------------------------------------

TripleSystem sample_tripartite(int n, double p, std::uint64_t seed) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw InvalidInput("sample_tripartite: need n >= 0, p in [0, 1]");
  Rng rng(seed);
  std::vector<Triple> out;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (bernoulli(rng, p)) out.push_back({x, y, z});
      }
    }
  }
  return TripleSystem(TripleMode::Tripartite, n, std::move(out));
}

TripleSystem sample_3graph(int n, double p, std::uint64_t seed) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw InvalidInput("sample_3graph: need n >= 0, p in [0, 1]");
  Rng rng(seed);
  std::vector<Triple> out;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      for (int z = y + 1; z < n; ++z) {
        if (bernoulli(rng, p)) out.push_back({x, y, z});
      }
    }
  }
  return TripleSystem(TripleMode::Plain, n, std::move(out));
}

ListAssignment sample_lists(HostKind host, int host_n, int k, int palette, std::uint64_t seed) {
  if (k < 0 || k > palette) throw InvalidInput("sample_lists: need 0 <= k <= palette");
  ListAssignment l;
  l.host = host;
  l.host_n = host_n;
  l.k = k;
  l.palette = palette;
  Rng rng(seed);
  std::vector<int> colors(static_cast<std::size_t>(palette));
  const auto edges = host_edges(host, host_n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    std::iota(colors.begin(), colors.end(), 0);
    for (int i = 0; i < k; ++i) {
      const auto j = static_cast<std::size_t>(i) + uniform_below(rng, static_cast<std::uint64_t>(palette - i));
      std::swap(colors[static_cast<std::size_t>(i)], colors[j]);
    }
    std::vector<int> list(colors.begin(), colors.begin() + k);
    std::sort(list.begin(), list.end());
    l.lists.push_back(std::move(list));
  }
  return l;
}

// ---------------------------------------------------------------------------

bool verify_latin(const TripleSystem& t, const TripleWitness& w) {
  if (t.mode() != TripleMode::Tripartite) return false;
  const int n = t.n();
  if (w.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) return false;
  std::vector<char> rc(static_cast<std::size_t>(n * n), 0);
  std::vector<char> rs(rc.size(), 0);
  std::vector<char> cs(rc.size(), 0);
  for (const Triple& x : w) {
    if (!t.contains(x)) return false;
    char& a = rc[static_cast<std::size_t>(x[0] * n + x[1])];
    char& b = rs[static_cast<std::size_t>(x[0] * n + x[2])];
    char& c = cs[static_cast<std::size_t>(x[1] * n + x[2])];
    if (a || b || c) return false;
    a = b = c = 1;
  }
  return true;
}

bool verify_sts(const TripleSystem& h, const TripleWitness& w) {
  if (h.mode() != TripleMode::Plain) return false;
  const int n = h.n();
  std::vector<int> covered(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (Triple x : w) {
    std::sort(x.begin(), x.end());
    if (!h.contains(x)) return false;
    for (auto [u, v] : {std::pair{x[0], x[1]}, std::pair{x[0], x[2]}, std::pair{x[1], x[2]}}) {
      if (++covered[static_cast<std::size_t>(u * n + v)] > 1) return false;
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (covered[static_cast<std::size_t>(u * n + v)] != 1) return false;
    }
  }
  return true;
}

bool verify_coloring(const ListAssignment& l, const ColoringWitness& w) {
  const auto edges = l.host_edges();
  if (w.size() != edges.size() || l.lists.size() != edges.size()) return false;
  // Bipartite hosts index B-vertices after the A-vertices.
  const int offset = l.host == HostKind::CompleteBipartite ? l.host_n : 0;
  const int vertices = l.host_n + offset;
  std::vector<char> used(static_cast<std::size_t>(vertices) * static_cast<std::size_t>(std::max(l.palette, 1)), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const int c = w[e];
    if (c < 0 || c >= l.palette) return false;
    if (!std::binary_search(l.lists[e].begin(), l.lists[e].end(), c)) return false;
    for (int v : {edges[e].a, edges[e].b + offset}) {
      char& slot = used[static_cast<std::size_t>(v) * static_cast<std::size_t>(l.palette) + static_cast<std::size_t>(c)];
      if (slot) return false;
      slot = 1;
    }
  }
  return true;
}

void write_witness(std::ostream& out, const TripleWitness& w) {
  for (const Triple& t : w) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_witness(std::ostream& out, const ListAssignment& l, const ColoringWitness& w) {
  const auto edges = l.host_edges();
  for (std::size_t e = 0; e < edges.size() && e < w.size(); ++e) {
    out << edges[e].a << ' ' << edges[e].b << ' ' << w[e] << '\n';
  }
}

}  // namespace spreadlab
