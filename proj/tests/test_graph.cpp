#include <gtest/gtest.h>

#include <sstream>

#include "spreadlab/graph.hpp"
#include "spreadlab/random.hpp"

using namespace spreadlab;

namespace {

GraphPtr share(BipartiteGraph g) { return std::make_shared<const BipartiteGraph>(std::move(g)); }

BipartiteGraph random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (bernoulli(rng, p)) edges.push_back({a, b});
  return BipartiteGraph(n, edges);
}

VertexSet random_set(int n, Rng& rng) {
  VertexSet s(n);
  for (int v = 0; v < n; ++v)
    if (bernoulli(rng, 0.5)) s.insert(v);
  return s;
}

}  // namespace

TEST(BipartiteGraph, EdgesAreSortedAndIdentifiedByPosition) {
  BipartiteGraph g(3, {{2, 0}, {0, 1}, {1, 1}, {0, 0}});
  ASSERT_EQ(g.num_edges(), 4u);
  EXPECT_EQ(g.edge(0), (Edge{0, 0}));
  EXPECT_EQ(g.edge(1), (Edge{0, 1}));
  EXPECT_EQ(g.edge(3), (Edge{2, 0}));
  EXPECT_EQ(g.find(1, 1), 2);
  EXPECT_FALSE(g.find(2, 2).has_value());
  EXPECT_FALSE(g.find(-1, 0).has_value());
}

TEST(BipartiteGraph, RejectsDuplicatesAndOutOfRange) {
  EXPECT_THROW(BipartiteGraph(2, {{0, 0}, {0, 0}}), InvalidInput);
  EXPECT_THROW(BipartiteGraph(2, {{0, 2}}), InvalidInput);
  EXPECT_THROW(BipartiteGraph(2, {{-1, 0}}), InvalidInput);
}

TEST(BipartiteGraph, IncidenceListsMatchEdges) {
  const auto g = random_graph(7, 0.4, 3);
  for (int v = 0; v < g.n(); ++v) {
    for (Side s : {Side::A, Side::B}) {
      int count = 0;
      for (EdgeId id : g.incident({s, v})) {
        const Edge& e = g.edge(id);
        EXPECT_EQ(s == Side::A ? e.a : e.b, v);
        ++count;
      }
      int expected = 0;
      for (const Edge& e : g.edges()) expected += (s == Side::A ? e.a : e.b) == v;
      EXPECT_EQ(count, expected);
      EXPECT_EQ(degree(g, {s, v}), expected);
    }
  }
}

TEST(BipartiteGraph, CompleteBipartiteIsRegular) {
  for (int n = 1; n <= 6; ++n) {
    const auto g = complete_bipartite(n);
    EXPECT_EQ(g.num_edges(), static_cast<std::size_t>(n * n));
    EXPECT_EQ(is_regular(g), n);
  }
  EXPECT_THROW(complete_bipartite(0), InvalidInput);
}

TEST(BipartiteGraph, IrregularGraphHasNoCommonDegree) {
  EXPECT_FALSE(is_regular(BipartiteGraph(2, {{0, 0}, {0, 1}, {1, 1}})).has_value());
  EXPECT_EQ(is_regular(BipartiteGraph(2, {})), 0);
}

TEST(EdgeSubset, SetAlgebra) {
  const auto g = share(complete_bipartite(3));
  const EdgeSubset x(g, {0, 1, 2, 5});
  const EdgeSubset y(g, {2, 5, 7});
  EXPECT_EQ(x.unite(y), EdgeSubset(g, {0, 1, 2, 5, 7}));
  EXPECT_EQ(x.minus(y), EdgeSubset(g, {0, 1}));
  EXPECT_EQ(x.intersect(y), EdgeSubset(g, {2, 5}));
  EXPECT_TRUE(x.intersect(y).is_subset_of(x));
  EXPECT_TRUE(x.minus(y).disjoint_from(y));
  EXPECT_FALSE(x.disjoint_from(y));
  EXPECT_TRUE(x.contains(5));
  EXPECT_FALSE(x.contains(4));
}

TEST(EdgeSubset, NormalisesAndValidatesMembers) {
  const auto g = share(complete_bipartite(2));
  EXPECT_EQ(EdgeSubset(g, {3, 1, 3}).size(), 2u);
  EXPECT_THROW(EdgeSubset(g, {4}), InvalidInput);
  EXPECT_THROW(EdgeSubset(nullptr), InvalidInput);
}

TEST(EdgeSubset, DifferentParentsAreRejected) {
  const EdgeSubset x(share(complete_bipartite(2)), {0});
  const EdgeSubset y(share(complete_bipartite(3)), {0});
  EXPECT_THROW((void)x.unite(y), InvalidInput);
}

TEST(EdgeSubset, DegreesAndMaterialisation) {
  const auto g = share(complete_bipartite(3));
  const EdgeSubset h(g, {0, 4, 8});  // perfect matching a_i b_i
  EXPECT_EQ(is_regular(h), 1);
  const auto deg = h.degrees();
  EXPECT_EQ(deg[0], (std::vector<int>{1, 1, 1}));
  const auto standalone = h.to_graph();
  EXPECT_EQ(standalone.num_edges(), 3u);
  EXPECT_EQ(standalone.edge(1), (Edge{1, 1}));
  EXPECT_EQ(degree(h, {Side::B, 2}), 1);
}

TEST(VertexSet, BasicOperations) {
  VertexSet s(70);
  s.insert(0);
  s.insert(69);
  s.insert(64);
  EXPECT_EQ(s.count(), 3);
  EXPECT_TRUE(s.contains(64));
  s.erase(64);
  EXPECT_FALSE(s.contains(64));
  EXPECT_EQ(s.complement().count(), 68);
  EXPECT_EQ(s.to_vector(), (std::vector<int>{0, 69}));
  EXPECT_EQ(s.complement().complement(), s);
}

// Bit-row cut counting agrees with the edge list on random graphs and sets.
TEST(AdjacencyBits, CutCountsMatchEdgeList) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 70));
    const auto g = share(random_graph(n, 0.3, trial));
    const auto bits = AdjacencyBits::of(*g);
    const VertexSet xs = random_set(n, rng);
    const VertexSet ys = random_set(n, rng);
    long brute = 0;
    for (const Edge& e : g->edges()) brute += xs.contains(e.a) && ys.contains(e.b);
    EXPECT_EQ(bits.count_between(Side::A, xs, ys), brute);
    EXPECT_EQ(edges_between(*g, xs, ys), brute);
    long swapped = 0;
    for (const Edge& e : g->edges()) swapped += ys.contains(e.a) && xs.contains(e.b);
    EXPECT_EQ(bits.count_between(Side::B, xs, ys), swapped);

    const auto counts = bits.counts_from(Side::A, xs);
    for (int y = 0; y < n; ++y) {
      int expected = 0;
      for (const Edge& e : g->edges()) expected += xs.contains(e.a) && e.b == y;
      EXPECT_EQ(counts[static_cast<std::size_t>(y)], expected);
    }
    const EdgeSubset half(g, [&] {
      std::vector<EdgeId> ids;
      for (EdgeId id = 0; id < static_cast<EdgeId>(g->num_edges()); id += 2) ids.push_back(id);
      return ids;
    }());
    long half_brute = 0;
    for (EdgeId id : half.members()) half_brute += xs.contains(g->edge(id).a) && ys.contains(g->edge(id).b);
    EXPECT_EQ(edges_between(half, xs, ys), half_brute);
    EXPECT_EQ(AdjacencyBits::of(half).count_between(Side::A, xs, ys), half_brute);
  }
}

TEST(TripleSystem, TripartiteAndPlainConventions) {
  const TripleSystem t(TripleMode::Tripartite, 2, {{1, 0, 1}, {0, 0, 0}});
  EXPECT_EQ(t.triples().front(), (Triple{0, 0, 0}));
  EXPECT_TRUE(t.contains({1, 0, 1}));
  EXPECT_FALSE(t.contains({1, 1, 0}));

  const TripleSystem p(TripleMode::Plain, 4, {{3, 1, 0}});
  EXPECT_EQ(p.triples().front(), (Triple{0, 1, 3}));
  EXPECT_TRUE(p.contains({1, 3, 0}));
  EXPECT_THROW(TripleSystem(TripleMode::Plain, 4, {{0, 0, 1}}), InvalidInput);
  EXPECT_THROW(TripleSystem(TripleMode::Plain, 4, {{0, 1, 2}, {2, 1, 0}}), InvalidInput);
  EXPECT_THROW(TripleSystem(TripleMode::Tripartite, 2, {{0, 0, 2}}), InvalidInput);

  EXPECT_EQ(TripleSystem::complete(TripleMode::Tripartite, 3).size(), 27u);
  EXPECT_EQ(TripleSystem::complete(TripleMode::Plain, 7).size(), 35u);
}

TEST(ListAssignment, ValidationAndHostOrder) {
  EXPECT_EQ(host_edges(HostKind::Complete, 4).size(), 6u);
  EXPECT_EQ(host_edges(HostKind::Complete, 4)[1], (Edge{0, 2}));
  EXPECT_EQ(host_edges(HostKind::CompleteBipartite, 2)[2], (Edge{1, 0}));

  ListAssignment l{HostKind::Complete, 3, 2, 3, {{0, 1}, {1, 2}, {0, 2}}};
  EXPECT_NO_THROW(l.validate());
  l.lists[0] = {1, 0};
  EXPECT_THROW(l.validate(), InvalidInput);
  l.lists[0] = {0, 3};
  EXPECT_THROW(l.validate(), InvalidInput);
  l.lists.pop_back();
  EXPECT_THROW(l.validate(), InvalidInput);
}

TEST(TextFormats, RoundTrips) {
  const auto g = random_graph(5, 0.5, 2);
  std::stringstream gs;
  write_graph(gs, g);
  EXPECT_EQ(read_graph(gs), g);

  for (auto mode : {TripleMode::Tripartite, TripleMode::Plain}) {
    const auto t = TripleSystem::complete(mode, 4);
    std::stringstream ts;
    write_triples(ts, t);
    EXPECT_EQ(read_triples(ts), t);
  }

  const ListAssignment l{HostKind::CompleteBipartite, 2, 1, 2, {{0}, {1}, {1}, {0}}};
  std::stringstream ls;
  write_lists(ls, l);
  EXPECT_EQ(read_lists(ls), l);
}

TEST(TextFormats, GraphFileLayout) {
  std::stringstream s;
  write_graph(s, BipartiteGraph(2, {{1, 0}, {0, 1}}));
  EXPECT_EQ(s.str(), "2 2\n0 1\n1 0\n");
  std::stringstream bad("2 1\n0 5\n");
  EXPECT_THROW(read_graph(bad), InvalidInput);
  std::stringstream truncated("2 3\n0 1\n");
  EXPECT_THROW(read_graph(truncated), InvalidInput);
}

TEST(BipartiteGraph, SpecExamples) {
  EXPECT_EQ(is_regular(complete_bipartite(2)), 2);
  EXPECT_EQ(complete_bipartite(3).num_edges(), 9u);
  const auto k5 = complete_bipartite(5);
  for (int v = 0; v < 5; ++v) EXPECT_EQ(degree(k5, {Side::B, v}), 5);

  const auto k3 = share(complete_bipartite(3));
  EXPECT_EQ(degree(*k3, {Side::A, 1}), 3);
  EXPECT_EQ(degree(EdgeSubset(k3), {Side::A, 1}), 0);
  const auto k4 = share(complete_bipartite(4));
  const EdgeSubset pm(k4, {0, 5, 10, 15});
  for (int v = 0; v < 4; ++v) EXPECT_EQ(degree(pm, {Side::A, v}), 1);

  EXPECT_EQ(edges_between(*k3, VertexSet(3, std::vector<int>{0}), VertexSet(3, std::vector<int>{0, 1})), 2);
  EXPECT_EQ(edges_between(*k3, VertexSet(3), VertexSet(3).complement()), 0);

  // 8-cycle a_i - b_i - a_{i+1}: scan the edge list directly.
  std::vector<Edge> cyc;
  for (int i = 0; i < 4; ++i) {
    cyc.push_back({i, i});
    cyc.push_back({(i + 1) % 4, i});
  }
  const BipartiteGraph c8(4, cyc);
  const VertexSet as(4, std::vector<int>{0, 1});
  const VertexSet bs(4, std::vector<int>{0, 1});
  long scan = 0;
  for (const Edge& e : cyc) scan += as.contains(e.a) && bs.contains(e.b);
  EXPECT_EQ(edges_between(c8, as, bs), scan);
  EXPECT_EQ(scan, 3);

  EXPECT_FALSE(is_regular(EdgeSubset(share(complete_bipartite(2)), {0})).has_value());
  const EdgeSubset two_matchings(k3, {0, 4, 8, 1, 5, 6});
  EXPECT_EQ(is_regular(two_matchings), 2);
}

TEST(BipartiteGraph, PartitionDegreesAdd) {
  Rng rng(5);
  for (int n = 1; n <= 16; ++n) {
    const auto g = share(complete_bipartite(n));
    const int parts = 1 + static_cast<int>(uniform_below(rng, 4));
    std::vector<std::vector<EdgeId>> ids(static_cast<std::size_t>(parts));
    for (EdgeId id = 0; id < static_cast<EdgeId>(g->num_edges()); ++id)
      ids[uniform_below(rng, static_cast<std::uint64_t>(parts))].push_back(id);
    std::vector<int> sum(static_cast<std::size_t>(2 * n), 0);
    for (auto& part : ids) {
      const auto deg = EdgeSubset(g, part).degrees();
      for (int v = 0; v < n; ++v) {
        sum[static_cast<std::size_t>(v)] += deg[0][static_cast<std::size_t>(v)];
        sum[static_cast<std::size_t>(n + v)] += deg[1][static_cast<std::size_t>(v)];
      }
    }
    for (int s : sum) EXPECT_EQ(s, n);
  }
}

TEST(BipartiteGraph, CutSplitsDegreeSum) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 20));
    const auto g = random_graph(n, 0.5, 100 + trial);
    const VertexSet as = random_set(n, rng);
    const VertexSet bs = random_set(n, rng);
    long deg_sum = 0;
    for (int a : as.to_vector()) deg_sum += degree(g, {Side::A, a});
    EXPECT_EQ(edges_between(g, as, bs) + edges_between(g, as, bs.complement()), deg_sum);
  }
}

TEST(BipartiteGraph, CompleteIsRegularUpTo64) {
  for (int n = 1; n <= 64; ++n) EXPECT_EQ(is_regular(complete_bipartite(n)), n);
}
