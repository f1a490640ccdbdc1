#include "spreadlab/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace spreadlab {

BipartiteGraph::BipartiteGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw InvalidInput("graph: negative part size");
  for (const Edge& e : edges_) {
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) {
      throw InvalidInput("graph: edge endpoint out of range");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InvalidInput("graph: duplicate edge");
  }
  const auto un = static_cast<std::size_t>(n);
  a_offsets_.assign(un + 1, 0);
  b_offsets_.assign(un + 1, 0);
  for (const Edge& e : edges_) {
    ++a_offsets_[static_cast<std::size_t>(e.a) + 1];
    ++b_offsets_[static_cast<std::size_t>(e.b) + 1];
  }
  std::partial_sum(a_offsets_.begin(), a_offsets_.end(), a_offsets_.begin());
  std::partial_sum(b_offsets_.begin(), b_offsets_.end(), b_offsets_.begin());
  a_incidence_.resize(edges_.size());
  std::iota(a_incidence_.begin(), a_incidence_.end(), 0);
  b_incidence_.resize(edges_.size());
  std::vector<std::size_t> cursor(b_offsets_.begin(), b_offsets_.end() - 1);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    b_incidence_[cursor[static_cast<std::size_t>(edges_[id].b)]++] = static_cast<EdgeId>(id);
  }
}

std::optional<EdgeId> BipartiteGraph::find(int a, int b) const {
  if (a < 0 || a >= n_ || b < 0 || b >= n_) return std::nullopt;
  const auto first = edges_.begin() + static_cast<std::ptrdiff_t>(a_offsets_[static_cast<std::size_t>(a)]);
  const auto last = edges_.begin() + static_cast<std::ptrdiff_t>(a_offsets_[static_cast<std::size_t>(a) + 1]);
  const auto it = std::lower_bound(first, last, Edge{a, b});
  if (it == last || it->b != b) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

std::span<const EdgeId> BipartiteGraph::incident(Vertex v) const {
  const auto i = static_cast<std::size_t>(v.index);
  if (v.side == Side::A) {
    return std::span<const EdgeId>(a_incidence_).subspan(a_offsets_[i], a_offsets_[i + 1] - a_offsets_[i]);
  }
  return std::span<const EdgeId>(b_incidence_).subspan(b_offsets_[i], b_offsets_[i + 1] - b_offsets_[i]);
}

BipartiteGraph complete_bipartite(int n) {
  if (n < 1) throw InvalidInput("complete_bipartite: n must be >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) edges.push_back({a, b});
  }
  return BipartiteGraph(n, std::move(edges));
}

// ---------------------------------------------------------------------------

EdgeSubset::EdgeSubset(GraphPtr parent) : parent_(std::move(parent)) {
  if (!parent_) throw InvalidInput("edge subset: null parent");
}

EdgeSubset::EdgeSubset(GraphPtr parent, std::vector<EdgeId> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  if (!parent_) throw InvalidInput("edge subset: null parent");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() &&
      (members_.front() < 0 || static_cast<std::size_t>(members_.back()) >= parent_->num_edges())) {
    throw InvalidInput("edge subset: identifier out of range");
  }
}

EdgeSubset EdgeSubset::all(GraphPtr parent) {
  std::vector<EdgeId> ids(parent->num_edges());
  std::iota(ids.begin(), ids.end(), 0);
  return EdgeSubset(std::move(parent), std::move(ids));
}

bool EdgeSubset::contains(EdgeId id) const {
  return std::binary_search(members_.begin(), members_.end(), id);
}

std::array<std::vector<int>, 2> EdgeSubset::degrees() const {
  const auto un = static_cast<std::size_t>(n());
  std::array<std::vector<int>, 2> deg{std::vector<int>(un, 0), std::vector<int>(un, 0)};
  for (EdgeId id : members_) {
    const Edge& e = parent_->edge(id);
    ++deg[0][static_cast<std::size_t>(e.a)];
    ++deg[1][static_cast<std::size_t>(e.b)];
  }
  return deg;
}

void EdgeSubset::check_same_parent(const EdgeSubset& other) const {
  if (parent_ != other.parent_ && !(*parent_ == *other.parent_)) {
    throw InvalidInput("edge subset: operands have different parents");
  }
}

EdgeSubset EdgeSubset::unite(const EdgeSubset& other) const {
  check_same_parent(other);
  std::vector<EdgeId> out;
  out.reserve(members_.size() + other.members_.size());
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return EdgeSubset(parent_, std::move(out));
}

EdgeSubset EdgeSubset::minus(const EdgeSubset& other) const {
  check_same_parent(other);
  std::vector<EdgeId> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                      std::back_inserter(out));
  return EdgeSubset(parent_, std::move(out));
}

EdgeSubset EdgeSubset::intersect(const EdgeSubset& other) const {
  check_same_parent(other);
  std::vector<EdgeId> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
  return EdgeSubset(parent_, std::move(out));
}

bool EdgeSubset::is_subset_of(const EdgeSubset& other) const {
  check_same_parent(other);
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

bool EdgeSubset::disjoint_from(const EdgeSubset& other) const {
  return intersect(other).empty();
}

BipartiteGraph EdgeSubset::to_graph() const {
  std::vector<Edge> edges;
  edges.reserve(members_.size());
  for (EdgeId id : members_) edges.push_back(parent_->edge(id));
  return BipartiteGraph(n(), std::move(edges));
}

int degree(const BipartiteGraph& g, Vertex v) {
  if (v.index < 0 || v.index >= g.n()) throw InvalidInput("degree: vertex out of range");
  return static_cast<int>(g.incident(v).size());
}

int degree(const EdgeSubset& h, Vertex v) {
  if (v.index < 0 || v.index >= h.n()) throw InvalidInput("degree: vertex out of range");
  int d = 0;
  for (EdgeId id : h.parent().incident(v)) d += h.contains(id) ? 1 : 0;
  return d;
}

// ---------------------------------------------------------------------------

VertexSet::VertexSet(int n, std::span<const int> members) : VertexSet(n) {
  for (int v : members) {
    if (v < 0 || v >= n) throw InvalidInput("vertex set: member out of range");
    insert(v);
  }
}

int VertexSet::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

VertexSet VertexSet::complement() const {
  VertexSet out(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  if (n_ % 64 != 0 && !out.words_.empty()) out.words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  return out;
}

std::vector<int> VertexSet::to_vector() const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v) {
    if (contains(v)) out.push_back(v);
  }
  return out;
}

AdjacencyBits::AdjacencyBits(int n, std::span<const Edge> edges)
    : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64) {
  for (auto& r : rows_) r.assign(words_ * static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges) {
    rows_[0][static_cast<std::size_t>(e.a) * words_ + (static_cast<std::size_t>(e.b) >> 6)] |=
        std::uint64_t{1} << (e.b & 63);
    rows_[1][static_cast<std::size_t>(e.b) * words_ + (static_cast<std::size_t>(e.a) >> 6)] |=
        std::uint64_t{1} << (e.a & 63);
  }
}

AdjacencyBits AdjacencyBits::of(const EdgeSubset& h) {
  std::vector<Edge> edges;
  edges.reserve(h.size());
  for (EdgeId id : h.members()) edges.push_back(h.parent().edge(id));
  return AdjacencyBits(h.n(), edges);
}

std::span<const std::uint64_t> AdjacencyBits::row(Side side, int v) const {
  return std::span<const std::uint64_t>(rows_[static_cast<int>(side)])
      .subspan(static_cast<std::size_t>(v) * words_, words_);
}

long AdjacencyBits::count_between(Side xs_side, const VertexSet& xs, const VertexSet& ys) const {
  long total = 0;
  const auto ywords = ys.words();
  for (int x = 0; x < n_; ++x) {
    if (!xs.contains(x)) continue;
    const auto r = row(xs_side, x);
    for (std::size_t w = 0; w < words_; ++w) total += std::popcount(r[w] & ywords[w]);
  }
  return total;
}

int AdjacencyBits::degree(Side side, int v) const {
  int d = 0;
  for (auto w : row(side, v)) d += std::popcount(w);
  return d;
}

std::vector<int> AdjacencyBits::counts_from(Side xs_side, const VertexSet& xs) const {
  std::vector<int> out(static_cast<std::size_t>(n_), 0);
  const auto xwords = xs.words();
  for (int y = 0; y < n_; ++y) {
    const auto r = row(other(xs_side), y);
    int c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(r[w] & xwords[w]);
    out[static_cast<std::size_t>(y)] = c;
  }
  return out;
}

long edges_between(const BipartiteGraph& g, const VertexSet& a_set, const VertexSet& b_set) {
  long total = 0;
  for (int a = 0; a < g.n(); ++a) {
    if (!a_set.contains(a)) continue;
    for (EdgeId id : g.incident({Side::A, a})) total += b_set.contains(g.edge(id).b) ? 1 : 0;
  }
  return total;
}

long edges_between(const EdgeSubset& h, const VertexSet& a_set, const VertexSet& b_set) {
  long total = 0;
  for (EdgeId id : h.members()) {
    const Edge& e = h.parent().edge(id);
    total += (a_set.contains(e.a) && b_set.contains(e.b)) ? 1 : 0;
  }
  return total;
}

namespace {

std::optional<int> common_degree(const std::array<std::vector<int>, 2>& deg) {
  if (deg[0].empty()) return 0;
  const int d = deg[0].front();
  for (const auto& side : deg) {
    if (std::any_of(side.begin(), side.end(), [d](int x) { return x != d; })) return std::nullopt;
  }
  return d;
}

}  // namespace

std::optional<int> is_regular(const BipartiteGraph& g) {
  std::array<std::vector<int>, 2> deg;
  for (int s = 0; s < 2; ++s) {
    for (int v = 0; v < g.n(); ++v) deg[static_cast<std::size_t>(s)].push_back(degree(g, {static_cast<Side>(s), v}));
  }
  return common_degree(deg);
}

std::optional<int> is_regular(const EdgeSubset& h) { return common_degree(h.degrees()); }

// ---------------------------------------------------------------------------

TripleSystem::TripleSystem(TripleMode mode, int n, std::vector<Triple> triples)
    : mode_(mode), n_(n), triples_(std::move(triples)) {
  if (n < 0) throw InvalidInput("triple system: negative n");
  for (Triple& t : triples_) {
    for (int x : t) {
      if (x < 0 || x >= n) throw InvalidInput("triple system: vertex out of range");
    }
    if (mode == TripleMode::Plain) {
      std::sort(t.begin(), t.end());
      if (t[0] == t[1] || t[1] == t[2]) throw InvalidInput("triple system: repeated vertex in plain triple");
    }
  }
  std::sort(triples_.begin(), triples_.end());
  if (std::adjacent_find(triples_.begin(), triples_.end()) != triples_.end()) {
    throw InvalidInput("triple system: duplicate triple");
  }
}

TripleSystem TripleSystem::complete(TripleMode mode, int n) {
  std::vector<Triple> all;
  if (mode == TripleMode::Tripartite) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) all.push_back({x, y, z});
  } else {
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        for (int z = y + 1; z < n; ++z) all.push_back({x, y, z});
  }
  return TripleSystem(mode, n, std::move(all));
}

bool TripleSystem::contains(Triple t) const {
  if (mode_ == TripleMode::Plain) std::sort(t.begin(), t.end());
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

std::vector<Edge> host_edges(HostKind host, int host_n) {
  std::vector<Edge> out;
  if (host == HostKind::CompleteBipartite) {
    for (int a = 0; a < host_n; ++a)
      for (int b = 0; b < host_n; ++b) out.push_back({a, b});
  } else {
    for (int u = 0; u < host_n; ++u)
      for (int v = u + 1; v < host_n; ++v) out.push_back({u, v});
  }
  return out;
}

std::vector<Edge> ListAssignment::host_edges() const { return spreadlab::host_edges(host, host_n); }

void ListAssignment::validate() const {
  if (host_n < 1 || k < 0 || palette < 0 || k > palette) throw InvalidInput("lists: bad header values");
  if (lists.size() != host_edges().size()) throw InvalidInput("lists: one list per host edge required");
  for (const auto& l : lists) {
    if (static_cast<int>(l.size()) != k) throw InvalidInput("lists: list size differs from k");
    if (!std::is_sorted(l.begin(), l.end()) || std::adjacent_find(l.begin(), l.end()) != l.end()) {
      throw InvalidInput("lists: list must be sorted and duplicate free");
    }
    for (int c : l) {
      if (c < 0 || c >= palette) throw InvalidInput("lists: color out of palette");
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

std::string next_data_line(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) return line;
  }
  throw InvalidInput(std::string("unexpected end of input reading ") + what);
}

}  // namespace

std::string to_string(TripleMode mode) { return mode == TripleMode::Tripartite ? "tripartite" : "plain"; }

std::string to_string(HostKind host) { return host == HostKind::CompleteBipartite ? "bipartite" : "complete"; }

void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << g.n() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.a << ' ' << e.b << '\n';
}

BipartiteGraph read_graph(std::istream& in) {
  std::istringstream header(next_data_line(in, "graph header"));
  int n = 0;
  long m = 0;
  if (!(header >> n >> m) || m < 0) throw InvalidInput("graph: malformed header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    std::istringstream line(next_data_line(in, "graph edge"));
    Edge e{};
    if (!(line >> e.a >> e.b)) throw InvalidInput("graph: malformed edge line");
    edges.push_back(e);
  }
  return BipartiteGraph(n, std::move(edges));
}

void write_triples(std::ostream& out, const TripleSystem& t) {
  out << to_string(t.mode()) << ' ' << t.n() << '\n';
  for (const Triple& x : t.triples()) out << x[0] << ' ' << x[1] << ' ' << x[2] << '\n';
}

TripleSystem read_triples(std::istream& in) {
  std::istringstream header(next_data_line(in, "triple header"));
  std::string mode;
  int n = 0;
  if (!(header >> mode >> n)) throw InvalidInput("triples: malformed header");
  TripleMode m;
  if (mode == "tripartite") {
    m = TripleMode::Tripartite;
  } else if (mode == "plain") {
    m = TripleMode::Plain;
  } else {
    throw InvalidInput("triples: unknown mode '" + mode + "'");
  }
  std::vector<Triple> triples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Triple t{};
    if (!(ls >> t[0] >> t[1] >> t[2])) throw InvalidInput("triples: malformed triple line");
    triples.push_back(t);
  }
  return TripleSystem(m, n, std::move(triples));
}

void write_lists(std::ostream& out, const ListAssignment& l) {
  out << to_string(l.host) << ' ' << l.host_n << ' ' << l.k << ' ' << l.palette << '\n';
  const auto edges = l.host_edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << edges[i].a << ' ' << edges[i].b;
    for (int c : l.lists[i]) out << ' ' << c;
    out << '\n';
  }
}

ListAssignment read_lists(std::istream& in) {
  std::istringstream header(next_data_line(in, "list header"));
  std::string host;
  ListAssignment l;
  if (!(header >> host >> l.host_n >> l.k >> l.palette)) throw InvalidInput("lists: malformed header");
  if (host == "bipartite") {
    l.host = HostKind::CompleteBipartite;
  } else if (host == "complete") {
    l.host = HostKind::Complete;
  } else {
    throw InvalidInput("lists: unknown host '" + host + "'");
  }
  const auto edges = l.host_edges();
  l.lists.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::istringstream ls(next_data_line(in, "list line"));
    Edge e{};
    if (!(ls >> e.a >> e.b) || !(e == edges[i])) throw InvalidInput("lists: edge lines must follow host order");
    int c = 0;
    while (ls >> c) l.lists[i].push_back(c);
  }
  l.validate();
  return l;
}

}  // namespace spreadlab
