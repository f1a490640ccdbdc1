#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spreadlab {

/// Raised when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using EdgeId = std::int32_t;

enum class Side : std::uint8_t { A = 0, B = 1 };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

struct Vertex {
  Side side;
  int index;
};

struct Edge {
  int a;
  int b;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Bipartite graph with parts A and B of equal size n.
///
/// Edges are kept in lexicographic (a, b) order; the identifier of an edge is
/// its position in that order. Subgraphs refer back to these identifiers, so
/// they stay valid across any amount of subsetting.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  /// Duplicate or out-of-range edges raise InvalidInput.
  BipartiteGraph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const Edge& edge(EdgeId id) const { return edges_[static_cast<std::size_t>(id)]; }
  std::span<const Edge> edges() const { return edges_; }

  std::optional<EdgeId> find(int a, int b) const;

  /// Edge ids incident to a vertex, ascending.
  std::span<const EdgeId> incident(Vertex v) const;

  friend bool operator==(const BipartiteGraph& x, const BipartiteGraph& y) {
    return x.n_ == y.n_ && x.edges_ == y.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> a_offsets_;
  std::vector<std::size_t> b_offsets_;
  std::vector<EdgeId> b_incidence_;
  std::vector<EdgeId> a_incidence_;
};

using GraphPtr = std::shared_ptr<const BipartiteGraph>;

BipartiteGraph complete_bipartite(int n);

/// A set of edges of a shared parent graph, stored as sorted identifiers.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  explicit EdgeSubset(GraphPtr parent);  // empty subset
  EdgeSubset(GraphPtr parent, std::vector<EdgeId> members);

  static EdgeSubset all(GraphPtr parent);

  const BipartiteGraph& parent() const { return *parent_; }
  const GraphPtr& parent_ptr() const { return parent_; }
  int n() const { return parent_->n(); }
  std::span<const EdgeId> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(EdgeId id) const;

  /// Degrees of every A-vertex (index 0) and every B-vertex (index 1).
  std::array<std::vector<int>, 2> degrees() const;

  EdgeSubset unite(const EdgeSubset& other) const;
  EdgeSubset minus(const EdgeSubset& other) const;
  EdgeSubset intersect(const EdgeSubset& other) const;
  bool is_subset_of(const EdgeSubset& other) const;
  bool disjoint_from(const EdgeSubset& other) const;

  /// Materialises the subset as a standalone graph on the same vertex sets.
  BipartiteGraph to_graph() const;

  friend bool operator==(const EdgeSubset& x, const EdgeSubset& y) {
    return x.members_ == y.members_ && *x.parent_ == *y.parent_;
  }

 private:
  void check_same_parent(const EdgeSubset& other) const;

  GraphPtr parent_;
  std::vector<EdgeId> members_;
};

int degree(const BipartiteGraph& g, Vertex v);
int degree(const EdgeSubset& h, Vertex v);

/// Vertex subset of one part, as a bit mask over [0, n).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64, 0) {}
  VertexSet(int n, std::span<const int> members);

  int universe() const { return n_; }
  void insert(int v) { words_[static_cast<std::size_t>(v) >> 6] |= bit(v); }
  void erase(int v) { words_[static_cast<std::size_t>(v) >> 6] &= ~bit(v); }
  bool contains(int v) const { return (words_[static_cast<std::size_t>(v) >> 6] & bit(v)) != 0; }
  int count() const;
  VertexSet complement() const;
  std::vector<int> to_vector() const;
  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  static std::uint64_t bit(int v) { return std::uint64_t{1} << (v & 63); }
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense adjacency rows for fast cut counting; one bit row per vertex of each side.
class AdjacencyBits {
 public:
  AdjacencyBits(int n, std::span<const Edge> edges);
  static AdjacencyBits of(const BipartiteGraph& g) { return {g.n(), g.edges()}; }
  static AdjacencyBits of(const EdgeSubset& h);

  int n() const { return n_; }
  /// |{(x, y) : x in xs on side `xs_side`, y in ys on the other side}|.
  long count_between(Side xs_side, const VertexSet& xs, const VertexSet& ys) const;
  int degree(Side side, int v) const;
  /// For every y on the other side, |E(xs, y)|.
  std::vector<int> counts_from(Side xs_side, const VertexSet& xs) const;

 private:
  std::span<const std::uint64_t> row(Side side, int v) const;
  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_[2];
};

/// Number of edges (a, b) of g with a in a_set and b in b_set.
long edges_between(const BipartiteGraph& g, const VertexSet& a_set, const VertexSet& b_set);
long edges_between(const EdgeSubset& h, const VertexSet& a_set, const VertexSet& b_set);

/// Common degree if all 2n vertex degrees agree.
std::optional<int> is_regular(const BipartiteGraph& g);
std::optional<int> is_regular(const EdgeSubset& h);

// ---------------------------------------------------------------------------
// Triple systems and list assignments

using Triple = std::array<int, 3>;

enum class TripleMode : std::uint8_t { Tripartite, Plain };

/// 3-uniform hypergraph. Tripartite triples are (x, y, z) with one vertex in
/// each part [0, n); plain triples are 3 distinct vertices of [0, n), stored
/// sorted ascending. The triple list is kept sorted and duplicate free.
class TripleSystem {
 public:
  TripleSystem(TripleMode mode, int n, std::vector<Triple> triples);

  static TripleSystem complete(TripleMode mode, int n);

  TripleMode mode() const { return mode_; }
  int n() const { return n_; }
  std::span<const Triple> triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool contains(Triple t) const;

  friend bool operator==(const TripleSystem&, const TripleSystem&) = default;

 private:
  TripleMode mode_;
  int n_;
  std::vector<Triple> triples_;
};

enum class HostKind : std::uint8_t { CompleteBipartite, Complete };

/// Color lists on the edges of K_{n,n} (host_n = n) or K_m (host_n = m).
///
/// Host edges are ordered lexicographically: (a, b) for the bipartite host and
/// (u, v) with u < v for the complete host. Each list is sorted.
struct ListAssignment {
  HostKind host = HostKind::CompleteBipartite;
  int host_n = 0;
  int k = 0;
  int palette = 0;
  std::vector<std::vector<int>> lists;

  std::vector<Edge> host_edges() const;
  void validate() const;

  friend bool operator==(const ListAssignment&, const ListAssignment&) = default;
};

std::vector<Edge> host_edges(HostKind host, int host_n);

// ---------------------------------------------------------------------------
// Text formats

void write_graph(std::ostream& out, const BipartiteGraph& g);
BipartiteGraph read_graph(std::istream& in);

void write_triples(std::ostream& out, const TripleSystem& t);
TripleSystem read_triples(std::istream& in);

void write_lists(std::ostream& out, const ListAssignment& l);
ListAssignment read_lists(std::istream& in);

std::string to_string(TripleMode mode);
std::string to_string(HostKind host);

}  // namespace spreadlab
