#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "spreadlab/graph.hpp"
#include "spreadlab/random.hpp"

namespace spreadlab {

/// Target degrees: f on A-vertices, g on B-vertices.
struct DegreePrescription {
  std::vector<int> f;
  std::vector<int> g;

  static DegreePrescription uniform(int n, int d) {
    return {std::vector<int>(static_cast<std::size_t>(n), d), std::vector<int>(static_cast<std::size_t>(n), d)};
  }
};

/// Spanning subgraph H of `host` with d_H(a) = f(a) and d_H(b) = g(b), found by
/// integral max flow (source -> a with capacity f(a), unit edge arcs, b -> sink
/// with capacity g(b)). Absent when no such subgraph exists.
///
/// Arcs are added in edge-identifier order, so the returned subgraph is a
/// deterministic function of the input. Mismatched sums, negative entries or
/// wrong lengths raise InvalidInput.
std::optional<EdgeSubset> degree_prescribed_subgraph(const EdgeSubset& host, const DegreePrescription& p);
std::optional<EdgeSubset> degree_prescribed_subgraph(const GraphPtr& g, const DegreePrescription& p);

/// sum_{a in A'} f(a) - sum_{b not in B'} g(b).
long hall_deficiency(const DegreePrescription& p, const VertexSet& a_set, const VertexSet& b_set);

struct HallViolation {
  VertexSet a_set;
  VertexSet b_set;
  long edges;   // |E(A', B')|
  long demand;  // hall_deficiency(A', B')
};

/// Exhaustive search for a pair (A', B') with |E(A', B')| < deficiency.
///
/// For a fixed A' the worst B' takes every b with |E(A', b)| < g(b), so only
/// the 2^n choices of A' are enumerated. Requires n <= 20.
std::optional<HallViolation> check_hall_all(const EdgeSubset& host, const DegreePrescription& p);

/// Same check over `budget` uniformly random A' (each paired with its worst B').
std::optional<HallViolation> check_hall_sampled(const EdgeSubset& host, const DegreePrescription& p, long budget,
                                                Rng& rng);

/// Regular completion: R with K ⊆ R ⊆ K ∪ reservoir and R d-regular, or absent.
/// K and reservoir must be disjoint subsets of one parent; d below the maximum
/// degree of K raises InvalidInput.
std::optional<EdgeSubset> complete_within(const EdgeSubset& k, const EdgeSubset& reservoir, int d);

/// Debug dump as "v value" lines, A-side first then B-side.
void write_prescription(std::ostream& out, const DegreePrescription& p);

}  // namespace spreadlab
