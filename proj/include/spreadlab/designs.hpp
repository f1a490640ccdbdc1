#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "spreadlab/exact_cover.hpp"
#include "spreadlab/graph.hpp"

namespace spreadlab {

/// Outcome of a containment search; `witness` is set iff status is Found.
template <typename W>
struct Containment {
  SolveStatus status = SolveStatus::Absent;
  std::optional<W> witness;
  long long nodes = 0;
};

/// n² triples (row, column, symbol) of a tripartite system.
using TripleWitness = std::vector<Triple>;
/// One color per host edge, aligned with ListAssignment::host_edges().
using ColoringWitness = std::vector<int>;

/// Latin square inside a tripartite system: every (row, column), (row, symbol)
/// and (column, symbol) pair covered by exactly one chosen triple.
Containment<TripleWitness> latin_square_exists(const TripleSystem& t, long long node_budget = kDefaultNodeBudget);

/// Steiner triple system inside a plain system on [n].
Containment<TripleWitness> sts_exists(const TripleSystem& h, long long node_budget = kDefaultNodeBudget);

/// Proper L-list edge coloring of K_{n,n} with palette [n].
Containment<ColoringWitness> list_coloring_bipartite(const ListAssignment& l,
                                                     long long node_budget = kDefaultNodeBudget);

/// Proper L-list edge coloring of K_m: edges are primary items, (vertex, color)
/// pairs secondary.
Containment<ColoringWitness> list_coloring_complete(const ListAssignment& l,
                                                    long long node_budget = kDefaultNodeBudget);

/// Exact-cover encodings, exposed for counting.
ExactCoverInstance latin_instance(const TripleSystem& t);
ExactCoverInstance sts_instance(const TripleSystem& h);

// ---------------------------------------------------------------------------
// Random instances

/// Each of the n³ triples of the complete tripartite system independently with probability p.
TripleSystem sample_tripartite(int n, double p, std::uint64_t seed);
/// Each of the C(n,3) triples on [n] independently with probability p.
TripleSystem sample_3graph(int n, double p, std::uint64_t seed);
/// Independent uniform k-subsets of [palette] on every host edge.
ListAssignment sample_lists(HostKind host, int host_n, int k, int palette, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Independent re-checks

bool verify_latin(const TripleSystem& t, const TripleWitness& w);
bool verify_sts(const TripleSystem& h, const TripleWitness& w);
bool verify_coloring(const ListAssignment& l, const ColoringWitness& w);

/// "x y z" per triple.
void write_witness(std::ostream& out, const TripleWitness& w);
/// "a b c" per host edge.
void write_witness(std::ostream& out, const ListAssignment& l, const ColoringWitness& w);

}  // namespace spreadlab
