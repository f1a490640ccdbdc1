#pragma once

#include <cstdint>
#include <vector>

namespace spreadlab {

/// Items 0..primary-1 must be covered exactly once, items
/// primary..primary+secondary-1 at most once. Each row lists its items.
/// Rows are only ever chosen to cover a primary item, so a row made of
/// secondary items alone never appears in a solution.
struct ExactCoverInstance {
  int primary = 0;
  int secondary = 0;
  std::vector<std::vector<int>> rows;
};

enum class SolveStatus : std::uint8_t { Found, Absent, Unknown };

struct ExactCoverResult {
  SolveStatus status = SolveStatus::Absent;
  std::vector<int> rows;  // ascending row indices when found
  long long nodes = 0;    // search nodes expanded
};

struct ExactCoverCount {
  long long count = 0;
  bool complete = true;  // false when the node budget ran out
  long long nodes = 0;
};

inline constexpr long long kDefaultNodeBudget = 10'000'000;

/// Dancing-links Algorithm X. Branches on the primary item with the fewest
/// remaining rows (lowest index on ties) and tries its rows in input order.
/// Exhausting the budget yields Unknown, never Absent.
ExactCoverResult solve_exact_cover(const ExactCoverInstance& inst, long long node_budget = kDefaultNodeBudget);

/// Number of exact covers, by the same search run to completion.
ExactCoverCount count_exact_covers(const ExactCoverInstance& inst, long long node_budget = kDefaultNodeBudget);

}  // namespace spreadlab
