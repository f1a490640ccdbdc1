#include "spreadlab/exact_cover.hpp"

#include <algorithm>

#include "spreadlab/graph.hpp"

namespace spreadlab {
namespace {

class Dlx {
 public:
  explicit Dlx(const ExactCoverInstance& inst) : primary_(inst.primary) {
    const int items = inst.primary + inst.secondary;
    // Node 0 is the root; nodes 1..items are item headers.
    const auto headers = static_cast<std::size_t>(items) + 1;
    left_.resize(headers);
    right_.resize(headers);
    up_.resize(headers);
    down_.resize(headers);
    column_.resize(headers);
    row_.assign(headers, -1);
    size_.assign(headers, 0);
    for (int i = 0; i <= items; ++i) {
      up_[static_cast<std::size_t>(i)] = down_[static_cast<std::size_t>(i)] = i;
      column_[static_cast<std::size_t>(i)] = i;
    }
    // Only primary headers join the root list; secondary ones link to themselves.
    int prev = 0;
    for (int i = 1; i <= inst.primary; ++i) {
      right_[static_cast<std::size_t>(prev)] = i;
      left_[static_cast<std::size_t>(i)] = prev;
      prev = i;
    }
    right_[static_cast<std::size_t>(prev)] = 0;
    left_[0] = prev;
    for (int i = inst.primary + 1; i <= items; ++i) {
      left_[static_cast<std::size_t>(i)] = right_[static_cast<std::size_t>(i)] = i;
    }

    for (std::size_t r = 0; r < inst.rows.size(); ++r) {
      std::vector<int> items_in_row = inst.rows[r];
      std::sort(items_in_row.begin(), items_in_row.end());
      if (std::adjacent_find(items_in_row.begin(), items_in_row.end()) != items_in_row.end()) {
        throw InvalidInput("exact cover: row repeats an item");
      }
      int first = -1;
      for (int item : items_in_row) {
        if (item < 0 || item >= items) throw InvalidInput("exact cover: row references an unknown item");
        const int c = item + 1;
        const int x = add_node(c, static_cast<int>(r));
        if (first < 0) {
          first = x;
          left_[static_cast<std::size_t>(x)] = right_[static_cast<std::size_t>(x)] = x;
        } else {
          const int last = left_[static_cast<std::size_t>(first)];
          right_[static_cast<std::size_t>(last)] = x;
          left_[static_cast<std::size_t>(x)] = last;
          right_[static_cast<std::size_t>(x)] = first;
          left_[static_cast<std::size_t>(first)] = x;
        }
      }
    }
  }

  /// Returns false when the budget ran out.
  bool search(long long budget, bool count_all) {
    budget_ = budget;
    count_all_ = count_all;
    return recurse();
  }

  long long nodes() const { return nodes_; }
  long long solutions() const { return solutions_; }
  const std::vector<int>& first_solution() const { return first_; }

 private:
  int add_node(int c, int r) {
    const int x = static_cast<int>(left_.size());
    left_.push_back(x);
    right_.push_back(x);
    column_.push_back(c);
    row_.push_back(r);
    const int u = up_[static_cast<std::size_t>(c)];
    up_.push_back(u);
    down_.push_back(c);
    down_[static_cast<std::size_t>(u)] = x;
    up_[static_cast<std::size_t>(c)] = x;
    size_.push_back(0);
    ++size_[static_cast<std::size_t>(c)];
    return x;
  }

  void cover(int c) {
    const auto uc = static_cast<std::size_t>(c);
    right_[static_cast<std::size_t>(left_[uc])] = right_[uc];
    left_[static_cast<std::size_t>(right_[uc])] = left_[uc];
    for (int i = down_[uc]; i != c; i = down_[static_cast<std::size_t>(i)]) {
      for (int j = right_[static_cast<std::size_t>(i)]; j != i; j = right_[static_cast<std::size_t>(j)]) {
        const auto uj = static_cast<std::size_t>(j);
        down_[static_cast<std::size_t>(up_[uj])] = down_[uj];
        up_[static_cast<std::size_t>(down_[uj])] = up_[uj];
        --size_[static_cast<std::size_t>(column_[uj])];
      }
    }
  }

  void uncover(int c) {
    const auto uc = static_cast<std::size_t>(c);
    for (int i = up_[uc]; i != c; i = up_[static_cast<std::size_t>(i)]) {
      for (int j = left_[static_cast<std::size_t>(i)]; j != i; j = left_[static_cast<std::size_t>(j)]) {
        const auto uj = static_cast<std::size_t>(j);
        ++size_[static_cast<std::size_t>(column_[uj])];
        down_[static_cast<std::size_t>(up_[uj])] = j;
        up_[static_cast<std::size_t>(down_[uj])] = j;
      }
    }
    right_[static_cast<std::size_t>(left_[uc])] = c;
    left_[static_cast<std::size_t>(right_[uc])] = c;
  }

  bool recurse() {
    if (right_[0] == 0) {
      if (solutions_ == 0) {
        first_ = partial_;
        std::sort(first_.begin(), first_.end());
      }
      ++solutions_;
      return true;
    }
    if (nodes_ >= budget_) return false;
    ++nodes_;
    int best = right_[0];
    for (int c = right_[0]; c != 0; c = right_[static_cast<std::size_t>(c)]) {
      if (size_[static_cast<std::size_t>(c)] < size_[static_cast<std::size_t>(best)]) best = c;
    }
    if (size_[static_cast<std::size_t>(best)] == 0) return true;
    cover(best);
    bool within_budget = true;
    for (int r = down_[static_cast<std::size_t>(best)]; r != best; r = down_[static_cast<std::size_t>(r)]) {
      partial_.push_back(row_[static_cast<std::size_t>(r)]);
      for (int j = right_[static_cast<std::size_t>(r)]; j != r; j = right_[static_cast<std::size_t>(j)]) {
        cover(column_[static_cast<std::size_t>(j)]);
      }
      within_budget = recurse();
      for (int j = left_[static_cast<std::size_t>(r)]; j != r; j = left_[static_cast<std::size_t>(j)]) {
        uncover(column_[static_cast<std::size_t>(j)]);
      }
      partial_.pop_back();
      if (!within_budget || (!count_all_ && solutions_ > 0)) break;
    }
    uncover(best);
    return within_budget;
  }

  int primary_;
  std::vector<int> left_, right_, up_, down_, column_, row_, size_;
  std::vector<int> partial_;
  std::vector<int> first_;
  long long nodes_ = 0;
  long long budget_ = 0;
  long long solutions_ = 0;
  bool count_all_ = false;
};

void check_instance(const ExactCoverInstance& inst) {
  if (inst.primary < 0 || inst.secondary < 0) throw InvalidInput("exact cover: negative item count");
}

}  // namespace

ExactCoverResult solve_exact_cover(const ExactCoverInstance& inst, long long node_budget) {
  check_instance(inst);
  Dlx dlx(inst);
  ExactCoverResult out;
  const bool finished = dlx.search(node_budget, false);
  out.nodes = dlx.nodes();
  if (dlx.solutions() > 0) {
    out.status = SolveStatus::Found;
    out.rows = dlx.first_solution();
  } else {
    out.status = finished ? SolveStatus::Absent : SolveStatus::Unknown;
  }
  return out;
}

ExactCoverCount count_exact_covers(const ExactCoverInstance& inst, long long node_budget) {
  check_instance(inst);
  Dlx dlx(inst);
  ExactCoverCount out;
  out.complete = dlx.search(node_budget, true);
  out.count = dlx.solutions();
  out.nodes = dlx.nodes();
  return out;
}

}  // namespace spreadlab
