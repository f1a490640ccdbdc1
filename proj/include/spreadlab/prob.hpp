#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spreadlab/random.hpp"

namespace spreadlab {

/// Raised when a sampler or solver runs out of its attempt/node budget.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(const std::string& what, long long spent) : std::runtime_error(what), spent_(spent) {}
  long long spent() const { return spent_; }

 private:
  long long spent_;
};

/// Raised when the conditioning event of an exact computation has probability zero.
class DegenerateInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Independent finite random variables. Variable i takes values 0..k_i-1 with
/// the probabilities in probs[i].
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<std::vector<double>> probs);

  static ProductSpace bernoulli(std::span<const double> p);
  static ProductSpace uniform(int variables, int values);

  std::size_t size() const { return probs_.size(); }
  int arity(std::size_t i) const { return static_cast<int>(probs_[i].size()); }
  std::span<const double> probs(std::size_t i) const { return probs_[i]; }
  double log_states() const;

  std::vector<int> sample(Rng& rng) const;
  double probability(std::span<const int> assignment) const;

 private:
  std::vector<std::vector<double>> probs_;
  std::vector<std::vector<double>> cdf_;
};

using Assignment = std::vector<int>;
using Predicate = std::function<bool(std::span<const int>)>;

struct Event {
  Predicate holds;
  std::vector<int> support;  // sorted variable indices the predicate reads
};

/// Bad events with their dependency graph: events whose supports intersect are
/// adjacent. Built from supports, so the dependency-graph contract holds.
class EventSystem {
 public:
  EventSystem() = default;
  explicit EventSystem(std::vector<Event> events);

  std::span<const Event> events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  const std::vector<std::vector<int>>& neighbours() const { return adjacency_; }
  int max_degree() const { return max_degree_; }
  bool any_holds(std::span<const int> assignment) const;
  /// Number of events whose support meets `support`.
  int overlap_count(std::span<const int> support) const;

 private:
  std::vector<Event> events_;
  std::vector<std::vector<int>> adjacency_;
  int max_degree_ = 0;
};

bool supports_intersect(std::span<const int> x, std::span<const int> y);

/// exp(-δ² p m / (2 + δ)): tail bound for Bin(m, p) > (1 + δ) p m.
double chernoff_upper(long m, double p, double delta);
/// exp(-δ² p m / 2): tail bound for Bin(m, p) < (1 - δ) p m.
double chernoff_lower(long m, double p, double delta);

struct RejectionResult {
  Assignment assignment;
  long attempts;
};

/// Exact sample from the product measure conditioned on no event holding.
/// Throws BudgetExhausted after max_attempts rejected draws.
RejectionResult rejection_sample(const ProductSpace& space, const EventSystem& sys, Rng& rng,
                                 long max_attempts = 1'000'000);

/// min(1, P_E · exp(6 p N)), evaluated in log space.
double lll_comparison_bound(double product_prob, double event_bound, long overlap);

struct LllReport {
  double conditional_prob;  // P[E | no bad event]
  double product_prob;      // P[E] under the product measure
  double bound;
  double event_bound;       // p = max_j P(E_j)
  int max_degree;           // Δ
  int overlap;              // N
  bool hypothesis;          // 4 p Δ <= 1
  bool holds;               // conditional_prob <= bound
};

/// Exhaustive evaluation over all states (at most 2^20).
LllReport verify_lll_comparison(const ProductSpace& space, const EventSystem& sys, const Event& query);

struct LllInstance {
  ProductSpace space;
  EventSystem system;
  Event query;
};

/// Random instance on 2..max_vars binary variables with P(x_i = 1) uniform in
/// [0.05, 0.5]. Bad events and the query fix a random pattern on 1-3 random
/// variables. The most likely bad events are dropped until 4 p Δ <= 1.
LllInstance random_lll_instance(std::uint64_t seed, int max_vars);

}  // namespace spreadlab
