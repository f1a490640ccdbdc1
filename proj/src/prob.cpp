#include "spreadlab/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spreadlab/graph.hpp"

namespace spreadlab {

ProductSpace::ProductSpace(std::vector<std::vector<double>> probs) : probs_(std::move(probs)) {
  for (const auto& p : probs_) {
    if (p.empty()) throw InvalidInput("product space: variable with no values");
    if (std::any_of(p.begin(), p.end(), [](double x) { return !(x >= 0.0); })) {
      throw InvalidInput("product space: negative probability");
    }
    if (std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) > 1e-12) {
      throw InvalidInput("product space: probabilities must sum to 1");
    }
    std::vector<double> cdf(p.size());
    std::partial_sum(p.begin(), p.end(), cdf.begin());
    cdf.back() = 1.0;
    cdf_.push_back(std::move(cdf));
  }
}

ProductSpace ProductSpace::bernoulli(std::span<const double> p) {
  std::vector<std::vector<double>> probs;
  for (double x : p) probs.push_back({1.0 - x, x});
  return ProductSpace(std::move(probs));
}

ProductSpace ProductSpace::uniform(int variables, int values) {
  return ProductSpace(std::vector<std::vector<double>>(
      static_cast<std::size_t>(variables), std::vector<double>(static_cast<std::size_t>(values), 1.0 / values)));
}

double ProductSpace::log_states() const {
  double total = 0;
  for (const auto& p : probs_) total += std::log(static_cast<double>(p.size()));
  return total;
}

std::vector<int> ProductSpace::sample(Rng& rng) const {
  std::vector<int> out(probs_.size());
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double u = uniform01(rng);
    const auto& cdf = cdf_[i];
    out[i] = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    out[i] = std::min(out[i], static_cast<int>(cdf.size()) - 1);
  }
  return out;
}

double ProductSpace::probability(std::span<const int> assignment) const {
  double p = 1.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) p *= probs_[i][static_cast<std::size_t>(assignment[i])];
  return p;
}

bool supports_intersect(std::span<const int> x, std::span<const int> y) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) return true;
    if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

EventSystem::EventSystem(std::vector<Event> events) : events_(std::move(events)) {
  for (auto& e : events_) {
    std::sort(e.support.begin(), e.support.end());
    e.support.erase(std::unique(e.support.begin(), e.support.end()), e.support.end());
  }
  adjacency_.resize(events_.size());
  for (std::size_t j = 0; j < events_.size(); ++j) {
    for (std::size_t k = j + 1; k < events_.size(); ++k) {
      if (supports_intersect(events_[j].support, events_[k].support)) {
        adjacency_[j].push_back(static_cast<int>(k));
        adjacency_[k].push_back(static_cast<int>(j));
      }
    }
  }
  for (const auto& nb : adjacency_) max_degree_ = std::max(max_degree_, static_cast<int>(nb.size()));
}

bool EventSystem::any_holds(std::span<const int> assignment) const {
  return std::any_of(events_.begin(), events_.end(), [&](const Event& e) { return e.holds(assignment); });
}

int EventSystem::overlap_count(std::span<const int> support) const {
  std::vector<int> sorted(support.begin(), support.end());
  std::sort(sorted.begin(), sorted.end());
  return static_cast<int>(std::count_if(events_.begin(), events_.end(),
                                        [&](const Event& e) { return supports_intersect(e.support, sorted); }));
}

double chernoff_upper(long m, double p, double delta) {
  if (m < 1 || !(p > 0.0 && p < 1.0) || !(delta >= 0.0)) throw InvalidInput("chernoff_upper: bad arguments");
  return std::exp(-delta * delta * p * static_cast<double>(m) / (2.0 + delta));
}

double chernoff_lower(long m, double p, double delta) {
  if (m < 1 || !(p > 0.0 && p < 1.0) || !(delta >= 0.0 && delta <= 1.0)) {
    throw InvalidInput("chernoff_lower: bad arguments");
  }
  return std::exp(-delta * delta * p * static_cast<double>(m) / 2.0);
}

RejectionResult rejection_sample(const ProductSpace& space, const EventSystem& sys, Rng& rng, long max_attempts) {
  for (long attempt = 1; attempt <= max_attempts; ++attempt) {
    auto x = space.sample(rng);
    if (!sys.any_holds(x)) return {std::move(x), attempt};
  }
  throw BudgetExhausted("rejection_sample: no acceptable draw within budget", max_attempts);
}

double lll_comparison_bound(double product_prob, double event_bound, long overlap) {
  if (!(product_prob >= 0.0 && product_prob <= 1.0) || event_bound < 0.0 || overlap < 0) {
    throw InvalidInput("lll_comparison_bound: bad arguments");
  }
  if (product_prob == 0.0) return 0.0;
  const double log_bound = std::log(product_prob) + 6.0 * event_bound * static_cast<double>(overlap);
  return log_bound >= 0.0 ? 1.0 : std::exp(log_bound);
}

LllReport verify_lll_comparison(const ProductSpace& space, const EventSystem& sys, const Event& query) {
  if (space.log_states() > 20.0 * std::log(2.0) + 1e-9) {
    throw InvalidInput("verify_lll_comparison: more than 2^20 states");
  }
  const std::size_t vars = space.size();
  std::vector<double> event_prob(sys.size(), 0.0);
  double p_query = 0.0;
  double p_good = 0.0;
  double p_query_good = 0.0;

  // Odometer over all joint states.
  std::vector<int> x(vars, 0);
  while (true) {
    const double w = space.probability(x);
    bool bad = false;
    for (std::size_t j = 0; j < sys.size(); ++j) {
      if (sys.events()[j].holds(x)) {
        event_prob[j] += w;
        bad = true;
      }
    }
    const bool q = query.holds(x);
    if (q) p_query += w;
    if (!bad) {
      p_good += w;
      if (q) p_query_good += w;
    }
    std::size_t i = 0;
    for (; i < vars; ++i) {
      if (++x[i] < space.arity(i)) break;
      x[i] = 0;
    }
    if (i == vars) break;
  }
  if (p_good <= 0.0) throw DegenerateInstance("verify_lll_comparison: conditioning event has probability 0");

  LllReport r{};
  r.conditional_prob = p_query_good / p_good;
  r.product_prob = p_query;
  r.event_bound = event_prob.empty() ? 0.0 : *std::max_element(event_prob.begin(), event_prob.end());
  r.max_degree = sys.max_degree();
  r.overlap = sys.overlap_count(query.support);
  r.hypothesis = 4.0 * r.event_bound * r.max_degree <= 1.0;
  r.bound = lll_comparison_bound(std::min(1.0, r.product_prob), r.event_bound, r.overlap);
  // Floating sums can overshoot an exact equality (e.g. N = 0) by an ulp or two.
  r.holds = r.conditional_prob <= r.bound * (1.0 + 1e-12) + 1e-15;
  return r;
}

namespace {

struct PatternEvent {
  std::vector<int> support;
  std::vector<int> pattern;
};

PatternEvent random_pattern(Rng& rng, int vars) {
  const int size = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::min(3, vars))));
  std::vector<int> all(static_cast<std::size_t>(vars));
  std::iota(all.begin(), all.end(), 0);
  shuffle(all.begin(), all.end(), rng);
  PatternEvent e;
  e.support.assign(all.begin(), all.begin() + size);
  std::sort(e.support.begin(), e.support.end());
  for (int i = 0; i < size; ++i) e.pattern.push_back(static_cast<int>(uniform_below(rng, 2)));
  return e;
}

Event as_event(const PatternEvent& pe) {
  return Event{[pe](std::span<const int> x) {
                 for (std::size_t i = 0; i < pe.support.size(); ++i) {
                   if (x[static_cast<std::size_t>(pe.support[i])] != pe.pattern[i]) return false;
                 }
                 return true;
               },
               pe.support};
}

}  // namespace

LllInstance random_lll_instance(std::uint64_t seed, int max_vars) {
  if (max_vars < 2) throw InvalidInput("random_lll_instance: need max_vars >= 2");
  Rng rng(seed);
  const int vars = 2 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_vars - 1)));
  std::vector<double> p1(static_cast<std::size_t>(vars));
  for (double& p : p1) p = 0.05 + 0.45 * uniform01(rng);
  ProductSpace space = ProductSpace::bernoulli(p1);

  const int count = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(vars)));
  std::vector<PatternEvent> bad;
  for (int j = 0; j < count; ++j) bad.push_back(random_pattern(rng, vars));
  const auto prob = [&](const PatternEvent& e) {
    double p = 1.0;
    for (std::size_t i = 0; i < e.support.size(); ++i) {
      p *= space.probs(static_cast<std::size_t>(e.support[i]))[static_cast<std::size_t>(e.pattern[i])];
    }
    return p;
  };
  while (true) {
    std::vector<Event> events;
    for (const auto& e : bad) events.push_back(as_event(e));
    EventSystem sys(std::move(events));
    double p = 0.0;
    for (const auto& e : bad) p = std::max(p, prob(e));
    if (4.0 * p * sys.max_degree() <= 1.0) {
      return LllInstance{std::move(space), std::move(sys), as_event(random_pattern(rng, vars))};
    }
    const auto worst = std::max_element(bad.begin(), bad.end(),
                                        [&](const PatternEvent& x, const PatternEvent& y) { return prob(x) < prob(y); });
    bad.erase(worst);
  }
}

}  // namespace spreadlab
