#include "spreadlab/threshold.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include "spreadlab/designs.hpp"
#include "spreadlab/random.hpp"

namespace spreadlab {

std::string to_string(ThresholdProperty p) {
  switch (p) {
    case ThresholdProperty::Latin: return "latin";
    case ThresholdProperty::Sts: return "sts";
    case ThresholdProperty::ListBipartite: return "list-bipartite";
    case ThresholdProperty::ListComplete: return "list-complete";
    case ThresholdProperty::NonEmpty: return "nonempty";
  }
  return "?";
}

ThresholdProperty parse_property(const std::string& s) {
  for (auto p : {ThresholdProperty::Latin, ThresholdProperty::Sts, ThresholdProperty::ListBipartite,
                 ThresholdProperty::ListComplete, ThresholdProperty::NonEmpty}) {
    if (to_string(p) == s) return p;
  }
  throw InvalidInput("unknown property '" + s + "'");
}

int ThresholdExperiment::list_palette() const {
  if (property == ThresholdProperty::ListBipartite) return n;
  return palette > 0 ? palette : 2 * n - 1;
}

bool ThresholdExperiment::structurally_absent() const {
  return property == ThresholdProperty::Sts && n % 6 != 1 && n % 6 != 3;
}

namespace {

bool is_list(ThresholdProperty p) {
  return p == ThresholdProperty::ListBipartite || p == ThresholdProperty::ListComplete;
}

void validate(const ThresholdExperiment& exp) {
  if (exp.trials < 1) throw InvalidInput("threshold: trials must be >= 1");
  if (exp.n < 1) throw InvalidInput("threshold: n must be >= 1");
  if (exp.node_budget < 1) throw InvalidInput("threshold: node budget must be >= 1");
}

/// Outcome of one trial: 1 contained, 0 not contained, -1 unknown.
int run_trial(const ThresholdExperiment& exp, double p, int k, std::uint64_t seed) {
  const auto verdict = [](SolveStatus s) { return s == SolveStatus::Found ? 1 : s == SolveStatus::Absent ? 0 : -1; };
  switch (exp.property) {
    case ThresholdProperty::Latin:
      return verdict(latin_square_exists(sample_tripartite(exp.n, p, seed), exp.node_budget).status);
    case ThresholdProperty::Sts:
      return verdict(sts_exists(sample_3graph(exp.n, p, seed), exp.node_budget).status);
    case ThresholdProperty::ListBipartite:
      return verdict(
          list_coloring_bipartite(sample_lists(HostKind::CompleteBipartite, exp.n, k, exp.n, seed), exp.node_budget)
              .status);
    case ThresholdProperty::ListComplete:
      return verdict(list_coloring_complete(sample_lists(HostKind::Complete, 2 * exp.n, k, exp.list_palette(), seed),
                                            exp.node_budget)
                         .status);
    case ThresholdProperty::NonEmpty:
      return sample_tripartite(exp.n, p, seed).size() > 0 ? 1 : 0;
  }
  return -1;
}

SuccessEstimate estimate(const ThresholdExperiment& exp, double p, int k) {
  validate(exp);
  SuccessEstimate e;
  e.p = p;
  e.k = k;
  e.trials = exp.trials;
  // Trial seeds depend on the probe point only, never on evaluation order.
  const std::uint64_t probe_key = is_list(exp.property) ? static_cast<std::uint64_t>(k) : std::bit_cast<std::uint64_t>(p);
  for (long t = 0; t < exp.trials; ++t) {
    const std::uint64_t seed = derive_seed(exp.seed, {static_cast<std::uint64_t>(exp.property),
                                                      static_cast<std::uint64_t>(exp.n), probe_key,
                                                      static_cast<std::uint64_t>(t)});
    const int r = run_trial(exp, p, k, seed);
    if (r < 0) {
      ++e.unknowns;
    } else {
      e.successes += r;
    }
  }
  const long decided = e.trials - e.unknowns;
  e.unreliable = 10 * e.unknowns > e.trials;
  if (decided > 0) {
    const double m = static_cast<double>(decided);
    e.fraction = static_cast<double>(e.successes) / m;
    e.std_error = std::sqrt(e.fraction * (1.0 - e.fraction) / m);
    const double z = 1.959963984540054;
    const double denom = 1.0 + z * z / m;
    const double centre = (e.fraction + z * z / (2.0 * m)) / denom;
    const double half = z * std::sqrt(e.fraction * (1.0 - e.fraction) / m + z * z / (4.0 * m * m)) / denom;
    e.ci_low = std::max(0.0, centre - half);
    e.ci_high = std::min(1.0, centre + half);
  } else {
    e.ci_high = 1.0;
  }
  return e;
}

}  // namespace

SuccessEstimate success_prob(const ThresholdExperiment& exp, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("success_prob: p must lie in [0, 1]");
  if (is_list(exp.property)) {
    const int palette = exp.list_palette();
    auto e = estimate(exp, p, static_cast<int>(std::lround(p * palette)));
    e.p = p;
    return e;
  }
  return estimate(exp, p, 0);
}

SuccessEstimate success_prob_k(const ThresholdExperiment& exp, int k) {
  if (!is_list(exp.property)) throw InvalidInput("success_prob_k: only list properties take k");
  const int palette = exp.list_palette();
  if (k < 0 || k > palette) throw InvalidInput("success_prob_k: need 0 <= k <= palette");
  return estimate(exp, static_cast<double>(k) / palette, k);
}

BisectionResult bisect_threshold(const ThresholdExperiment& exp, double lo, double hi, double tol) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) throw InvalidRange("bisect_threshold: need 0 <= lo <= hi <= 1");
  if (!(tol > 0.0)) throw InvalidInput("bisect_threshold: tolerance must be positive");
  BisectionResult r;
  r.lo = lo;
  r.hi = hi;
  const auto probe = [&](double p) {
    r.probes.push_back(success_prob(exp, p));
    return r.probes.back().fraction;
  };
  if (lo == hi) {
    if (probe(lo) < 0.5) throw InvalidRange("bisect_threshold: property fails on the degenerate range");
    r.p_half = lo;
    return r;
  }
  if (probe(lo) > 0.5) throw InvalidRange("bisect_threshold: success fraction above 1/2 at the lower end");
  if (probe(hi) < 0.5) throw InvalidRange("bisect_threshold: success fraction below 1/2 at the upper end");
  while (r.hi - r.lo > tol) {
    const double mid = 0.5 * (r.lo + r.hi);
    if (probe(mid) >= 0.5) {
      r.hi = mid;
    } else {
      r.lo = mid;
    }
  }
  r.p_half = 0.5 * (r.lo + r.hi);
  return r;
}

ScalingFit scaling_fit(const std::map<int, double>& p_half) {
  if (p_half.size() < 3) throw InvalidInput("scaling_fit: need at least three sizes");
  ScalingFit fit;
  for (const auto& [n, p] : p_half) {
    if (n < 2) throw InvalidInput("scaling_fit: sizes must exceed 1");
    fit.c[n] = p * n / std::log(static_cast<double>(n));
  }
  const auto [lo, hi] = std::minmax_element(fit.c.begin(), fit.c.end(),
                                            [](const auto& x, const auto& y) { return x.second < y.second; });
  fit.min = lo->second;
  fit.max = hi->second;
  fit.ratio = fit.max / fit.min;
  return fit;
}

void write_csv_header(std::ostream& out) { out << "property,n,p,trials,successes,unknowns,fraction,stderr\n"; }

void write_csv_row(std::ostream& out, const ThresholdExperiment& exp, const SuccessEstimate& e) {
  out << to_string(exp.property) << ',' << exp.n << ',' << e.p << ',' << e.trials << ',' << e.successes << ','
      << e.unknowns << ',' << e.fraction << ',' << e.std_error << '\n';
}

}  // namespace spreadlab
