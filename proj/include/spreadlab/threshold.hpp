#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spreadlab/exact_cover.hpp"
#include "spreadlab/graph.hpp"

namespace spreadlab {

/// Monotone properties whose thresholds the harness estimates. NonEmpty ("the
/// random tripartite system has at least one triple") has the closed-form
/// threshold 1 - 2^{-1/n³} and serves as a calibration target.
enum class ThresholdProperty : std::uint8_t { Latin, Sts, ListBipartite, ListComplete, NonEmpty };

std::string to_string(ThresholdProperty p);
ThresholdProperty parse_property(const std::string& s);

struct ThresholdExperiment {
  ThresholdProperty property = ThresholdProperty::Latin;
  int n = 4;  // host size; list-complete colors K_{2n}
  long trials = 100;
  std::uint64_t seed = 0;
  long long node_budget = kDefaultNodeBudget;
  int palette = 0;  // list-complete only; 0 means 2n - 1

  /// Palette of the list properties: n for K_{n,n}, palette or 2n - 1 for K_{2n}.
  int list_palette() const;
  /// STS on n points only exists for n = 1, 3 mod 6.
  bool structurally_absent() const;
};

class InvalidRange : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct SuccessEstimate {
  double p = 0;  // density, or k / palette for list properties
  int k = 0;     // list size (list properties only)
  long trials = 0;
  long successes = 0;
  long unknowns = 0;  // budget-exhausted trials, excluded from the fraction
  double fraction = 0;
  double std_error = 0;
  double ci_low = 0;  // 95% Wilson interval
  double ci_high = 0;
  bool unreliable = false;  // more than 10% unknowns
};

/// Fraction of `trials` sampled instances that contain the target structure.
/// For list properties p is mapped to k = round(p · palette).
SuccessEstimate success_prob(const ThresholdExperiment& exp, double p);
/// List properties with an explicit list size.
SuccessEstimate success_prob_k(const ThresholdExperiment& exp, int k);

struct BisectionResult {
  double p_half = 0;
  double lo = 0;
  double hi = 0;
  std::vector<SuccessEstimate> probes;  // in evaluation order
};

/// Bisection on [lo, hi] with exp.trials trials per probe until hi - lo <= tol.
/// Throws InvalidRange unless the estimated success fraction is <= 1/2 at lo
/// and >= 1/2 at hi. A degenerate range [x, x] returns x when it succeeds.
BisectionResult bisect_threshold(const ThresholdExperiment& exp, double lo, double hi, double tol);

struct ScalingFit {
  std::map<int, double> c;  // c_n = p_half(n) · n / ln n
  double min = 0;
  double max = 0;
  double ratio = 0;  // max / min
};

/// Requires at least three sizes, all > 1.
ScalingFit scaling_fit(const std::map<int, double>& p_half);

/// property,n,p,trials,successes,unknowns,fraction,stderr
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ThresholdExperiment& exp, const SuccessEstimate& e);

}  // namespace spreadlab
