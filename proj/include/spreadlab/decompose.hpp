#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spreadlab/graph.hpp"
#include "spreadlab/prob.hpp"
#include "spreadlab/random.hpp"

namespace spreadlab {

enum class Profile : std::uint8_t { Paper, Desk };

std::string to_string(Profile p);
Profile parse_profile(const std::string& s);

/// Which exponent the (E3) bound uses: exp(1 + q_r + δ_{r-1}) or exp(1 + 10 q_r + δ_{r-1}).
enum class E3Exponent : std::uint8_t { Definition, Proof };

/// Multipliers in the admissibility and niceness bounds.
struct SlackConstants {
  double c_R = 9.0;       // degree window multiplier in (R1)/(R2)
  double c_d = 1e5;       // completion padding (paper profile only)
  double c_E1 = 0.9;      // lower bound factor in (E1)
  double c_E2 = 0.5;      // upper bound factor in (E2)
  double c_E4 = 4.0;      // upper bound factor in (E4)
  double kappa = 1.0 / 3.0;
  double delta_multiplier = 1024.0;  // δ_r = multiplier · S · Σ_{r' <= r} q_{r'}
  E3Exponent e3 = E3Exponent::Definition;

  static SlackConstants paper();
  static SlackConstants desk();
  /// Every check passes for any labeling.
  static SlackConstants permissive();
};

class ParametersTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters of one recursion round.
///
/// D_r = D_0 / S^r and δ_r = multiplier · S · (q_0 + ... + q_r) with δ_{-1} = 0.
/// The paper profile uses q_r = D_r^{-1/8}. The desk profile defaults to
/// q_r = 1 (every slice edge is in the reservoir), because with D_r^{-1/8} the
/// completion window max d_{K_i} <= d <= min d_{H_i} is empty with high
/// probability once D_r drops below about 20 on n = 64; scheduled_boost
/// restores D_r^{-1/8}, and q_override fixes any other value.
struct ParamSchedule {
  Profile profile = Profile::Desk;
  double epsilon = 0.25;
  int S = 2;
  double N0 = 1.0;
  int r = 0;
  double D0 = 1.0;
  double D_r = 1.0;
  double q_r = 1.0;
  double delta_r = 0.0;
  double delta_prev = 0.0;  // δ_{r-1}
  std::optional<double> q_override;
  bool scheduled_boost = false;
  SlackConstants slack;
  double excellence_threshold = 0.9;  // desk θ; the asymptotic value 1 - n^{-50} depends on n

  /// c_R · sqrt(log D_G · D_G / S).
  double degree_window(double degree) const;
  /// Same constants and overrides, re-derived for another round.
  ParamSchedule at_round(int round) const;
  double excellence_threshold_for(int n) const;
};

struct ScheduleOptions {
  std::optional<SlackConstants> slack;  // defaults follow the profile
  std::optional<double> q_override;
  bool scheduled_boost = false;  // desk profile: q_r = D_r^{-1/8} instead of 1
  double N0 = 1.0;
  std::optional<double> excellence_threshold;
};

/// Throws ParametersTooSmall in the desk profile when q_r · D_r / S < 1, and
/// InvalidInput on D0 < 1, S < 1 or r < 0.
ParamSchedule schedule(double D0, double epsilon, int S, int r, Profile profile, const ScheduleOptions& opts = {});

// ---------------------------------------------------------------------------

/// Random labels for the edges of a subgraph, aligned with its member order:
/// pi[k] is the slice (0-based) of members()[k] and xi[k] its boost bit.
/// `remainder` is the slice that absorbs the leftover edges during completion.
struct EdgeLabeling {
  std::vector<int> pi;
  std::vector<std::uint8_t> xi;
  int remainder = 0;
  std::uint64_t seed = 0;
  long attempts = 1;  // draws used by the conditioned sampler
};

/// Unconditioned product measure: pi uniform on [S], xi ~ Bernoulli(q_r), and
/// the remainder slice uniform on [S], all independent.
EdgeLabeling sample_labeling(const EdgeSubset& g, const ParamSchedule& sched, std::uint64_t seed);

/// Draw from the product measure conditioned on (R1) and (R2) at every vertex,
/// by rejection. Throws BudgetExhausted when max_attempts draws are rejected.
EdgeLabeling condition_labeling(const EdgeSubset& g, const ParamSchedule& sched, std::uint64_t seed,
                                long max_attempts = 1'000'000);

/// True iff every vertex satisfies (R1) and (R2) for every slice.
bool degree_windows_hold(const EdgeSubset& g, const EdgeLabeling& lab, const ParamSchedule& sched);

struct Slices {
  std::vector<EdgeSubset> h;       // H_i
  std::vector<EdgeSubset> h_plus;  // H_i^+
  EdgeSubset h_plus_all;           // H^+
};

Slices slices(const EdgeSubset& g, const EdgeLabeling& lab, int S);

// ---------------------------------------------------------------------------

enum class CheckMode : std::uint8_t { Auto, Exhaustive, Sampled, SizeFormula };

std::string to_string(CheckMode m);

enum class Property : std::uint8_t { R1, R2, E1, E2, E3, E4, N1, N2, EdgeLowerBound };

std::string to_string(Property p);

struct Witness {
  int slice = -1;       // -1 when the property is not per slice
  Side side = Side::A;  // side of the vertex (R1/R2) or of the first set
  std::vector<int> first;
  std::vector<int> second;
  double lhs = 0;
  double rhs = 0;
};

struct PropertyVerdict {
  Property property;
  Side orientation;  // side playing the role of A' (or of v for R1/R2)
  bool holds = true;
  long checked = 0;
  std::optional<Witness> witness;
};

struct AdmissibilityReport {
  CheckMode mode = CheckMode::Exhaustive;
  long probes = 0;
  std::vector<PropertyVerdict> verdicts;

  bool admissible() const;
  bool holds(Property p) const;
};

struct CheckOptions {
  CheckMode mode = CheckMode::Auto;
  int n_exact = 10;
  long probe_budget = 64;
  std::uint64_t seed = 0;
};

/// Checks (R1), (R2) exactly and (E1)–(E4) in both orientations. In exhaustive
/// mode every first set A' is enumerated and the worst B' of each admissible
/// size is found by sorting, so verdicts are exact. Sampled mode draws
/// probe_budget uniform qualifying pairs per property, orientation and slice.
AdmissibilityReport check_admissible(const EdgeSubset& g, const EdgeLabeling& lab, const ParamSchedule& sched,
                                     const CheckOptions& opts = {});

struct NicenessReport {
  CheckMode mode = CheckMode::Exhaustive;
  std::optional<int> degree;
  double lower = 0;  // e^{-δ_{r-1}} D_r
  double upper = 0;  // e^{δ_{r-1}} D_r
  std::vector<PropertyVerdict> verdicts;  // N1, N2 (both orientations), edge lower bound diagnostic

  bool nice() const;
  bool holds(Property p) const;
};

/// (N1) exactly; (N2) over its family in both orientations. Auto mode uses the
/// size formula on complete hosts, exhaustive enumeration for n <= n_exact, and
/// sampling otherwise. Also reports |E_G(A',B')| >= D_G |A'| / 100 over the
/// (E1) family as a diagnostic verdict that does not affect nice().
NicenessReport check_nice(const EdgeSubset& g, const ParamSchedule& sched, const CheckOptions& opts = {});

// ---------------------------------------------------------------------------

class CompletionInfeasible : public std::runtime_error {
 public:
  CompletionInfeasible(const std::string& what, int slice) : std::runtime_error(what), slice_(slice) {}
  int slice() const { return slice_; }

 private:
  int slice_;
};

/// One round of regular decomposition. For each slice i other than the
/// remainder, R_i is a regular graph with H_i \ H_i^+ ⊆ R_i ⊆ H_i; the remainder
/// slice receives everything else, so H_rem ⊆ R_rem ⊆ H_rem ∪ H^+.
struct RoundParts {
  std::vector<EdgeSubset> parts;  // indexed by slice
  std::vector<int> degrees;
  int remainder = 0;
};

/// Completion degree per slice: the desk profile takes the feasible d in
/// [max_v d_{K_i}(v), min_v d_{H_i}(v)] closest to D_G/S (ties to the smaller);
/// the paper profile uses d = ceil(avg d_{K_i} + c_d sqrt((D_G/S) log D_G)).
/// Throws CompletionInfeasible naming the failing slice.
RoundParts decompose_once(const EdgeSubset& g, const EdgeLabeling& lab, const ParamSchedule& sched);

struct PartLineage {
  int parent = -1;  // index in the previous round, -1 for the root part
  int slice = -1;
  int degree = 0;
};

/// Per-parent record of one round, kept when RecurseOptions::keep_history is set.
struct RoundRecord {
  int parent = 0;
  EdgeLabeling labeling;
  Slices slices;
  RoundParts parts;
};

struct Decomposition {
  int n = 0;
  double D0 = 0;
  int S = 1;
  int r = 0;
  ParamSchedule schedule;
  std::vector<EdgeSubset> parts;
  std::vector<PartLineage> lineage;
  long retries = 0;  // labelings discarded for failed admissibility or completion
  std::vector<std::vector<RoundRecord>> history;
};

struct RecurseOptions {
  long max_attempts = 1'000'000;  // conditioning draws per labeling
  int retry_cap = 200;            // labelings per part before giving up
  bool require_admissible = true;
  CheckOptions check{CheckMode::Auto, 10, 32, 0};
  bool keep_history = false;
};

/// Error from recurse carrying where it happened.
class RecursionFailure : public std::runtime_error {
 public:
  RecursionFailure(const std::string& what, int round, int part) : std::runtime_error(what), round_(round), part_(part) {}
  int round() const { return round_; }
  int part() const { return part_; }

 private:
  int round_;
  int part_;
};

/// S^{r_target} regular parts partitioning E(G0). Round r draws, for every part
/// independently, a conditioned labeling that is retried until it is
/// admissible and completable, then applies decompose_once. Seeds are derived
/// from (seed, round, part, attempt) so results do not depend on part order.
Decomposition recurse(const GraphPtr& g0, int r_target, const ParamSchedule& root, std::uint64_t seed,
                      const RecurseOptions& opts = {});

struct ExcellenceEstimate {
  long trials = 0;
  long passes = 0;
  double pass_rate = 0;
  double ci_low = 0;
  double ci_high = 0;
  double threshold = 0;
  bool meets_threshold = false;
};

/// Monte Carlo estimate of P_G[admissible] with a 95% Wilson interval. A trial
/// whose conditioning exhausts its budget counts as a failure.
ExcellenceEstimate certify_excellent(const EdgeSubset& g, const ParamSchedule& sched, long trials, std::uint64_t seed,
                                     const CheckOptions& check = {}, long max_attempts = 10'000);

// ---------------------------------------------------------------------------

/// "n D0 S r", one "part parent slice degree" line per part, then one line of
/// edge ids per part.
void write_decomposition(std::ostream& out, const Decomposition& d);
void write_report(std::ostream& out, const AdmissibilityReport& r);
void write_report(std::ostream& out, const NicenessReport& r);

}  // namespace spreadlab
