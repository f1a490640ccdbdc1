#include "spreadlab/decompose.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>

#include "spreadlab/degree_flow.hpp"

namespace spreadlab {

std::string to_string(Profile p) { return p == Profile::Paper ? "paper" : "desk"; }

Profile parse_profile(const std::string& s) {
  if (s == "paper") return Profile::Paper;
  if (s == "desk") return Profile::Desk;
  throw InvalidInput("unknown profile '" + s + "'");
}

SlackConstants SlackConstants::paper() { return {}; }

SlackConstants SlackConstants::desk() {
  SlackConstants c;
  c.c_R = 2.0;
  c.c_d = 1.0;
  c.c_E1 = 0.5;
  c.c_E2 = 2.0;
  c.c_E4 = 4.0;
  c.delta_multiplier = 1.0;
  return c;
}

SlackConstants SlackConstants::permissive() {
  SlackConstants c = desk();
  c.c_R = 1e9;
  c.c_E1 = 0.0;
  c.c_E2 = 1e9;
  c.c_E4 = 1e9;
  return c;
}

double ParamSchedule::degree_window(double degree) const {
  if (degree <= 1.0) return 0.0;
  return slack.c_R * std::sqrt(std::log(degree) * degree / S);
}

ParamSchedule ParamSchedule::at_round(int round) const {
  ScheduleOptions opts;
  opts.slack = slack;
  opts.q_override = q_override;
  opts.scheduled_boost = scheduled_boost;
  opts.N0 = N0;
  opts.excellence_threshold = excellence_threshold;
  return schedule(D0, epsilon, S, round, profile, opts);
}

double ParamSchedule::excellence_threshold_for(int n) const {
  if (profile == Profile::Paper) return 1.0 - std::pow(static_cast<double>(n), -50.0);
  return excellence_threshold;
}

ParamSchedule schedule(double D0, double epsilon, int S, int r, Profile profile, const ScheduleOptions& opts) {
  if (!(D0 >= 1.0) || S < 1 || r < 0) throw InvalidInput("schedule: need D0 >= 1, S >= 1, r >= 0");
  if (opts.q_override && profile == Profile::Paper) {
    throw InvalidInput("schedule: q_r override is only available in the desk profile");
  }
  ParamSchedule s;
  s.profile = profile;
  s.epsilon = epsilon;
  s.S = S;
  s.N0 = opts.N0;
  s.r = r;
  s.D0 = D0;
  s.q_override = opts.q_override;
  s.scheduled_boost = opts.scheduled_boost;
  s.slack = opts.slack.value_or(profile == Profile::Paper ? SlackConstants::paper() : SlackConstants::desk());
  if (opts.excellence_threshold) s.excellence_threshold = *opts.excellence_threshold;

  const auto q_at = [&](int round) {
    if (opts.q_override) return *opts.q_override;
    if (profile == Profile::Desk && !opts.scheduled_boost) return 1.0;
    return std::pow(D0 / std::pow(static_cast<double>(S), round), -1.0 / 8.0);
  };
  double q_sum = 0.0;
  for (int k = 0; k < r; ++k) q_sum += q_at(k);
  s.delta_prev = s.slack.delta_multiplier * S * q_sum;
  s.D_r = D0 / std::pow(static_cast<double>(S), r);
  s.q_r = q_at(r);
  s.delta_r = s.slack.delta_multiplier * S * (q_sum + s.q_r);
  if (!(s.q_r > 0.0 && s.q_r <= 1.0)) throw InvalidInput("schedule: q_r must lie in (0, 1]");
  if (profile == Profile::Desk && s.q_r * s.D_r / S < 1.0) {
    throw ParametersTooSmall("schedule: desk profile needs q_r * D_r / S >= 1");
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

int regular_degree(const EdgeSubset& g) {
  const auto d = is_regular(g);
  if (!d) throw InvalidInput("graph must be regular");
  return *d;
}

void draw_labels(Rng& rng, std::size_t m, int S, double q, EdgeLabeling& lab) {
  lab.remainder = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(S)));
  lab.pi.resize(m);
  lab.xi.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    lab.pi[k] = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(S)));
    lab.xi[k] = bernoulli(rng, q) ? 1 : 0;
  }
}

/// Per-vertex slice degrees, laid out [side][vertex * S + slice].
struct SliceDegrees {
  std::array<std::vector<int>, 2> plain;
  std::array<std::vector<int>, 2> boosted;
};

SliceDegrees slice_degrees(const EdgeSubset& g, const EdgeLabeling& lab, int S) {
  const auto cells = static_cast<std::size_t>(g.n()) * static_cast<std::size_t>(S);
  SliceDegrees d;
  for (int s = 0; s < 2; ++s) {
    d.plain[static_cast<std::size_t>(s)].assign(cells, 0);
    d.boosted[static_cast<std::size_t>(s)].assign(cells, 0);
  }
  const auto members = g.members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Edge& e = g.parent().edge(members[k]);
    const auto ia = static_cast<std::size_t>(e.a) * static_cast<std::size_t>(S) + static_cast<std::size_t>(lab.pi[k]);
    const auto ib = static_cast<std::size_t>(e.b) * static_cast<std::size_t>(S) + static_cast<std::size_t>(lab.pi[k]);
    ++d.plain[0][ia];
    ++d.plain[1][ib];
    if (lab.xi[k]) {
      ++d.boosted[0][ia];
      ++d.boosted[1][ib];
    }
  }
  return d;
}

struct WindowViolation {
  Property property;
  Side side;
  int vertex;
  int slice;
  double deviation;
};

std::vector<WindowViolation> window_violations(const EdgeSubset& g, const EdgeLabeling& lab,
                                               const ParamSchedule& sched, int dg, bool first_only) {
  const int S = sched.S;
  const double window = sched.degree_window(dg);
  const double target = static_cast<double>(dg) / S;
  const double boosted_target = sched.q_r * target;
  const auto deg = slice_degrees(g, lab, S);
  std::vector<WindowViolation> out;
  for (int s = 0; s < 2; ++s) {
    for (int v = 0; v < g.n(); ++v) {
      for (int i = 0; i < S; ++i) {
        const auto cell = static_cast<std::size_t>(v) * static_cast<std::size_t>(S) + static_cast<std::size_t>(i);
        const double dev1 = std::abs(deg.plain[static_cast<std::size_t>(s)][cell] - target);
        const double dev2 = std::abs(deg.boosted[static_cast<std::size_t>(s)][cell] - boosted_target);
        if (dev1 > window + 1e-9) {
          out.push_back({Property::R1, static_cast<Side>(s), v, i, dev1});
          if (first_only) return out;
        }
        if (dev2 > window + 1e-9) {
          out.push_back({Property::R2, static_cast<Side>(s), v, i, dev2});
          if (first_only) return out;
        }
      }
    }
  }
  return out;
}

}  // namespace

EdgeLabeling sample_labeling(const EdgeSubset& g, const ParamSchedule& sched, std::uint64_t seed) {
  Rng rng(seed);
  EdgeLabeling lab;
  lab.seed = seed;
  draw_labels(rng, g.size(), sched.S, sched.q_r, lab);
  return lab;
}

bool degree_windows_hold(const EdgeSubset& g, const EdgeLabeling& lab, const ParamSchedule& sched) {
  return window_violations(g, lab, sched, regular_degree(g), true).empty();
}

EdgeLabeling condition_labeling(const EdgeSubset& g, const ParamSchedule& sched, std::uint64_t seed,
                                long max_attempts) {
  const int dg = regular_degree(g);
  Rng rng(seed);
  EdgeLabeling lab;
  lab.seed = seed;
  for (long attempt = 1; attempt <= max_attempts; ++attempt) {
    draw_labels(rng, g.size(), sched.S, sched.q_r, lab);
    if (window_violations(g, lab, sched, dg, true).empty()) {
      lab.attempts = attempt;
      return lab;
    }
  }
  throw BudgetExhausted("condition_labeling: degree windows never satisfied (acceptance rate below 1/" +
                            std::to_string(max_attempts) + ")",
                        max_attempts);
}

Slices slices(const EdgeSubset& g, const EdgeLabeling& lab, int S) {
  if (lab.pi.size() != g.size() || lab.xi.size() != g.size()) {
    throw InvalidInput("slices: labeling does not cover the graph");
  }
  std::vector<std::vector<EdgeId>> h(static_cast<std::size_t>(S));
  std::vector<std::vector<EdgeId>> hp(static_cast<std::size_t>(S));
  std::vector<EdgeId> all_plus;
  const auto members = g.members();
  for (std::size_t k = 0; k < members.size(); ++k) {
    const int i = lab.pi[k];
    if (i < 0 || i >= S) throw InvalidInput("slices: label outside [S]");
    h[static_cast<std::size_t>(i)].push_back(members[k]);
    if (lab.xi[k]) {
      hp[static_cast<std::size_t>(i)].push_back(members[k]);
      all_plus.push_back(members[k]);
    }
  }
  Slices out{{}, {}, EdgeSubset(g.parent_ptr(), std::move(all_plus))};
  for (int i = 0; i < S; ++i) {
    out.h.emplace_back(g.parent_ptr(), std::move(h[static_cast<std::size_t>(i)]));
    out.h_plus.emplace_back(g.parent_ptr(), std::move(hp[static_cast<std::size_t>(i)]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cut-family checks

std::string to_string(CheckMode m) {
  switch (m) {
    case CheckMode::Auto: return "auto";
    case CheckMode::Exhaustive: return "exhaustive";
    case CheckMode::Sampled: return "sampled";
    case CheckMode::SizeFormula: return "size-formula";
  }
  return "?";
}

std::string to_string(Property p) {
  switch (p) {
    case Property::R1: return "R1";
    case Property::R2: return "R2";
    case Property::E1: return "E1";
    case Property::E2: return "E2";
    case Property::E3: return "E3";
    case Property::E4: return "E4";
    case Property::N1: return "N1";
    case Property::N2: return "N2";
    case Property::EdgeLowerBound: return "edge-lower-bound";
  }
  return "?";
}

namespace {

/// round(1.01 a), ties up, in exact integer arithmetic.
int scaled_round(int a) { return (101 * a + 50) / 100; }

enum class Source : std::uint8_t { G, H, HPlus };

/// One cut property: for first set X (|X| = a) and second set Y (|Y| = b) on
/// the opposite side, compare value = |E_src(X, Y')| - lambda |E_G(X, Y')|
/// against bound(a, b), where Y' is Y or its complement.
struct CutProperty {
  Property property;
  Source source;
  bool lower;       // value >= bound required (else value <= bound)
  bool complement;  // Y' = other side minus Y
  double lambda;
  bool per_slice;
  std::function<bool(int, int)> qualifies;
  std::function<double(int, int)> bound;
};

struct CutContext {
  int n;
  int S;
  const AdjacencyBits* g;
  std::vector<const AdjacencyBits*> h;
  std::vector<const AdjacencyBits*> hp;

  const AdjacencyBits& source(Source s, int slice) const {
    if (s == Source::G) return *g;
    if (s == Source::H) return *h[static_cast<std::size_t>(slice)];
    return *hp[static_cast<std::size_t>(slice)];
  }
};

std::vector<std::pair<int, int>> qualifying_sizes(const CutProperty& p, int n) {
  std::vector<std::pair<int, int>> out;
  for (int a = 1; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      if (p.qualifies(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

bool violates(const CutProperty& p, double value, double bound) {
  const double tol = 1e-9 * std::max(1.0, std::abs(bound));
  return p.lower ? value < bound - tol : value > bound + tol;
}

VertexSet random_subset(int n, int size, Rng& rng) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  // Partial Fisher-Yates.
  for (int i = 0; i < size; ++i) {
    const auto j = static_cast<std::size_t>(i) + uniform_below(rng, static_cast<std::uint64_t>(n - i));
    std::swap(all[static_cast<std::size_t>(i)], all[j]);
  }
  VertexSet out(n);
  for (int i = 0; i < size; ++i) out.insert(all[static_cast<std::size_t>(i)]);
  return out;
}

/// Exact check over the whole family: enumerate X, pick the extreme Y' per size.
PropertyVerdict check_exhaustive(const CutProperty& p, Side side, const CutContext& ctx) {
  PropertyVerdict v{p.property, side, true, 0, std::nullopt};
  const int n = ctx.n;
  const auto sizes = qualifying_sizes(p, n);
  if (sizes.empty()) return v;
  std::vector<std::vector<int>> b_by_a(static_cast<std::size_t>(n) + 1);
  for (auto [a, b] : sizes) b_by_a[static_cast<std::size_t>(a)].push_back(b);

  const int slices = p.per_slice ? ctx.S : 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const int a = std::popcount(mask);
    const auto& bs = b_by_a[static_cast<std::size_t>(a)];
    if (bs.empty()) continue;
    VertexSet xs(n);
    for (int x = 0; x < n; ++x) {
      if ((mask >> x) & 1U) xs.insert(x);
    }
    std::vector<int> to_g;
    if (p.lambda != 0.0) to_g = ctx.g->counts_from(side, xs);
    for (int slice = 0; slice < slices; ++slice) {
      const auto counts = ctx.source(p.source, slice).counts_from(side, xs);
      std::vector<double> w(static_cast<std::size_t>(n));
      for (std::size_t y = 0; y < w.size(); ++y) {
        w[y] = counts[y] - (p.lambda != 0.0 ? p.lambda * to_g[y] : 0.0);
      }
      // Lower bounds are tightest on the smallest weights, upper bounds on the largest.
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
        return p.lower ? w[static_cast<std::size_t>(l)] < w[static_cast<std::size_t>(r)]
                       : w[static_cast<std::size_t>(l)] > w[static_cast<std::size_t>(r)];
      });
      std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
      for (std::size_t k = 0; k < order.size(); ++k) prefix[k + 1] = prefix[k] + w[static_cast<std::size_t>(order[k])];
      for (int b : bs) {
        ++v.checked;
        const int chosen = p.complement ? n - b : b;
        const double value = prefix[static_cast<std::size_t>(chosen)];
        const double bound = p.bound(a, b);
        if (!violates(p, value, bound)) continue;
        v.holds = false;
        Witness wit;
        wit.slice = p.per_slice ? slice : -1;
        wit.side = side;
        wit.first = xs.to_vector();
        VertexSet picked(n);
        for (int k = 0; k < chosen; ++k) picked.insert(order[static_cast<std::size_t>(k)]);
        wit.second = (p.complement ? picked.complement() : picked).to_vector();
        wit.lhs = value;
        wit.rhs = bound;
        v.witness = std::move(wit);
        return v;
      }
    }
  }
  return v;
}

PropertyVerdict check_sampled(const CutProperty& p, Side side, const CutContext& ctx, long budget, Rng& rng) {
  PropertyVerdict v{p.property, side, true, 0, std::nullopt};
  const int n = ctx.n;
  const auto sizes = qualifying_sizes(p, n);
  if (sizes.empty()) return v;
  const int slices = p.per_slice ? ctx.S : 1;
  for (long probe = 0; probe < budget; ++probe) {
    const auto [a, b] = sizes[uniform_below(rng, sizes.size())];
    const VertexSet xs = random_subset(n, a, rng);
    const VertexSet ys = random_subset(n, b, rng);
    const VertexSet target = p.complement ? ys.complement() : ys;
    const double g_count = p.lambda != 0.0 ? static_cast<double>(ctx.g->count_between(side, xs, target)) : 0.0;
    const double bound = p.bound(a, b);
    for (int slice = 0; slice < slices; ++slice) {
      ++v.checked;
      const double value =
          static_cast<double>(ctx.source(p.source, slice).count_between(side, xs, target)) - p.lambda * g_count;
      if (!violates(p, value, bound)) continue;
      v.holds = false;
      v.witness = Witness{p.per_slice ? slice : -1, side, xs.to_vector(), ys.to_vector(), value, bound};
      return v;
    }
  }
  return v;
}

/// Closed form for complete hosts: |E(X, Y')| = |X| |Y'|.
PropertyVerdict check_size_formula(const CutProperty& p, Side side, int n) {
  PropertyVerdict v{p.property, side, true, 0, std::nullopt};
  for (auto [a, b] : qualifying_sizes(p, n)) {
    ++v.checked;
    const double value = static_cast<double>(a) * (p.complement ? n - b : b) * (1.0 - p.lambda);
    const double bound = p.bound(a, b);
    if (violates(p, value, bound)) {
      v.holds = false;
      v.witness = Witness{-1, side, {a}, {b}, value, bound};
      return v;
    }
  }
  return v;
}

CheckMode resolve_mode(const CheckOptions& opts, int n) {
  if (opts.mode == CheckMode::Auto) return n <= opts.n_exact ? CheckMode::Exhaustive : CheckMode::Sampled;
  return opts.mode;
}

/// |B'| >= |A'| >= 4n/5, or 4n/5 >= |A'| >= n/S with n - |B'| < 1.01 |A'|.
bool e1_family(int n, int S, int a, int b) {
  const bool large = 5 * a >= 4 * n && b >= a;
  const bool middle = 5 * a <= 4 * n && a * S >= n && 100 * (n - b) < 101 * a;
  return large || middle;
}

}  // namespace

bool AdmissibilityReport::admissible() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const PropertyVerdict& v) { return v.holds; });
}

bool AdmissibilityReport::holds(Property p) const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [p](const PropertyVerdict& v) { return v.property != p || v.holds; });
}

AdmissibilityReport check_admissible(const EdgeSubset& g, const EdgeLabeling& lab, const ParamSchedule& sched,
                                     const CheckOptions& opts) {
  const int n = g.n();
  const int S = sched.S;
  const int dg = regular_degree(g);
  const double D = dg;
  const double q = sched.q_r;
  const auto& c = sched.slack;

  AdmissibilityReport report;
  report.mode = resolve_mode(opts, n);
  if (report.mode == CheckMode::SizeFormula) throw InvalidInput("check_admissible: size formula mode not applicable");

  // (R1), (R2): exact over all vertices and slices.
  const auto bad = window_violations(g, lab, sched, dg, false);
  for (Property prop : {Property::R1, Property::R2}) {
    for (Side side : {Side::A, Side::B}) {
      PropertyVerdict v{prop, side, true, static_cast<long>(n) * S, std::nullopt};
      for (const auto& w : bad) {
        if (w.property == prop && w.side == side) {
          v.holds = false;
          v.witness = Witness{w.slice, side, {w.vertex}, {}, w.deviation, sched.degree_window(dg)};
          break;
        }
      }
      report.verdicts.push_back(std::move(v));
    }
  }

  const double e3_q = c.e3 == E3Exponent::Definition ? q : 10.0 * q;
  const auto beta = [&](int b) { return std::max(c.kappa, 1.0 - static_cast<double>(b) / n); };
  const auto e3_family = [n, S](int a, int b) { return b >= a && a * S >= n && n - b == scaled_round(a); };

  const std::vector<CutProperty> props = {
      {Property::E1, Source::HPlus, true, false, c.c_E1 * q / S, true,
       [n, S](int a, int b) { return e1_family(n, S, a, b); }, [](int, int) { return 0.0; }},
      {Property::E2, Source::HPlus, false, false, 0.0, true,
       [n, S](int a, int b) { return a * S <= n && b == scaled_round(a) && b <= n; },
       [&](int a, int) { return c.c_E2 * D * q * a / S; }},
      {Property::E3, Source::H, false, true, 0.0, true, e3_family,
       [&](int a, int b) { return std::exp(1.0 + e3_q + sched.delta_prev) * D * a * beta(b) / S; }},
      {Property::E4, Source::HPlus, false, true, 0.0, true, e3_family,
       [&](int a, int b) { return c.c_E4 * D * a * beta(b) * q / S; }},
  };

  const auto sl = slices(g, lab, S);
  const AdjacencyBits ag = AdjacencyBits::of(g);
  std::vector<AdjacencyBits> ah;
  std::vector<AdjacencyBits> ahp;
  for (int i = 0; i < S; ++i) {
    ah.push_back(AdjacencyBits::of(sl.h[static_cast<std::size_t>(i)]));
    ahp.push_back(AdjacencyBits::of(sl.h_plus[static_cast<std::size_t>(i)]));
  }
  CutContext ctx{n, S, &ag, {}, {}};
  for (int i = 0; i < S; ++i) {
    ctx.h.push_back(&ah[static_cast<std::size_t>(i)]);
    ctx.hp.push_back(&ahp[static_cast<std::size_t>(i)]);
  }

  Rng rng(opts.seed);
  for (const auto& p : props) {
    for (Side side : {Side::A, Side::B}) {
      if (report.mode == CheckMode::Exhaustive) {
        report.verdicts.push_back(check_exhaustive(p, side, ctx));
      } else {
        report.verdicts.push_back(check_sampled(p, side, ctx, opts.probe_budget, rng));
        report.probes += opts.probe_budget;
      }
    }
  }
  return report;
}

bool NicenessReport::nice() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const PropertyVerdict& v) {
    return v.property == Property::EdgeLowerBound || v.holds;
  });
}

bool NicenessReport::holds(Property p) const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [p](const PropertyVerdict& v) { return v.property != p || v.holds; });
}

NicenessReport check_nice(const EdgeSubset& g, const ParamSchedule& sched, const CheckOptions& opts) {
  const int n = g.n();
  const int S = sched.S;
  NicenessReport report;
  report.degree = is_regular(g);
  report.lower = std::exp(-sched.delta_prev) * sched.D_r;
  report.upper = std::exp(sched.delta_prev) * sched.D_r;

  PropertyVerdict n1{Property::N1, Side::A, true, 1, std::nullopt};
  if (!report.degree) {
    n1.holds = false;
  } else {
    const double d = *report.degree;
    const double tol = 1e-12 * std::max(1.0, sched.D_r);
    n1.holds = d >= report.lower - tol && d <= report.upper + tol;
    if (!n1.holds) n1.witness = Witness{-1, Side::A, {}, {}, d, sched.D_r};
  }
  report.verdicts.push_back(n1);

  const bool complete = g.size() == static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (opts.mode == CheckMode::Auto && complete) {
    report.mode = CheckMode::SizeFormula;
  } else {
    report.mode = resolve_mode(opts, n);
  }
  if (!report.degree) {
    // Cut bounds are stated relative to D_G, which only exists for regular graphs.
    for (Side side : {Side::A, Side::B}) report.verdicts.push_back({Property::N2, side, false, 0, std::nullopt});
    return report;
  }
  const double D = *report.degree;

  const std::vector<CutProperty> props = {
      {Property::N2, Source::G, false, true, 0.0, false,
       [n, S](int a, int b) { return b >= a && a * S > n && n - b == scaled_round(a); },
       [&sched, D, n](int a, int b) {
         return std::exp(1.0 + sched.delta_prev) * D * a * std::max(1.0 / 3.0, static_cast<double>(n - b) / n);
       }},
      {Property::EdgeLowerBound, Source::G, true, false, 0.0, false,
       [n, S](int a, int b) { return e1_family(n, S, a, b); }, [D](int a, int) { return D * a / 100.0; }},
  };

  const AdjacencyBits ag = AdjacencyBits::of(g);
  const CutContext ctx{n, S, &ag, {}, {}};
  Rng rng(opts.seed);
  for (const auto& p : props) {
    for (Side side : {Side::A, Side::B}) {
      switch (report.mode) {
        case CheckMode::SizeFormula:
          report.verdicts.push_back(check_size_formula(p, side, n));
          break;
        case CheckMode::Exhaustive:
          report.verdicts.push_back(check_exhaustive(p, side, ctx));
          break;
        default:
          report.verdicts.push_back(check_sampled(p, side, ctx, opts.probe_budget, rng));
          break;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

RoundParts decompose_once(const EdgeSubset& g, const EdgeLabeling& lab, const ParamSchedule& sched) {
  const int S = sched.S;
  const int dg = regular_degree(g);
  if (lab.remainder < 0 || lab.remainder >= S) throw InvalidInput("decompose_once: remainder slice outside [S]");
  const auto sl = slices(g, lab, S);

  RoundParts out;
  out.remainder = lab.remainder;
  out.parts.resize(static_cast<std::size_t>(S), EdgeSubset(g.parent_ptr()));
  out.degrees.assign(static_cast<std::size_t>(S), 0);
  EdgeSubset used(g.parent_ptr());
  for (int i = 0; i < S; ++i) {
    if (i == lab.remainder) continue;
    const auto ui = static_cast<std::size_t>(i);
    const EdgeSubset core = sl.h[ui].minus(sl.h_plus[ui]);
    const auto core_deg = core.degrees();
    const auto slice_deg = sl.h[ui].degrees();
    int max_core = 0;
    int min_slice = dg;
    for (int s = 0; s < 2; ++s) {
      const auto& cd = core_deg[static_cast<std::size_t>(s)];
      const auto& hd = slice_deg[static_cast<std::size_t>(s)];
      if (!cd.empty()) max_core = std::max(max_core, *std::max_element(cd.begin(), cd.end()));
      if (!hd.empty()) min_slice = std::min(min_slice, *std::min_element(hd.begin(), hd.end()));
    }

    std::optional<EdgeSubset> part;
    int chosen = -1;
    if (sched.profile == Profile::Desk) {
      // Feasible degrees closest to D_G/S first, ties to the smaller one.
      std::vector<int> candidates;
      for (int d = max_core; d <= min_slice; ++d) candidates.push_back(d);
      const double target = static_cast<double>(dg) / S;
      std::stable_sort(candidates.begin(), candidates.end(),
                       [target](int x, int y) { return std::abs(x - target) < std::abs(y - target); });
      for (int d : candidates) {
        part = complete_within(core, sl.h_plus[ui], d);
        chosen = d;
        if (part) break;
      }
    } else {
      const double avg = g.n() > 0 ? static_cast<double>(core.size()) / g.n() : 0.0;
      const double pad = dg > 1 ? sched.slack.c_d * std::sqrt(static_cast<double>(dg) / S * std::log(dg)) : 0.0;
      chosen = static_cast<int>(std::ceil(avg + pad - 1e-9));
      if (chosen >= max_core && chosen <= min_slice) part = complete_within(core, sl.h_plus[ui], chosen);
    }
    if (!part) {
      throw CompletionInfeasible("decompose_once: no regular completion for slice " + std::to_string(i), i);
    }
    used = used.unite(*part);
    out.parts[ui] = std::move(*part);
    out.degrees[ui] = chosen;
  }
  const auto rem = static_cast<std::size_t>(lab.remainder);
  out.parts[rem] = g.minus(used);
  const auto rem_degree = is_regular(out.parts[rem]);
  // Complement of disjoint regular subgraphs inside a regular graph.
  if (!rem_degree) throw CompletionInfeasible("decompose_once: remainder is not regular", lab.remainder);
  out.degrees[rem] = *rem_degree;
  return out;
}

Decomposition recurse(const GraphPtr& g0, int r_target, const ParamSchedule& root, std::uint64_t seed,
                      const RecurseOptions& opts) {
  if (r_target < 0) throw InvalidInput("recurse: r_target must be >= 0");
  const EdgeSubset whole = EdgeSubset::all(g0);
  const auto d0 = is_regular(whole);
  if (!d0) throw InvalidInput("recurse: root graph must be regular");

  Decomposition out;
  out.n = g0->n();
  out.D0 = *d0;
  out.S = root.S;
  out.r = 0;
  out.schedule = root;
  out.parts = {whole};
  out.lineage = {PartLineage{-1, -1, *d0}};

  for (int round = 0; round < r_target; ++round) {
    const ParamSchedule sched = root.at_round(round);
    std::vector<EdgeSubset> next;
    std::vector<PartLineage> next_lineage;
    std::vector<RoundRecord> records;
    for (std::size_t p = 0; p < out.parts.size(); ++p) {
      const EdgeSubset& part = out.parts[p];
      const int part_index = static_cast<int>(p);
      std::optional<RoundParts> done;
      for (int attempt = 0; attempt < opts.retry_cap && !done; ++attempt) {
        const std::uint64_t s =
            derive_seed(seed, {static_cast<std::uint64_t>(round), p, static_cast<std::uint64_t>(attempt)});
        EdgeLabeling lab;
        try {
          lab = condition_labeling(part, sched, s, opts.max_attempts);
        } catch (const BudgetExhausted& e) {
          throw RecursionFailure(std::string(e.what()) + " (round " + std::to_string(round) + ", part " +
                                     std::to_string(p) + ")",
                                 round, part_index);
        }
        if (opts.require_admissible) {
          CheckOptions check = opts.check;
          check.seed = derive_seed(s, {0xad});
          if (!check_admissible(part, lab, sched, check).admissible()) {
            ++out.retries;
            continue;
          }
        }
        try {
          done = decompose_once(part, lab, sched);
        } catch (const CompletionInfeasible&) {
          ++out.retries;
          continue;
        }
        if (opts.keep_history) records.push_back({part_index, lab, slices(part, lab, sched.S), *done});
      }
      if (!done) {
        throw RecursionFailure("recurse: retry cap reached without an admissible, completable labeling (round " +
                                   std::to_string(round) + ", part " + std::to_string(p) + ")",
                               round, part_index);
      }
      for (int i = 0; i < sched.S; ++i) {
        next.push_back(std::move(done->parts[static_cast<std::size_t>(i)]));
        next_lineage.push_back({part_index, i, done->degrees[static_cast<std::size_t>(i)]});
      }
    }
    out.parts = std::move(next);
    out.lineage = std::move(next_lineage);
    out.r = round + 1;
    if (opts.keep_history) out.history.push_back(std::move(records));
  }
  out.schedule = root.at_round(r_target);
  return out;
}

ExcellenceEstimate certify_excellent(const EdgeSubset& g, const ParamSchedule& sched, long trials, std::uint64_t seed,
                                     const CheckOptions& check, long max_attempts) {
  if (trials < 1) throw InvalidInput("certify_excellent: trials must be >= 1");
  ExcellenceEstimate est;
  est.trials = trials;
  for (long t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, {static_cast<std::uint64_t>(t)});
    try {
      const auto lab = condition_labeling(g, sched, s, max_attempts);
      CheckOptions c = check;
      c.seed = derive_seed(s, {0xad});
      if (check_admissible(g, lab, sched, c).admissible()) ++est.passes;
    } catch (const BudgetExhausted&) {
      // Counted as a failed trial.
    }
  }
  const double nt = static_cast<double>(trials);
  est.pass_rate = est.passes / nt;
  const double z = 1.959963984540054;
  const double denom = 1.0 + z * z / nt;
  const double centre = (est.pass_rate + z * z / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(est.pass_rate * (1.0 - est.pass_rate) / nt + z * z / (4.0 * nt * nt)) / denom;
  est.ci_low = std::max(0.0, centre - half);
  est.ci_high = std::min(1.0, centre + half);
  est.threshold = sched.excellence_threshold_for(g.n());
  est.meets_threshold = est.pass_rate >= est.threshold;
  return est;
}

// ---------------------------------------------------------------------------

void write_decomposition(std::ostream& out, const Decomposition& d) {
  out << d.n << ' ' << static_cast<long>(d.D0) << ' ' << d.S << ' ' << d.r << '\n';
  for (std::size_t p = 0; p < d.parts.size(); ++p) {
    out << p << ' ' << d.lineage[p].parent << ' ' << d.lineage[p].slice << ' ' << d.lineage[p].degree << '\n';
  }
  for (const auto& part : d.parts) {
    bool first = true;
    for (EdgeId id : part.members()) {
      if (!first) out << ' ';
      out << id;
      first = false;
    }
    out << '\n';
  }
}

namespace {

void write_set(std::ostream& out, const std::vector<int>& xs) {
  out << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
  out << '}';
}

void write_verdicts(std::ostream& out, const std::vector<PropertyVerdict>& verdicts) {
  for (const auto& v : verdicts) {
    out << to_string(v.property) << ' ' << (v.orientation == Side::A ? 'A' : 'B') << ' '
        << (v.holds ? "holds" : "fails") << " checked=" << v.checked;
    if (v.witness) {
      const auto& w = *v.witness;
      out << " slice=" << w.slice << " first=";
      write_set(out, w.first);
      out << " second=";
      write_set(out, w.second);
      out << " lhs=" << w.lhs << " rhs=" << w.rhs;
    }
    out << '\n';
  }
}

}  // namespace

void write_report(std::ostream& out, const AdmissibilityReport& r) {
  out << "admissible " << (r.admissible() ? 1 : 0) << '\n';
  out << "mode " << to_string(r.mode) << '\n';
  out << "probes " << r.probes << '\n';
  write_verdicts(out, r.verdicts);
}

void write_report(std::ostream& out, const NicenessReport& r) {
  out << "nice " << (r.nice() ? 1 : 0) << '\n';
  out << "mode " << to_string(r.mode) << '\n';
  out << "degree " << (r.degree ? std::to_string(*r.degree) : std::string("irregular")) << '\n';
  out << "window " << r.lower << ' ' << r.upper << '\n';
  write_verdicts(out, r.verdicts);
}

}  // namespace spreadlab
