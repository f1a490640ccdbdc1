// Brute-force reference computations shared by the unit and acceptance tests.
// Each one enumerates its whole search space directly and shares no code with
// the library routine it checks.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "spreadlab/decompose.hpp"
#include "spreadlab/graph.hpp"

namespace oracle {

using namespace spreadlab;

// ---------------------------------------------------------------------------
// Conditional labeling law

/// Outcome index of a labeling: remainder, then (pi, xi) per edge in base 2S.
inline std::uint64_t encode_labeling(const EdgeLabeling& lab, int S) {
  std::uint64_t code = 0;
  for (std::size_t k = lab.pi.size(); k-- > 0;) {
    code = code * static_cast<std::uint64_t>(2 * S) + static_cast<std::uint64_t>(2 * lab.pi[k] + lab.xi[k]);
  }
  return code * static_cast<std::uint64_t>(S) + static_cast<std::uint64_t>(lab.remainder);
}

inline std::uint64_t labeling_outcomes(std::size_t edges, int S) {
  std::uint64_t total = static_cast<std::uint64_t>(S);
  for (std::size_t k = 0; k < edges; ++k) total *= static_cast<std::uint64_t>(2 * S);
  return total;
}

/// Exact law of the labeling conditioned on every slice degree being within
/// c_R sqrt(ln D · D / S) of D / S and every boosted degree within the same
/// distance of q D / S. Indexed by encode_labeling.
inline std::vector<double> conditional_labeling_law(const EdgeSubset& g, int D, int S, double q, double c_R) {
  const double window = D > 1 ? c_R * std::sqrt(std::log(static_cast<double>(D)) * D / S) : 0.0;
  const double target = static_cast<double>(D) / S;
  const std::uint64_t total = labeling_outcomes(g.size(), S);
  std::vector<double> law(total, 0.0);
  double mass = 0.0;
  const int n = g.n();
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code / static_cast<std::uint64_t>(S);
    std::vector<int> deg(static_cast<std::size_t>(2 * n * S), 0);
    std::vector<int> boosted(deg.size(), 0);
    double prob = 1.0 / S;
    for (EdgeId id : g.members()) {
      const int label = static_cast<int>(c % static_cast<std::uint64_t>(2 * S));
      c /= static_cast<std::uint64_t>(2 * S);
      const int pi = label / 2;
      const int xi = label % 2;
      prob *= (1.0 / S) * (xi ? q : 1.0 - q);
      const Edge& e = g.parent().edge(id);
      for (int v : {e.a, n + e.b}) {
        ++deg[static_cast<std::size_t>(v * S + pi)];
        boosted[static_cast<std::size_t>(v * S + pi)] += xi;
      }
    }
    bool ok = true;
    for (std::size_t cell = 0; cell < deg.size() && ok; ++cell) {
      ok = std::abs(deg[cell] - target) <= window + 1e-9 && std::abs(boosted[cell] - q * target) <= window + 1e-9;
    }
    if (ok) {
      law[code] = prob;
      mass += prob;
    }
  }
  for (double& x : law) x /= mass;
  return law;
}

// ---------------------------------------------------------------------------
// Admissibility by enumerating every pair of vertex sets

inline int round101(int a) { return static_cast<int>(std::lround(1.01 * a)); }

inline long cut(const EdgeSubset& h, Side side, unsigned xs, unsigned ys) {
  long count = 0;
  for (EdgeId id : h.members()) {
    const Edge& e = h.parent().edge(id);
    const int x = side == Side::A ? e.a : e.b;
    const int y = side == Side::A ? e.b : e.a;
    count += ((xs >> x) & 1U) && ((ys >> y) & 1U);
  }
  return count;
}

/// Verdict per (property, orientation) for (R1), (R2), (E1)-(E4).
inline std::map<std::pair<Property, Side>, bool> brute_admissible(const EdgeSubset& g, const EdgeLabeling& lab,
                                                                   const ParamSchedule& sched) {
  const int n = g.n();
  const int S = sched.S;
  const int D = *is_regular(g);
  const double q = sched.q_r;
  const auto& c = sched.slack;
  std::vector<std::vector<EdgeId>> h(static_cast<std::size_t>(S)), hp(static_cast<std::size_t>(S));
  for (std::size_t k = 0; k < g.size(); ++k) {
    h[static_cast<std::size_t>(lab.pi[k])].push_back(g.members()[k]);
    if (lab.xi[k]) hp[static_cast<std::size_t>(lab.pi[k])].push_back(g.members()[k]);
  }
  std::map<std::pair<Property, Side>, bool> out;
  const double window = D > 1 ? c.c_R * std::sqrt(std::log(static_cast<double>(D)) * D / S) : 0.0;
  for (Side side : {Side::A, Side::B}) {
    bool r1 = true, r2 = true;
    for (int i = 0; i < S; ++i) {
      const EdgeSubset hi(g.parent_ptr(), h[static_cast<std::size_t>(i)]);
      const EdgeSubset hpi(g.parent_ptr(), hp[static_cast<std::size_t>(i)]);
      for (int v = 0; v < n; ++v) {
        r1 = r1 && std::abs(degree(hi, {side, v}) - static_cast<double>(D) / S) <= window + 1e-9;
        r2 = r2 && std::abs(degree(hpi, {side, v}) - q * D / S) <= window + 1e-9;
      }
    }
    out[{Property::R1, side}] = r1;
    out[{Property::R2, side}] = r2;

    bool e1 = true, e2 = true, e3 = true, e4 = true;
    const unsigned full = (1U << n) - 1;
    for (unsigned xs = 1; xs <= full; ++xs) {
      const int a = std::popcount(xs);
      for (unsigned ys = 0; ys <= full; ++ys) {
        const int b = std::popcount(ys);
        const bool f1 = (5 * a >= 4 * n && b >= a) || (5 * a <= 4 * n && a * S >= n && (n - b) < 1.01 * a);
        const bool f2 = a * S <= n && b == round101(a);
        const bool f3 = b >= a && a * S >= n && n - b == round101(a);
        if (!f1 && !f2 && !f3) continue;
        const double beta = std::max(c.kappa, 1.0 - static_cast<double>(b) / n);
        const long g_cut = cut(g, side, xs, ys);
        for (int i = 0; i < S; ++i) {
          const EdgeSubset hi(g.parent_ptr(), h[static_cast<std::size_t>(i)]);
          const EdgeSubset hpi(g.parent_ptr(), hp[static_cast<std::size_t>(i)]);
          const double tol = 1e-9;
          if (f1 && cut(hpi, side, xs, ys) < c.c_E1 * q / S * g_cut - tol) e1 = false;
          if (f2 && cut(hpi, side, xs, ys) > c.c_E2 * D * q * a / S + tol) e2 = false;
          if (f3) {
            const unsigned rest = full & ~ys;
            const double e3q = c.e3 == E3Exponent::Definition ? q : 10 * q;
            if (cut(hi, side, xs, rest) > std::exp(1 + e3q + sched.delta_prev) * D * a * beta / S + tol) e3 = false;
            if (cut(hpi, side, xs, rest) > c.c_E4 * D * a * beta * q / S + tol) e4 = false;
          }
        }
      }
    }
    out[{Property::E1, side}] = e1;
    out[{Property::E2, side}] = e2;
    out[{Property::E3, side}] = e3;
    out[{Property::E4, side}] = e4;
  }
  return out;
}

/// (N2) for one orientation: every A' with |A'| S > n and every B' with
/// |B'| >= |A'| and n - |B'| = round(1.01 |A'|).
inline bool brute_n2(const EdgeSubset& g, int S, double delta_prev, Side side) {
  const int n = g.n();
  const int D = *is_regular(g);
  const unsigned full = (1U << n) - 1;
  for (unsigned xs = 1; xs <= full; ++xs) {
    const int a = std::popcount(xs);
    for (unsigned ys = 0; ys <= full; ++ys) {
      const int b = std::popcount(ys);
      if (!(b >= a && a * S > n && n - b == round101(a))) continue;
      const double bound = std::exp(1 + delta_prev) * D * a * std::max(1.0 / 3.0, static_cast<double>(n - b) / n);
      if (cut(g, side, xs, full & ~ys) > bound + 1e-9) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Design counts by plain backtracking

/// Latin squares of order n, filled cell by cell in row-major order.
inline long count_latin_squares(int n) {
  std::vector<int> grid(static_cast<std::size_t>(n * n), -1);
  long count = 0;
  auto rec = [&](auto&& self, int cell) -> void {
    if (cell == n * n) {
      ++count;
      return;
    }
    const int r = cell / n, col = cell % n;
    for (int s = 0; s < n; ++s) {
      bool ok = true;
      for (int k = 0; k < col && ok; ++k) ok = grid[static_cast<std::size_t>(r * n + k)] != s;
      for (int k = 0; k < r && ok; ++k) ok = grid[static_cast<std::size_t>(k * n + col)] != s;
      if (!ok) continue;
      grid[static_cast<std::size_t>(cell)] = s;
      self(self, cell + 1);
    }
    grid[static_cast<std::size_t>(cell)] = -1;
  };
  rec(rec, 0);
  return count;
}

/// Labeled Steiner triple systems on [n]: choose n(n-1)/6 triples from all
/// C(n,3), covering every pair exactly once. Triples are chosen in increasing
/// index order, so each system is counted once.
inline long count_steiner_triple_systems(int n) {
  std::vector<std::array<int, 3>> triples;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z) triples.push_back({x, y, z});
  const int need = n * (n - 1) / 6;
  std::vector<int> used(static_cast<std::size_t>(n * n), 0);
  long count = 0;
  auto rec = [&](auto&& self, std::size_t start, int chosen) -> void {
    if (chosen == need) {
      ++count;
      return;
    }
    for (std::size_t t = start; t < triples.size(); ++t) {
      const auto& x = triples[t];
      const int p1 = x[0] * n + x[1], p2 = x[0] * n + x[2], p3 = x[1] * n + x[2];
      if (used[static_cast<std::size_t>(p1)] || used[static_cast<std::size_t>(p2)] || used[static_cast<std::size_t>(p3)])
        continue;
      used[static_cast<std::size_t>(p1)] = used[static_cast<std::size_t>(p2)] = used[static_cast<std::size_t>(p3)] = 1;
      self(self, t + 1, chosen + 1);
      used[static_cast<std::size_t>(p1)] = used[static_cast<std::size_t>(p2)] = used[static_cast<std::size_t>(p3)] = 0;
    }
  };
  rec(rec, 0, 0);
  return count;
}

}  // namespace oracle
