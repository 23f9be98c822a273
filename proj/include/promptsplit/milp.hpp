// Copyright 2026 The promptsplit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact solver for the prompt-partition binary program:
//
//   maximize    sum_j gain_j * z_j
//   subject to  z_u + z_v <= 1            for every at-most-one pair (u, v)
//               sum_j cover_j * z_j >= floor
//               z_j in {0, 1}
//
// with non-negative integer gains and cover weights, every variable in at most
// one pair, and at most one side of each pair carrying cover weight. Three
// independent routes are provided: presolve + a knapsack-cover dynamic
// program (the default), depth-first branch-and-bound over a greedy LP
// relaxation, and exhaustive enumeration for cross-checking.
//
// All routes share one canonical tie-break among optimal solutions: larger
// total cover first, then the lexicographically greatest pair vector when
// pairs are ordered by the id of their cover-side variable and 1 means "cover
// side chosen". Larger cover first keeps retained-test counts monotone in the
// floor.

#ifndef PROMPTSPLIT_MILP_HPP_
#define PROMPTSPLIT_MILP_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "promptsplit/error.hpp"

namespace promptsplit::milp {

struct BinaryProgram {
  std::vector<std::string> variables;
  std::map<std::string, std::int64_t> objective;      // absent means 0
  std::vector<std::pair<std::string, std::string>> at_most_one_pairs;
  std::map<std::string, std::int64_t> cover_weights;  // absent means 0
  std::int64_t cover_floor = 0;
};

enum class SolveStatus { kOptimal, kInfeasible, kLimitExceeded };

inline const char* StatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kLimitExceeded: return "limit_exceeded";
  }
  return "unknown";
}

struct Solution {
  std::map<std::string, int> values;
  std::int64_t objective_value = 0;
  SolveStatus status = SolveStatus::kInfeasible;
  std::int64_t nodes_explored = 0;
};

// Exact non-negative fraction num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double ToDouble() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  std::int64_t Floor() const {
    std::int64_t q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den ==
           static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <
           static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
};

namespace internal {

// Index-based view of a validated program.
struct Compiled {
  struct Pair {
    std::size_t keep;   // side without cover weight
    std::size_t cover;  // side with cover weight (or the second listed)
  };

  std::vector<std::string> ids;
  std::vector<std::int64_t> gain;
  std::vector<std::int64_t> weight;
  std::vector<Pair> pairs;  // sorted by ids[cover]
  std::vector<std::size_t> unpaired;
  std::int64_t floor = 0;
};

inline Compiled Compile(const BinaryProgram& program) {
  Compiled c;
  c.ids = program.variables;
  c.floor = program.cover_floor;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    if (!index.emplace(c.ids[i], i).second) {
      throw DataError("malformed program: duplicate variable '" + c.ids[i] +
                      "'");
    }
  }
  auto lookup = [&](const std::string& id, const char* where) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw DataError(std::string("malformed program: ") + where +
                      " references unknown variable '" + id + "'");
    }
    return it->second;
  };
  c.gain.assign(c.ids.size(), 0);
  c.weight.assign(c.ids.size(), 0);
  for (const auto& [id, g] : program.objective) {
    if (g < 0) throw DataError("malformed program: negative gain on " + id);
    c.gain[lookup(id, "objective")] = g;
  }
  for (const auto& [id, w] : program.cover_weights) {
    if (w < 0) {
      throw DataError("malformed program: negative cover weight on " + id);
    }
    c.weight[lookup(id, "cover constraint")] = w;
  }
  std::vector<bool> paired(c.ids.size(), false);
  for (const auto& [a, b] : program.at_most_one_pairs) {
    std::size_t ia = lookup(a, "pair");
    std::size_t ib = lookup(b, "pair");
    if (ia == ib || paired[ia] || paired[ib]) {
      throw DataError("malformed program: variable '" + (paired[ia] ? a : b) +
                      "' appears in more than one pair");
    }
    if (c.weight[ia] > 0 && c.weight[ib] > 0) {
      throw DataError("malformed program: both sides of pair (" + a + ", " +
                      b + ") carry cover weight");
    }
    paired[ia] = paired[ib] = true;
    if (c.weight[ia] > 0) {
      c.pairs.push_back({ib, ia});
    } else {
      c.pairs.push_back({ia, ib});
    }
  }
  std::sort(c.pairs.begin(), c.pairs.end(),
            [&](const Compiled::Pair& x, const Compiled::Pair& y) {
              return c.ids[x.cover] < c.ids[y.cover];
            });
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    if (!paired[i]) c.unpaired.push_back(i);
  }
  return c;
}

inline Solution MakeSolution(const Compiled& c,
                             const std::vector<int>& values) {
  Solution s;
  s.status = SolveStatus::kOptimal;
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    s.values[c.ids[i]] = values[i];
    s.objective_value += c.gain[i] * values[i];
  }
  return s;
}

// A pair whose choice is a real trade-off: the keep side gains more, the
// cover side contributes cover.
inline bool IsDecisionPair(const Compiled& c, const Compiled::Pair& p) {
  return c.weight[p.cover] > 0 && c.gain[p.keep] > c.gain[p.cover];
}

}  // namespace internal

// Verifies every constraint and recomputes the objective.
inline bool IsFeasible(const BinaryProgram& program,
                       const std::map<std::string, int>& values,
                       std::int64_t* objective = nullptr) {
  std::int64_t obj = 0;
  std::int64_t cover = 0;
  for (const std::string& id : program.variables) {
    auto it = values.find(id);
    if (it == values.end() || (it->second != 0 && it->second != 1)) {
      return false;
    }
    if (it->second == 1) {
      auto g = program.objective.find(id);
      if (g != program.objective.end()) obj += g->second;
      auto w = program.cover_weights.find(id);
      if (w != program.cover_weights.end()) cover += w->second;
    }
  }
  for (const auto& [a, b] : program.at_most_one_pairs) {
    if (values.at(a) + values.at(b) > 1) return false;
  }
  if (cover < program.cover_floor) return false;
  if (objective != nullptr) *objective = obj;
  return true;
}

// ---------------------------------------------------------------------------
// Presolve

struct PresolveResult {
  // Decision pairs only, floor reduced by the cover of fixed variables.
  BinaryProgram reduced;
  // Values for every variable that is not part of `reduced`.
  std::map<std::string, int> fixed;
  std::int64_t fixed_objective = 0;
  std::int64_t fixed_cover = 0;
  // Gain of the reduced program's keep sides; the reduced optimum is this
  // minus the cover-DP cost.
  std::int64_t reduced_base_objective = 0;
};

// Fixes every variable whose value is forced in the canonical optimum:
// unpaired variables go to 1 (non-negative coefficients), a pair without
// cover weight takes its larger-gain side, and a pair whose cover side gains
// at least as much as the other side takes the cover side. What is left are
// pairs with keep gain > cover gain and positive cover weight.
inline PresolveResult Presolve(const BinaryProgram& program) {
  const internal::Compiled c = internal::Compile(program);
  PresolveResult r;
  auto fix = [&](std::size_t var, int value) {
    r.fixed[c.ids[var]] = value;
    if (value == 1) {
      r.fixed_objective += c.gain[var];
      r.fixed_cover += c.weight[var];
    }
  };
  for (std::size_t v : c.unpaired) fix(v, 1);
  for (const auto& p : c.pairs) {
    if (internal::IsDecisionPair(c, p)) {
      const std::string& keep = c.ids[p.keep];
      const std::string& cover = c.ids[p.cover];
      r.reduced.variables.push_back(keep);
      r.reduced.variables.push_back(cover);
      r.reduced.objective[keep] = c.gain[p.keep];
      r.reduced.objective[cover] = c.gain[p.cover];
      r.reduced.cover_weights[cover] = c.weight[p.cover];
      r.reduced.at_most_one_pairs.emplace_back(keep, cover);
      r.reduced_base_objective += c.gain[p.keep];
      continue;
    }
    const bool take_cover = c.gain[p.cover] >= c.gain[p.keep];
    fix(p.cover, take_cover ? 1 : 0);
    fix(p.keep, take_cover ? 0 : 1);
  }
  r.reduced.cover_floor =
      std::max<std::int64_t>(0, program.cover_floor - r.fixed_cover);
  return r;
}

// ---------------------------------------------------------------------------
// Knapsack-cover dynamic program

struct CoverItem {
  std::int64_t cost = 0;
  std::int64_t cover = 0;
};

struct CoverResult {
  bool feasible = false;
  std::vector<std::size_t> selected;  // ascending item indices
  std::int64_t cost = 0;
  std::int64_t cover = 0;
};

// Minimum-cost subset with total cover >= target. Among minimum-cost subsets
// picks the one with the largest cover, then the one that selects the
// earliest items. Runs in O(items * target) time with a bit table for the
// reconstruction.
inline CoverResult SolveCoverDp(std::span<const CoverItem> items,
                                std::int64_t target) {
  if (target < 0) throw UsageError("cover target must be non-negative");
  for (const CoverItem& item : items) {
    if (item.cost < 0 || item.cover < 0) {
      throw UsageError("cover items need non-negative cost and cover");
    }
  }
  const std::int64_t total_cover = std::accumulate(
      items.begin(), items.end(), std::int64_t{0},
      [](std::int64_t acc, const CoverItem& it) { return acc + it.cover; });
  CoverResult result;
  if (total_cover < target) return result;

  struct Value {
    std::int64_t cost;
    std::int64_t cover;
  };
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  auto better = [](const Value& a, const Value& b) {
    return a.cost < b.cost || (a.cost == b.cost && a.cover > b.cover);
  };

  const std::size_t n = items.size();
  const std::size_t width = static_cast<std::size_t>(target) + 1;
  // next[r]: best value using items i+1.. with residual requirement r.
  std::vector<Value> next(width, Value{kInf, 0});
  std::vector<Value> cur(width);
  next[0] = Value{0, 0};
  std::vector<bool> take(n * width, false);
  for (std::size_t i = n; i-- > 0;) {
    const CoverItem& item = items[i];
    for (std::size_t r = 0; r < width; ++r) {
      const Value skip = next[r];
      const std::size_t rest =
          static_cast<std::int64_t>(r) > item.cover
              ? r - static_cast<std::size_t>(item.cover)
              : 0;
      Value with{kInf, 0};
      if (next[rest].cost != kInf) {
        with = Value{next[rest].cost + item.cost, next[rest].cover + item.cover};
      }
      if (with.cost != kInf && !better(skip, with)) {
        cur[r] = with;
        take[i * width + r] = true;
      } else {
        cur[r] = skip;
      }
    }
    std::swap(cur, next);
  }
  const Value& best = next[width - 1];
  result.feasible = best.cost != kInf;
  if (!result.feasible) return result;
  result.cost = best.cost;
  result.cover = best.cover;
  std::size_t r = width - 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (take[i * width + r]) {
      result.selected.push_back(i);
      const std::int64_t c = items[i].cover;
      r = static_cast<std::int64_t>(r) > c ? r - static_cast<std::size_t>(c)
                                           : 0;
    }
  }
  return result;
}

// Presolve followed by the cover DP over the remaining decision pairs.
inline Solution SolveWithCoverDp(const BinaryProgram& program) {
  PresolveResult pre = Presolve(program);
  const internal::Compiled reduced = internal::Compile(pre.reduced);
  std::vector<CoverItem> items;
  items.reserve(reduced.pairs.size());
  for (const auto& p : reduced.pairs) {
    items.push_back({reduced.gain[p.keep] - reduced.gain[p.cover],
                     reduced.weight[p.cover]});
  }
  CoverResult cover = SolveCoverDp(items, pre.reduced.cover_floor);
  Solution s;
  s.nodes_explored = 0;
  if (!cover.feasible) {
    s.status = SolveStatus::kInfeasible;
    return s;
  }
  s.status = SolveStatus::kOptimal;
  s.values = std::move(pre.fixed);
  for (const auto& p : reduced.pairs) {
    s.values[reduced.ids[p.keep]] = 1;
    s.values[reduced.ids[p.cover]] = 0;
  }
  for (std::size_t idx : cover.selected) {
    const auto& p = reduced.pairs[idx];
    s.values[reduced.ids[p.keep]] = 0;
    s.values[reduced.ids[p.cover]] = 1;
  }
  s.objective_value =
      pre.fixed_objective + pre.reduced_base_objective - cover.cost;
  return s;
}

// ---------------------------------------------------------------------------
// LP relaxation

namespace internal {

struct Relaxation {
  bool feasible = false;
  Rational bound;
  // Pair index (into Compiled::pairs) with a fractional value, if any.
  std::optional<std::size_t> fractional_pair;
  std::vector<int> integral_values;  // valid when !fractional_pair
};

// state[v]: -1 free, 0 or 1 fixed. Free pairs are first set to their
// dominant side; the residual cover is then bought greedily from trade-off
// pairs in increasing cost-per-cover order, the last one fractionally. This
// is the exact optimum of the continuous relaxation because the residual is a
// fractional covering knapsack.
inline Relaxation Relax(const Compiled& c, const std::vector<int>& state) {
  Relaxation out;
  std::vector<int> values(c.ids.size(), 0);
  std::int64_t objective = 0;
  std::int64_t cover = 0;
  auto set = [&](std::size_t v) {
    values[v] = 1;
    objective += c.gain[v];
    cover += c.weight[v];
  };
  for (std::size_t v : c.unpaired) {
    if (state[v] != 0) set(v);
  }
  std::vector<std::size_t> tradeoffs;
  for (std::size_t k = 0; k < c.pairs.size(); ++k) {
    const auto& p = c.pairs[k];
    const int sk = state[p.keep];
    const int sc = state[p.cover];
    if (sk == 1 && sc == 1) return out;
    if (sk == 1) {
      set(p.keep);
    } else if (sc == 1) {
      set(p.cover);
    } else if (sk == 0 && sc == 0) {
      // neither
    } else if (sk == 0) {
      set(p.cover);
    } else if (sc == 0) {
      set(p.keep);
    } else if (IsDecisionPair(c, p)) {
      set(p.keep);
      tradeoffs.push_back(k);
    } else if (c.weight[p.cover] > 0 || c.gain[p.cover] >= c.gain[p.keep]) {
      set(p.cover);
    } else {
      set(p.keep);
    }
  }
  std::int64_t residual = c.floor - cover;
  if (residual <= 0) {
    out.feasible = true;
    out.bound = Rational{objective, 1};
    out.integral_values = std::move(values);
    return out;
  }
  auto cost_of = [&](std::size_t k) {
    return c.gain[c.pairs[k].keep] - c.gain[c.pairs[k].cover];
  };
  std::stable_sort(tradeoffs.begin(), tradeoffs.end(),
                   [&](std::size_t a, std::size_t b) {
                     // cost_a / w_a < cost_b / w_b
                     return static_cast<__int128>(cost_of(a)) *
                                c.weight[c.pairs[b].cover] <
                            static_cast<__int128>(cost_of(b)) *
                                c.weight[c.pairs[a].cover];
                   });
  for (std::size_t k : tradeoffs) {
    const auto& p = c.pairs[k];
    const std::int64_t w = c.weight[p.cover];
    if (w <= residual) {
      values[p.keep] = 0;
      values[p.cover] = 1;
      objective -= cost_of(k);
      residual -= w;
      if (residual == 0) break;
      continue;
    }
    // Fractional: shift residual / w of this pair.
    out.feasible = true;
    out.bound = Rational{objective * w - cost_of(k) * residual, w};
    out.fractional_pair = k;
    return out;
  }
  if (residual > 0) return out;
  out.feasible = true;
  out.bound = Rational{objective, 1};
  out.integral_values = std::move(values);
  return out;
}

}  // namespace internal

// Optimal value of the continuous relaxation with the variables in `partial`
// fixed; std::nullopt when the partial assignment cannot be completed
// feasibly (the -infinity case).
inline std::optional<Rational> LpRelaxationBound(
    const BinaryProgram& program, const std::map<std::string, int>& partial) {
  const internal::Compiled c = internal::Compile(program);
  std::vector<int> state(c.ids.size(), -1);
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    auto it = partial.find(c.ids[i]);
    if (it != partial.end()) state[i] = it->second;
  }
  internal::Relaxation relax = internal::Relax(c, state);
  if (!relax.feasible) return std::nullopt;
  return relax.bound;
}

// ---------------------------------------------------------------------------
// Branch-and-bound

struct SolverConfig {
  std::int64_t node_limit = 10'000'000;
  // Start from the cover-DP optimum so the search only has to prove it.
  bool seed_incumbent = true;
};

namespace internal {

class BranchAndBound {
 public:
  BranchAndBound(const Compiled& c, const SolverConfig& config)
      : c_(c), config_(config), state_(c.ids.size(), -1) {}

  void Seed(std::vector<int> values, std::int64_t objective) {
    incumbent_ = std::move(values);
    incumbent_objective_ = objective;
  }

  // Returns false when the node limit was hit.
  bool Run() { return Visit(); }

  std::int64_t nodes() const { return nodes_; }
  const std::optional<std::vector<int>>& incumbent() const {
    return incumbent_;
  }
  std::int64_t incumbent_objective() const { return incumbent_objective_; }

 private:
  bool Visit() {
    if (++nodes_ > config_.node_limit) return false;
    Relaxation relax = Relax(c_, state_);
    if (!relax.feasible) return true;
    // The objective is integral, so a node can only improve on the incumbent
    // if floor(bound) exceeds it.
    if (incumbent_ && relax.bound.Floor() <= incumbent_objective_) return true;
    if (!relax.fractional_pair) {
      incumbent_ = std::move(relax.integral_values);
      incumbent_objective_ = relax.bound.num;
      return true;
    }
    // Dropping both sides of a pair is dominated (gains and weights are
    // non-negative), so two children cover the search space. Cover side
    // first.
    const Compiled::Pair& p = c_.pairs[*relax.fractional_pair];
    state_[p.cover] = 1;
    state_[p.keep] = 0;
    bool ok = Visit();
    if (ok) {
      state_[p.cover] = 0;
      state_[p.keep] = 1;
      ok = Visit();
    }
    state_[p.cover] = -1;
    state_[p.keep] = -1;
    return ok;
  }

  const Compiled& c_;
  const SolverConfig& config_;
  std::vector<int> state_;
  std::optional<std::vector<int>> incumbent_;
  std::int64_t incumbent_objective_ = 0;
  std::int64_t nodes_ = 0;
};

}  // namespace internal

// Depth-first branch-and-bound, branching on the fractional pair of the LP
// relaxation; pairs are visited in cover-side id order.
inline Solution SolveBranchAndBound(const BinaryProgram& program,
                                    const SolverConfig& config = {}) {
  const internal::Compiled c = internal::Compile(program);
  internal::BranchAndBound search(c, config);
  if (config.seed_incumbent) {
    Solution seed = SolveWithCoverDp(program);
    std::int64_t objective = 0;
    if (seed.status == SolveStatus::kOptimal &&
        IsFeasible(program, seed.values, &objective)) {
      std::vector<int> values(c.ids.size(), 0);
      for (std::size_t i = 0; i < c.ids.size(); ++i) {
        values[i] = seed.values.at(c.ids[i]);
      }
      search.Seed(std::move(values), objective);
    }
  }
  Solution s;
  const bool finished = search.Run();
  s.nodes_explored = search.nodes();
  if (!finished) {
    s.status = SolveStatus::kLimitExceeded;
    return s;
  }
  if (!search.incumbent()) {
    s.status = SolveStatus::kInfeasible;
    return s;
  }
  Solution out = internal::MakeSolution(c, *search.incumbent());
  out.nodes_explored = s.nodes_explored;
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

inline constexpr std::size_t kMaxExhaustivePairs = 24;

// Tries both orientations of every pair (dropping both sides is dominated)
// with unpaired variables at 1. Uses the canonical tie-break.
inline Solution SolveExhaustive(const BinaryProgram& program) {
  const internal::Compiled c = internal::Compile(program);
  const std::size_t k = c.pairs.size();
  if (k > kMaxExhaustivePairs) {
    throw UsageError("exhaustive solver limited to " +
                     std::to_string(kMaxExhaustivePairs) + " pairs, got " +
                     std::to_string(k));
  }
  std::int64_t base_objective = 0;
  std::int64_t base_cover = 0;
  for (std::size_t v : c.unpaired) {
    base_objective += c.gain[v];
    base_cover += c.weight[v];
  }
  // Pair j maps to bit (k - 1 - j) so a numerically larger mask is a
  // lexicographically larger pair vector.
  bool found = false;
  std::uint64_t best_mask = 0;
  std::int64_t best_objective = 0;
  std::int64_t best_cover = 0;
  const std::uint64_t end = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    std::int64_t objective = base_objective;
    std::int64_t cover = base_cover;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& p = c.pairs[j];
      if (mask >> (k - 1 - j) & 1) {
        objective += c.gain[p.cover];
        cover += c.weight[p.cover];
      } else {
        objective += c.gain[p.keep];
        cover += c.weight[p.keep];
      }
    }
    if (cover < c.floor) continue;
    if (!found || objective > best_objective ||
        (objective == best_objective && cover > best_cover) ||
        (objective == best_objective && cover == best_cover &&
         mask > best_mask)) {
      found = true;
      best_mask = mask;
      best_objective = objective;
      best_cover = cover;
    }
  }
  Solution s;
  s.nodes_explored = static_cast<std::int64_t>(end);
  if (!found) {
    s.status = SolveStatus::kInfeasible;
    return s;
  }
  std::vector<int> values(c.ids.size(), 0);
  for (std::size_t v : c.unpaired) values[v] = 1;
  for (std::size_t j = 0; j < k; ++j) {
    const auto& p = c.pairs[j];
    if (best_mask >> (k - 1 - j) & 1) {
      values[p.cover] = 1;
    } else {
      values[p.keep] = 1;
    }
  }
  Solution out = internal::MakeSolution(c, values);
  out.nodes_explored = s.nodes_explored;
  return out;
}

// ---------------------------------------------------------------------------
// Plain-text dumps for diffing against other solvers. One line per item,
// tab-separated.

inline void WriteProgram(std::ostream& out, const BinaryProgram& program) {
  for (const std::string& id : program.variables) {
    auto g = program.objective.find(id);
    auto w = program.cover_weights.find(id);
    out << "var\t" << id << "\tobj\t"
        << (g == program.objective.end() ? 0 : g->second) << "\tcover\t"
        << (w == program.cover_weights.end() ? 0 : w->second) << '\n';
  }
  for (const auto& [a, b] : program.at_most_one_pairs) {
    out << "pair\t" << a << '\t' << b << '\n';
  }
  out << "floor\t" << program.cover_floor << '\n';
}

inline void WriteSolution(std::ostream& out, const Solution& solution) {
  out << "status\t" << StatusName(solution.status) << '\n';
  out << "objective\t" << solution.objective_value << '\n';
  out << "nodes\t" << solution.nodes_explored << '\n';
  for (const auto& [id, value] : solution.values) {
    out << "value\t" << id << '\t' << value << '\n';
  }
}

}  // namespace promptsplit::milp

#endif  // PROMPTSPLIT_MILP_HPP_
