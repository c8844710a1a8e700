#include "trotter/planners.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace trotter::planners {

using gridpath::Direction;
using gridpath::LatticePath;
using gridpath::WeightTriplet;

namespace {

std::int64_t vector_gcd(const std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

void check_targets(const std::vector<std::int64_t>& targets, std::int64_t n) {
  if (targets.size() < 2) throw PlanError("need at least two operator weights");
  for (auto t : targets) {
    if (t < 1) throw PlanError("all target weights must be >= 1");
  }
  if (n < 1) throw PlanError("Trotter repetition count must be >= 1");
}

// Greedy unit path: at each step take the move whose endpoint minimizes the
// Euclidean distance to the diagonal through the origin and `unit`.
// Distances are compared through the exact integer |c|^2 |v|^2 - (c.v)^2.
LatticePath greedy_unit(const std::vector<std::int64_t>& unit, TieBreak tie_break) {
  const int d = static_cast<int>(unit.size());
  std::int64_t v2 = 0;
  for (auto x : unit) v2 += x * x;
  std::vector<std::int64_t> pos(d, 0);
  std::vector<int> steps;
  const std::int64_t total = std::accumulate(unit.begin(), unit.end(), std::int64_t{0});
  steps.reserve(total);
  for (std::int64_t s = 0; s < total; ++s) {
    int best = -1;
    std::int64_t best_dist = 0;
    for (int k = 0; k < d; ++k) {
      if (pos[k] >= unit[k]) continue;
      std::int64_t c2 = 0, cv = 0;
      for (int m = 0; m < d; ++m) {
        const std::int64_t cm = pos[m] + (m == k ? 1 : 0);
        c2 += cm * cm;
        cv += cm * unit[m];
      }
      const std::int64_t dist = c2 * v2 - cv * cv;
      if (best < 0 || dist < best_dist) {
        best = k;
        best_dist = dist;
      } else if (dist == best_dist && tie_break == TieBreak::LargerDeficit) {
        if (unit[k] - pos[k] > unit[best] - pos[best]) best = k;
      }
      // TieBreak::LowerAxis keeps the earlier (lower) axis.
    }
    steps.push_back(best);
    ++pos[best];
  }
  return LatticePath::from_steps(unit, std::move(steps));
}

struct TripletHash {
  std::size_t operator()(const WeightTriplet& w) const {
    std::size_t h = std::hash<std::int64_t>{}(w.w1);
    h ^= std::hash<std::int64_t>{}(w.w2) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::int64_t>{}(w.w3) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Accumulated weight triple -> lexicographically largest step string.
using StateMap = std::unordered_map<WeightTriplet, std::string, TripletHash>;

GateSequence make_sequence(std::string method, std::vector<std::int64_t> targets, std::int64_t n,
                           std::vector<GateEntry> entries) {
  GateSequence seq;
  seq.method = std::move(method);
  seq.targets = std::move(targets);
  seq.n = n;
  seq.entries = std::move(entries);
  seq.integral = true;
  for (const auto& e : seq.entries) {
    const Rational count = e.coeff * Rational(seq.targets[e.term] * seq.n);
    if (e.coeff < Rational(0) || count.denominator() != 1) {
      seq.integral = false;
      break;
    }
  }
  return seq;
}

}  // namespace

std::optional<LatticePath> GateSequence::to_path() const {
  std::vector<std::int64_t> grid(targets);
  for (auto& t : grid) t *= n;
  std::vector<int> steps;
  for (const auto& e : entries) {
    const Rational count = e.coeff * Rational(targets[e.term] * n);
    if (e.coeff < Rational(0) || count.denominator() != 1) return std::nullopt;
    for (std::int64_t c = 0; c < count.numerator(); ++c) steps.push_back(e.term);
  }
  return LatticePath::from_steps(std::move(grid), std::move(steps));
}

std::int64_t GateSequence::switchings() const {
  std::int64_t count = 0;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].term != entries[i - 1].term) ++count;
  }
  return count;
}

nlohmann::json GateSequence::to_json() const {
  nlohmann::json entries_json = nlohmann::json::array();
  for (const auto& e : entries) {
    entries_json.push_back({{"term", e.term},
                            {"coeff_num", e.coeff.numerator()},
                            {"coeff_den", e.coeff.denominator()}});
  }
  nlohmann::json j{{"method", method},
                   {"targets", targets},
                   {"n", n},
                   {"integral", integral},
                   {"entries", std::move(entries_json)}};
  if (auto p = to_path()) j["steps"] = p->step_string();
  return j;
}

GateSequence GateSequence::from_json(const nlohmann::json& j) {
  std::vector<GateEntry> entries;
  for (const auto& e : j.at("entries")) {
    entries.push_back({e.at("term").get<int>(),
                       Rational(e.at("coeff_num").get<std::int64_t>(),
                                e.at("coeff_den").get<std::int64_t>())});
  }
  return make_sequence(j.at("method").get<std::string>(),
                       j.at("targets").get<std::vector<std::int64_t>>(),
                       j.at("n").get<std::int64_t>(), std::move(entries));
}

LatticePath plan_2D(const std::vector<std::int64_t>& targets, std::int64_t n, TieBreak tie_break) {
  check_targets(targets, n);
  std::vector<std::int64_t> full(targets);
  for (auto& t : full) t *= n;
  const std::int64_t g = vector_gcd(full);
  std::vector<std::int64_t> unit(full);
  for (auto& t : unit) t /= g;
  return greedy_unit(unit, tie_break).repeat(g);
}

GateSequence symmetrize_2D(std::int64_t p, std::int64_t q, std::int64_t n) {
  check_targets({p, q}, n);
  if (p % 2 == 0 || q % 2 == 0) {
    throw PlanError("symmetrize_2D: both targets must be odd (plain plan_2D suffices otherwise)");
  }
  if (std::gcd(p, q) != 1) throw PlanError("symmetrize_2D: targets must be coprime");
  const LatticePath unit = greedy_unit({p, q}, TieBreak::LowerAxis);
  std::vector<int> doubled(unit.steps);
  doubled.insert(doubled.end(), unit.steps.rbegin(), unit.steps.rend());
  std::vector<GateEntry> entries;
  entries.reserve(doubled.size() * n);
  for (std::int64_t r = 0; r < n; ++r) {
    for (int axis : doubled) {
      entries.push_back({axis, Rational(1, 2 * (axis == 0 ? p : q) * n)});
    }
  }
  // Each half step is one unit of the doubled grid, so the sequence is
  // integral at resolution 2n.
  return make_sequence("2D-sym", {p, q}, 2 * n, std::move(entries));
}

LatticePath plan_2O(std::int64_t p, std::int64_t q, std::int64_t n, std::int64_t max_nodes) {
  check_targets({p, q}, n);
  const std::int64_t P = p * n, Q = q * n;
  if (P % 2 == 1 && Q % 2 == 1) {
    throw NoZeroAreaPath("plan_2O: no zero-area path exists when both p*n and q*n are odd; "
                         "double the grid to (" +
                         std::to_string(2 * P) + "," + std::to_string(2 * Q) + ") instead");
  }
  if ((P + 1) * (Q + 1) > max_nodes) {
    throw BudgetError("plan_2O: grid of " + std::to_string((P + 1) * (Q + 1)) +
                      " nodes exceeds the budget of " + std::to_string(max_nodes) +
                      " (error-table time grows as O(n^10)); raise the budget to override");
  }

  // Keep only states whose accumulated area weight can still return to zero:
  // the remaining right steps sit at heights in [j, Q] and the remaining up
  // steps at abscissae in [i, P], which bounds the reachable increment.
  const auto reachable = [&](std::int64_t i, std::int64_t j, std::int64_t w1) {
    const std::int64_t dmax = (Q - j) * P - (P - i) * j;
    const std::int64_t dmin = (Q - j) * i - (P - i) * Q;
    return w1 + dmin <= 0 && 0 <= w1 + dmax;
  };

  std::vector<StateMap> prev(Q + 1), cur(Q + 1);
  prev[0].emplace(WeightTriplet{0, 0, 0}, "");
  for (std::int64_t j = 1; j <= Q; ++j) {
    const WeightTriplet e = gridpath::edge_weight(0, j, Direction::Up);
    for (const auto& [w, s] : prev[j - 1]) {
      const WeightTriplet nw = w + e;
      if (reachable(0, j, nw.w1)) prev[j].emplace(nw, s + 'B');
    }
  }
  for (std::int64_t i = 1; i <= P; ++i) {
    for (std::int64_t j = 0; j <= Q; ++j) {
      StateMap states;
      const WeightTriplet er = gridpath::edge_weight(i, j, Direction::Right);
      for (const auto& [w, s] : prev[j]) {
        const WeightTriplet nw = w + er;
        if (!reachable(i, j, nw.w1)) continue;
        auto [it, inserted] = states.try_emplace(nw, s + 'A');
        if (!inserted && it->second < s + 'A') it->second = s + 'A';
      }
      if (j > 0) {
        const WeightTriplet eu = gridpath::edge_weight(i, j, Direction::Up);
        for (const auto& [w, s] : cur[j - 1]) {
          const WeightTriplet nw = w + eu;
          if (!reachable(i, j, nw.w1)) continue;
          auto [it, inserted] = states.try_emplace(nw, s + 'B');
          if (!inserted && it->second < s + 'B') it->second = s + 'B';
        }
      }
      cur[j] = std::move(states);
    }
    std::swap(prev, cur);
  }

  const std::string* best = nullptr;
  std::int64_t best_err = 0;
  for (const auto& [w, s] : prev[Q]) {
    if (w.w1 != 0) continue;
    const std::int64_t err = std::abs(w.w2) + std::abs(w.w3);
    if (!best || err < best_err || (err == best_err && s > *best)) {
      best = &s;
      best_err = err;
    }
  }
  if (!best) throw NoZeroAreaPath("plan_2O: no zero-area path found");  // unreachable after parity check
  return LatticePath::parse({P, Q}, *best);
}

GateSequence plan_2T(std::int64_t p, std::int64_t q, std::int64_t n) {
  check_targets({p, q}, n);
  if (p % 2 == 1 && q % 2 == 1) {
    throw PlanError("plan_2T: needs p or q even; both are odd");
  }
  std::vector<GateEntry> entries;
  entries.reserve(3 * n);
  for (std::int64_t r = 0; r < n; ++r) {
    if (p % 2 == 0) {
      entries.push_back({0, Rational(1, 2 * n)});
      entries.push_back({1, Rational(1, n)});
      entries.push_back({0, Rational(1, 2 * n)});
    } else {
      entries.push_back({1, Rational(1, 2 * n)});
      entries.push_back({0, Rational(1, n)});
      entries.push_back({1, Rational(1, 2 * n)});
    }
  }
  return make_sequence("2T", {p, q}, n, std::move(entries));
}

GateSequence plan_1T(std::int64_t p, std::int64_t q, std::int64_t n) {
  check_targets({p, q}, n);
  std::vector<GateEntry> entries;
  entries.reserve(2 * n);
  for (std::int64_t r = 0; r < n; ++r) {
    entries.push_back({0, Rational(1, n)});
    entries.push_back({1, Rational(1, n)});
  }
  return make_sequence("1T", {p, q}, n, std::move(entries));
}

LatticePath plan_naive_alternation(std::int64_t p, std::int64_t q, std::int64_t n) {
  check_targets({p, q}, n);
  const int lead = p >= q ? 0 : 1;
  const std::int64_t pairs = std::min(p, q);
  std::vector<int> steps;
  steps.reserve(p + q);
  for (std::int64_t k = 0; k < pairs; ++k) {
    steps.push_back(lead);
    steps.push_back(1 - lead);
  }
  for (std::int64_t k = 0; k < std::max(p, q) - pairs; ++k) steps.push_back(lead);
  return LatticePath::from_steps({p, q}, std::move(steps)).repeat(n);
}

GateSequence plan_ruth(std::int64_t p, std::int64_t q, std::int64_t n) {
  check_targets({p, q}, n);
  static constexpr std::pair<int, std::pair<std::int64_t, std::int64_t>> kCycle[] = {
      {0, {7, 24}}, {1, {2, 3}}, {0, {3, 4}}, {1, {-2, 3}}, {0, {-1, 24}}, {1, {1, 1}}};
  std::vector<GateEntry> entries;
  entries.reserve(6 * n);
  for (std::int64_t r = 0; r < n; ++r) {
    for (const auto& [term, c] : kCycle) {
      entries.push_back({term, Rational(c.first, c.second * n)});
    }
  }
  return make_sequence("ruth", {p, q}, n, std::move(entries));
}

GateSequence plan_best_continuous_2T(std::int64_t p, std::int64_t q, std::int64_t n) {
  check_targets({p, q}, n);
  // f(A-centered) = p^2 + 4 q^2, f(B-centered) = q^2 + 4 p^2; regions a/b of
  // the (p, q) plane (p >= q) pick the first, c/d the second.
  const bool a_outside = p * p + 4 * q * q <= q * q + 4 * p * p;
  std::vector<GateEntry> entries;
  entries.reserve(3 * n);
  const int outer = a_outside ? 0 : 1;
  for (std::int64_t r = 0; r < n; ++r) {
    entries.push_back({outer, Rational(1, 2 * n)});
    entries.push_back({1 - outer, Rational(1, n)});
    entries.push_back({outer, Rational(1, 2 * n)});
  }
  auto seq = make_sequence("cont2T", {p, q}, n, std::move(entries));
  return seq;
}

CdResult compute_CD(const SplitCoefficients& split, std::int64_t p, std::int64_t q) {
  const std::size_t M = split.b.size();
  if (split.a.size() != M + 1) {
    throw PlanError("compute_CD: need one more a-coefficient than b-coefficients");
  }
  Rational sum_a(0), sum_b(0);
  for (const auto& x : split.a) {
    if (x < Rational(0)) throw PlanError("compute_CD: negative a-coefficient");
    sum_a += x;
  }
  for (const auto& x : split.b) {
    if (x < Rational(0)) throw PlanError("compute_CD: negative b-coefficient");
    sum_b += x;
  }
  if (sum_a != Rational(1) || sum_b != Rational(1)) {
    throw PlanError("compute_CD: coefficients must sum to 1 per axis");
  }

  Rational C(0), D(0);
  Rational A_k(0), B_k(0), B_prev(0);
  for (std::size_t k = 1; k <= M; ++k) {
    A_k += split.a[k - 1];
    B_prev = B_k;
    B_k += split.b[k - 1];
    const Rational a_next = split.a[k];
    const Rational b_k = split.b[k - 1];
    C += Rational(2) * A_k * A_k * b_k - a_next * B_k * (a_next + Rational(2) * A_k);
    D += A_k * b_k * (b_k + Rational(2) * B_prev) - Rational(2) * a_next * B_k * B_k;
  }
  const Rational f = Rational(p * p) * C * C + Rational(q * q) * D * D;
  return {C, D, f};
}

CdResult path_CD(const LatticePath& path, std::int64_t p, std::int64_t q) {
  if (path.dims() != 2) throw PlanError("path_CD: dims == 2 only");
  if (path.targets[0] % p != 0 || path.targets[1] % q != 0 ||
      path.targets[0] / p != path.targets[1] / q) {
    throw PlanError("path_CD: path grid is not an integer scaling of (p, q)");
  }
  const std::int64_t s = path.targets[0] / p;
  const auto [m1, m2] = gridpath::third_moments(path);
  const Rational C = Rational(24) * m1 / Rational(s * s * s * p * p * q);
  const Rational D = Rational(24) * m2 / Rational(s * s * s * p * q * q);
  const Rational f = Rational(p * p) * C * C + Rational(q * q) * D * D;
  return {C, D, f};
}

double total_diagonal_distance(const LatticePath& path) {
  const int d = path.dims();
  double v2 = 0;
  for (auto t : path.targets) v2 += static_cast<double>(t) * static_cast<double>(t);
  std::vector<std::int64_t> pos(d, 0);
  double total = 0;
  for (int axis : path.steps) {
    ++pos[axis];
    double c2 = 0, cv = 0;
    for (int m = 0; m < d; ++m) {
      c2 += static_cast<double>(pos[m]) * pos[m];
      cv += static_cast<double>(pos[m]) * path.targets[m];
    }
    const double dist2 = c2 - cv * cv / v2;
    total += std::sqrt(std::max(0.0, dist2));
  }
  return total;
}

GateSequence sequence_from_path(const LatticePath& full_path, const std::string& method,
                                const std::vector<std::int64_t>& targets, std::int64_t n) {
  std::vector<GateEntry> entries;
  entries.reserve(full_path.steps.size());
  for (int axis : full_path.steps) {
    entries.push_back({axis, Rational(1, targets[axis] * n)});
  }
  return make_sequence(method, targets, n, std::move(entries));
}

GateSequence plan(const std::string& method, const std::vector<std::int64_t>& targets,
                  std::int64_t n) {
  check_targets(targets, n);
  if (method == "2D") {
    if (targets.size() == 2) {
      std::vector<std::int64_t> full{targets[0] * n, targets[1] * n};
      const std::int64_t g = vector_gcd(full);
      const std::int64_t up = full[0] / g, uq = full[1] / g;
      if (up % 2 == 1 && uq % 2 == 1) {
        // Both-odd unit: symmetrize at half steps to cancel the second-order
        // error. The doubled unit is repeated g times.
        const LatticePath unit = plan_2D({up, uq}, 1);
        std::vector<int> doubled(unit.steps);
        doubled.insert(doubled.end(), unit.steps.rbegin(), unit.steps.rend());
        std::vector<GateEntry> entries;
        entries.reserve(doubled.size() * g);
        for (std::int64_t r = 0; r < g; ++r) {
          for (int axis : doubled) {
            entries.push_back({axis, Rational(1, 2 * targets[axis] * n)});
          }
        }
        return make_sequence("2D-sym", targets, 2 * n, std::move(entries));
      }
    }
    return sequence_from_path(plan_2D(targets, n), "2D", targets, n);
  }
  if (method == "1T" && targets.size() != 2) {
    // d-operator first-order product: one factor per term per repetition.
    std::vector<GateEntry> entries;
    entries.reserve(targets.size() * n);
    for (std::int64_t r = 0; r < n; ++r) {
      for (int k = 0; k < static_cast<int>(targets.size()); ++k) {
        entries.push_back({k, Rational(1, n)});
      }
    }
    return make_sequence("1T", targets, n, std::move(entries));
  }
  if (targets.size() != 2) throw PlanError("method " + method + " supports two operators only");
  const std::int64_t p = targets[0], q = targets[1];
  if (method == "2O") return sequence_from_path(plan_2O(p, q, n), "2O", targets, n);
  if (method == "2T") return plan_2T(p, q, n);
  if (method == "1T") return plan_1T(p, q, n);
  if (method == "naive") {
    return sequence_from_path(plan_naive_alternation(p, q, n), "naive", targets, n);
  }
  if (method == "ruth") return plan_ruth(p, q, n);
  if (method == "cont2T") return plan_best_continuous_2T(p, q, n);
  throw PlanError("unknown method: " + method);
}

}  // namespace trotter::planners
