#pragma once

#include "trotter/gridpath.hpp"
#include "trotter/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace trotter::planners {

struct PlanError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// Thrown when no zero-area path exists on the requested grid.
struct NoZeroAreaPath : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GateEntry {
  int term = 0;       // axis index into the Hamiltonian list
  Rational coeff;     // fraction of the full axis weight applied by this entry

  bool operator==(const GateEntry&) const = default;
};

/// Fully unrolled executable schedule. Entry (k, c) realizes
/// exp(-i H_k w_k c t); per-axis coefficients sum to 1 so the sequence
/// targets exp(-i t sum_k w_k H_k) at first order. n records the Trotter
/// repetition count the schedule was built from (minimum step t/n).
struct GateSequence {
  std::string method;
  std::vector<std::int64_t> targets;
  std::int64_t n = 1;
  std::vector<GateEntry> entries;
  // True iff every entry is a nonnegative integer count of minimum steps,
  // i.e. coeff * target * n is a nonnegative integer. Equivalent to the
  // existence of the lattice-path rendering below.
  bool integral = false;

  // Lattice rendering on the (p n, q n) grid, one node per minimum step;
  // present exactly when the sequence is integral.
  std::optional<gridpath::LatticePath> to_path() const;

  // Number of adjacent entry pairs generated by different terms.
  std::int64_t switchings() const;

  nlohmann::json to_json() const;
  static GateSequence from_json(const nlohmann::json& j);
};

/// Symmetrized split coefficients a_1..a_{M+1}, b_1..b_M, each nonnegative
/// and summing to 1 per axis.
struct SplitCoefficients {
  std::vector<Rational> a;
  std::vector<Rational> b;
};

enum class TieBreak {
  LowerAxis,      // default; reproduces the worked three-operator sequences
  LargerDeficit,  // prefer the axis with more remaining steps
};

/// Greedy diagonal-hugging ordering on the full (targets * n) grid. Targets
/// are first reduced by their gcd and the unit path repeated.
gridpath::LatticePath plan_2D(const std::vector<std::int64_t>& targets, std::int64_t n,
                              TieBreak tie_break = TieBreak::LowerAxis);

/// Greedy path for coprime odd (p, q) concatenated with its step reversal,
/// at half coefficients; the doubled unit cancels the second-order error.
GateSequence symmetrize_2D(std::int64_t p, std::int64_t q, std::int64_t n);

/// Zero-area path with minimal |moment| objective, by dynamic programming
/// over the integer edge weights on the full (p n, q n) grid.
gridpath::LatticePath plan_2O(std::int64_t p, std::int64_t q, std::int64_t n,
                              std::int64_t max_nodes = 4096);

/// Conventional symmetric second-order formula (p even, or the mirrored
/// form when q is even).
GateSequence plan_2T(std::int64_t p, std::int64_t q, std::int64_t n);

/// First-order Trotter product.
GateSequence plan_1T(std::int64_t p, std::int64_t q, std::int64_t n);

/// Strict A,B,A,B,... prefix (starting from the heavier axis) followed by
/// the remainder of the larger count, repeated n times.
gridpath::LatticePath plan_naive_alternation(std::int64_t p, std::int64_t q, std::int64_t n);

/// Third-order formula with coefficients (7/24, 2/3, 3/4, -2/3, -1/24, 1);
/// contains backward steps, so never integral.
GateSequence plan_ruth(std::int64_t p, std::int64_t q, std::int64_t n);

/// Continuous-resolution symmetric formula: picks the A- or B-centered form
/// by the smaller third-order error norm min(p^2 + 4q^2, q^2 + 4p^2).
GateSequence plan_best_continuous_2T(std::int64_t p, std::int64_t q, std::int64_t n);

struct CdResult {
  Rational C;
  Rational D;
  Rational f;  // p^2 C^2 + q^2 D^2
};

/// Third-order coefficients of a symmetrized split.
CdResult compute_CD(const SplitCoefficients& split, std::int64_t p, std::int64_t q);

/// Third-order coefficients of a lattice path for base weights (p, q); the
/// path may live on a scaled grid (s p, s q).
CdResult path_CD(const gridpath::LatticePath& path, std::int64_t p, std::int64_t q);

/// Total Euclidean node-to-diagonal distance of a path (the 2D objective).
double total_diagonal_distance(const gridpath::LatticePath& path);

/// Plans by method name: 1T, 2T, 2D, 2O, ruth, naive, cont2T. Path-valued
/// planners are wrapped as integral gate sequences.
GateSequence plan(const std::string& method, const std::vector<std::int64_t>& targets,
                  std::int64_t n);

/// Wraps a path on the (p n, q n, ...) grid as an integral gate sequence
/// with base weights `targets`.
GateSequence sequence_from_path(const gridpath::LatticePath& full_path, const std::string& method,
                                const std::vector<std::int64_t>& targets, std::int64_t n);

}  // namespace trotter::planners
