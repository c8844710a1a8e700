#pragma once

#include "trotter/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trotter::gridpath {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A Trotter ordering as a directed monotone path on the integer grid.
/// Step k advances position by +1 along axis steps[k]; the path must end
/// exactly at `targets`.
struct LatticePath {
  std::vector<std::int64_t> targets;  // all >= 1
  std::vector<int> steps;             // axis indices in [0, dims)

  int dims() const { return static_cast<int>(targets.size()); }
  std::int64_t length() const { return static_cast<std::int64_t>(steps.size()); }

  // Validating constructors.
  static LatticePath from_steps(std::vector<std::int64_t> targets, std::vector<int> steps);
  // Parses the compact alphabet: axis 0 = 'A', axis 1 = 'B', ...
  static LatticePath parse(std::vector<std::int64_t> targets, const std::string& letters);

  std::string step_string() const;

  // Reverse step order and swap the two axes (dims == 2 only).
  LatticePath mirrored() const;
  // This path followed by `tail` on the summed grid.
  LatticePath concat(const LatticePath& tail) const;
  // This path repeated `times` on the scaled grid.
  LatticePath repeat(std::int64_t times) const;

  nlohmann::json to_json() const;
  static LatticePath from_json(const nlohmann::json& j);

  bool operator==(const LatticePath&) const = default;
};

/// Exact coefficients of [A,B], [A,[A,B]] and [B,[A,B]] in the expansion
/// of the path's Trotter error.
struct ErrorTriplet {
  Rational e2;
  Rational e3a;
  Rational e3b;

  bool operator==(const ErrorTriplet&) const = default;
};

/// Integer edge weights of the error-table construction. Components are
/// (2*e2, 6*e3a, 6*e3b) of the edge's contribution, so sums stay in pure
/// integer arithmetic.
struct WeightTriplet {
  std::int64_t w1 = 0;
  std::int64_t w2 = 0;
  std::int64_t w3 = 0;

  WeightTriplet operator+(const WeightTriplet& o) const { return {w1 + o.w1, w2 + o.w2, w3 + o.w3}; }
  bool operator==(const WeightTriplet&) const = default;
};

enum class Direction { Right, Up };

/// Weight of the edge ending at node (i,j): Right connects (i-1,j)->(i,j),
/// Up connects (i,j-1)->(i,j).
WeightTriplet edge_weight(std::int64_t i, std::int64_t j, Direction dir);

/// Area between the path and the straight diagonal to the target corner,
/// density +1 below the diagonal and -1 above. Zero iff the ordering is a
/// second-order expansion. dims == 2 only.
Rational signed_area(const LatticePath& path);

/// (integral of x1, integral of x2) over the same signed region.
std::pair<Rational, Rational> third_moments(const LatticePath& path);

ErrorTriplet error_triplet(const LatticePath& path);

/// Sum of edge weights along the path; equals (2*e2, 6*e3a, 6*e3b).
WeightTriplet path_weight(const LatticePath& path);

/// Visits every monotone path from (0,0) to (p,q) exactly once, in
/// lexicographic step-string order. Brute-force oracle; refuses when
/// p + q > max_total.
void enumerate_paths(std::int64_t p, std::int64_t q, int max_total,
                     const std::function<void(const LatticePath&)>& visit);

constexpr int kDefaultEnumerationBudget = 16;

}  // namespace trotter::gridpath
