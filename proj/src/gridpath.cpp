#include "trotter/gridpath.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>

namespace trotter::gridpath {

namespace {

void check_targets(const std::vector<std::int64_t>& targets) {
  if (targets.size() < 2) throw DomainError("need at least two operator axes");
  for (auto t : targets) {
    if (t < 1) throw DomainError("all targets must be >= 1");
  }
}

void check_two_dims(const LatticePath& path, const char* op) {
  if (path.dims() != 2) {
    throw DimensionError(std::string(op) + ": third-order geometry is defined for two operators only");
  }
}

}  // namespace

LatticePath LatticePath::from_steps(std::vector<std::int64_t> targets, std::vector<int> steps) {
  check_targets(targets);
  std::vector<std::int64_t> pos(targets.size(), 0);
  for (int axis : steps) {
    if (axis < 0 || axis >= static_cast<int>(targets.size())) {
      throw DomainError("step axis out of range");
    }
    ++pos[axis];
  }
  if (pos != targets) throw DomainError("path does not end at the target corner");
  return LatticePath{std::move(targets), std::move(steps)};
}

LatticePath LatticePath::parse(std::vector<std::int64_t> targets, const std::string& letters) {
  std::vector<int> steps;
  steps.reserve(letters.size());
  for (char c : letters) {
    if (c < 'A' || c > 'Z') throw DomainError("step letters must be in A..Z");
    steps.push_back(c - 'A');
  }
  return from_steps(std::move(targets), std::move(steps));
}

std::string LatticePath::step_string() const {
  std::string s;
  s.reserve(steps.size());
  for (int axis : steps) s.push_back(static_cast<char>('A' + axis));
  return s;
}

LatticePath LatticePath::mirrored() const {
  if (dims() != 2) throw DimensionError("mirrored: dims == 2 only");
  std::vector<int> rev(steps.rbegin(), steps.rend());
  for (int& axis : rev) axis = 1 - axis;
  return LatticePath{{targets[1], targets[0]}, std::move(rev)};
}

LatticePath LatticePath::concat(const LatticePath& tail) const {
  if (dims() != tail.dims()) throw DomainError("concat: dimension mismatch");
  std::vector<std::int64_t> t(targets);
  for (int k = 0; k < dims(); ++k) t[k] += tail.targets[k];
  std::vector<int> s(steps);
  s.insert(s.end(), tail.steps.begin(), tail.steps.end());
  return LatticePath{std::move(t), std::move(s)};
}

LatticePath LatticePath::repeat(std::int64_t times) const {
  if (times < 1) throw DomainError("repeat count must be >= 1");
  std::vector<std::int64_t> t(targets);
  for (auto& x : t) x *= times;
  std::vector<int> s;
  s.reserve(steps.size() * times);
  for (std::int64_t r = 0; r < times; ++r) s.insert(s.end(), steps.begin(), steps.end());
  return LatticePath{std::move(t), std::move(s)};
}

nlohmann::json LatticePath::to_json() const {
  return nlohmann::json{{"targets", targets}, {"steps", step_string()}};
}

LatticePath LatticePath::from_json(const nlohmann::json& j) {
  return parse(j.at("targets").get<std::vector<std::int64_t>>(), j.at("steps").get<std::string>());
}

WeightTriplet edge_weight(std::int64_t i, std::int64_t j, Direction dir) {
  if (i < 0 || j < 0) throw DomainError("edge_weight: negative node index");
  if (dir == Direction::Right) {
    return {-j, -j * (i * i - (i - 1) * (i - 1)), -2 * j * j};
  }
  return {i, 2 * i * i, i * (j * j - (j - 1) * (j - 1))};
}

WeightTriplet path_weight(const LatticePath& path) {
  check_two_dims(path, "path_weight");
  WeightTriplet acc;
  std::int64_t i = 0, j = 0;
  for (int axis : path.steps) {
    if (axis == 0) {
      ++i;
      acc = acc + edge_weight(i, j, Direction::Right);
    } else {
      ++j;
      acc = acc + edge_weight(i, j, Direction::Up);
    }
  }
  return acc;
}

Rational signed_area(const LatticePath& path) {
  check_two_dims(path, "signed_area");
  return Rational(path_weight(path).w1, 2);
}

std::pair<Rational, Rational> third_moments(const LatticePath& path) {
  check_two_dims(path, "third_moments");
  const WeightTriplet w = path_weight(path);
  return {Rational(w.w2, 6), Rational(w.w3, 6)};
}

ErrorTriplet error_triplet(const LatticePath& path) {
  check_two_dims(path, "error_triplet");
  const WeightTriplet w = path_weight(path);
  return {Rational(w.w1, 2), Rational(w.w2, 6), Rational(w.w3, 6)};
}

void enumerate_paths(std::int64_t p, std::int64_t q, int max_total,
                     const std::function<void(const LatticePath&)>& visit) {
  check_targets({p, q});
  if (p + q > max_total) {
    throw BudgetError("enumerate_paths: p + q exceeds the enumeration budget of " +
                      std::to_string(max_total));
  }
  std::vector<int> steps;
  steps.reserve(p + q);
  // Lexicographic (A < B) depth-first walk.
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t i, std::int64_t j) {
    if (i == p && j == q) {
      visit(LatticePath{{p, q}, steps});
      return;
    }
    if (i < p) {
      steps.push_back(0);
      rec(i + 1, j);
      steps.pop_back();
    }
    if (j < q) {
      steps.push_back(1);
      rec(i, j + 1);
      steps.pop_back();
    }
  };
  rec(0, 0);
}

}  // namespace trotter::gridpath
