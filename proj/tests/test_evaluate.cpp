#include "trotter/evaluate.hpp"
#include "trotter/report.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>

using namespace trotter;
using namespace trotter::evaluate;
using linalg::HamiltonianSpec;
using linalg::Matrix;

TEST_CASE("fidelity worked values") {
  const Matrix id = Matrix::Identity(4, 4);
  CHECK(fidelity(id, id) == doctest::Approx(1.0));
  Matrix half = id;
  half(3, 3) = -1.0;
  CHECK(fidelity(id, half) == doctest::Approx(0.5));
  // global phase invariance
  CHECK(fidelity(id, std::polar(1.0, 0.9) * id) == doctest::Approx(1.0));
}

TEST_CASE("frobenius error closed forms") {
  const Matrix id = Matrix::Identity(2, 2);
  CHECK(frobenius_error(id, id) == doctest::Approx(0.0));
  CHECK(frobenius_error(id, -id) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("log fidelity capping") {
  bool capped = false;
  CHECK(log_fidelity(0.9, &capped) == doctest::Approx(1.0));
  CHECK_FALSE(capped);
  CHECK(log_fidelity(1.0, &capped) == kLogFidelityCap);
  CHECK(capped);
  CHECK(log_fidelity(1.0 - 1e-15, &capped) == kLogFidelityCap);
  CHECK(capped);
}

TEST_CASE("log grid endpoints and monotonicity") {
  const auto grid = log_grid(1e-3, 1e-1, 5);
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == doctest::Approx(1e-3));
  CHECK(grid.back() == doctest::Approx(1e-1));
  CHECK(grid[2] == doctest::Approx(1e-2));
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("sweep produces increasing error with t for 1T") {
  const auto spec = HamiltonianSpec::named("tfi2", {4, 3});
  const auto curves = sweep_time({"1T"}, spec, log_grid(1e-3, 1e-1, 20), 1);
  REQUIRE(curves.size() == 1);
  const auto& c = curves[0];
  REQUIRE(c.samples.size() == 20);
  for (size_t i = 1; i < c.samples.size(); ++i) {
    CHECK(c.samples[i].F <= c.samples[i - 1].F + 1e-12);
  }
}

TEST_CASE("synthetic slope fit recovers the exponent") {
  FidelityCurve curve;
  for (double lg = -3.0; lg <= -1.0; lg += 0.1) {
    const double t = std::pow(10.0, lg);
    FidelitySample s;
    s.t = t;
    s.Fl = -4.0 * lg + 0.25;
    s.F = 1.0 - std::pow(10.0, -s.Fl);
    curve.samples.push_back(s);
  }
  const auto fit = fit_slope(curve, 1e-3, 1e-1);
  CHECK(fit.a == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(fit.b == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(fit.residual < 1e-9);

  CHECK_THROWS_AS(fit_slope(curve, 1e-3, 1.2e-3), EvalError);
  curve.samples[5].capped = true;
  CHECK_THROWS_AS(fit_slope(curve, 1e-3, 1e-1), EvalError);
}

TEST_CASE("find_crossover on synthetic curves") {
  auto make = [](double slope, double offset) {
    FidelityCurve c;
    for (double lg = -2.0; lg <= 0.0; lg += 0.05) {
      FidelitySample s;
      s.t = std::pow(10.0, lg);
      s.Fl = -slope * lg + offset;
      c.samples.push_back(s);
    }
    return c;
  };
  // Fl_a - Fl_b = (b_slope - a_slope) lg + (a_off - b_off); root at lg = -0.5
  const auto a = make(6.0, -2.0);
  const auto b = make(4.0, -1.0);
  auto diff = [](double t) { return (-6.0 * std::log10(t) - 2.0) - (-4.0 * std::log10(t) - 1.0); };
  const auto hit = find_crossover(a, b, diff, 1.0);
  REQUIRE(hit.has_value());
  CHECK(*hit == doctest::Approx(std::pow(10.0, -0.5)).epsilon(2e-3));
  // scaling is applied verbatim
  const auto scaled = find_crossover(a, b, diff, 2.5);
  REQUIRE(scaled.has_value());
  CHECK(*scaled == doctest::Approx(2.5 * std::pow(10.0, -0.5)).epsilon(2e-3));
  // parallel curves never cross
  const auto none = find_crossover(a, make(6.0, -3.0),
                                   [](double) { return 1.0; }, 1.0);
  CHECK_FALSE(none.has_value());
}

TEST_CASE("histogram basics and reproducibility") {
  const auto s1 = crossover_histogram(12, 8, 1, 8, 1234);
  const auto s2 = crossover_histogram(12, 8, 1, 8, 1234);
  CHECK(s1.values == s2.values);
  CHECK(s1.mean == s2.mean);
  CHECK(s1.values.size() + s1.skipped == 8);
  CHECK(s1.bin_edges.size() == s1.bin_counts.size() + 1);
  std::int64_t total = 0;
  for (auto c : s1.bin_counts) total += c;
  CHECK(total == static_cast<std::int64_t>(s1.values.size()));
  for (double v : s1.values) {
    CHECK(v >= kCrossoverScanMin);
    CHECK(v <= kCrossoverScanMax);
  }
  const auto other = crossover_histogram(12, 8, 1, 8, 99);
  CHECK(other.values != s1.values);
  CHECK_THROWS_AS(crossover_histogram(12, 8, 1, 0, 1), EvalError);
}

TEST_CASE("resource counting is monotone in the fidelity target") {
  const auto spec = HamiltonianSpec::named("tfi2", {6, 4});
  const auto low = count_resources("2T", 0.9, spec, 1.0);
  const auto high = count_resources("2T", 0.999, spec, 1.0);
  CHECK(low.n_required >= 1);
  CHECK(high.n_required >= low.n_required);
  CHECK(high.trotter_steps >= low.trotter_steps);
  CHECK_THROWS_AS(count_resources("2T", 1.0, spec, 1.0, 64), EvalError);
}

TEST_CASE("curve csv output is byte stable") {
  const auto spec = HamiltonianSpec::named("tfi2", {4, 3});
  const auto curves = sweep_time({"2T"}, spec, log_grid(1e-3, 1e-2, 5), 1);
  std::ostringstream a, b;
  report::write_curve_csv(a, curves[0]);
  report::write_curve_csv(b, curves[0]);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("# trotter-sweep v1", 0) == 0);
  CHECK(a.str().find("t,F,F_l") != std::string::npos);
}

TEST_CASE("histogram stats json schema") {
  const auto stats = crossover_histogram(12, 8, 1, 4, 7);
  const auto j = report::stats_to_json(stats);
  CHECK(j.at("schema") == "trotter-histogram-stats-v1");
  CHECK(j.at("found") == stats.values.size());
  CHECK(j.contains("mean"));
  CHECK(j.contains("variance"));
}

TEST_CASE("thread budget honors the env cap") {
  CHECK(thread_budget() >= 1);
  setenv("TROTTER_PLANNER_THREADS", "1", 1);
  CHECK(thread_budget() == 1);
  unsetenv("TROTTER_PLANNER_THREADS");
}
