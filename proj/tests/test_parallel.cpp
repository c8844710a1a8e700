#include "trotter/evaluate.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace trotter;
using namespace trotter::evaluate;
using linalg::HamiltonianSpec;

TEST_CASE("parallel sweep equals the serial reference bit for bit") {
  const auto spec = HamiltonianSpec::named("tfi2", {12, 8});
  const auto grid = log_grid(1e-3, 3e-1, 40);
  for (const char* method : {"2O", "2D", "2T", "1T"}) {
    const auto serial = sweep_time({method}, spec, grid, 1, false);
    const auto parallel = sweep_time({method}, spec, grid, 1, true);
    REQUIRE(serial.size() == 1);
    REQUIRE(parallel.size() == 1);
    REQUIRE(serial[0].samples.size() == parallel[0].samples.size());
    for (size_t i = 0; i < grid.size(); ++i) {
      REQUIRE(serial[0].samples[i].t == parallel[0].samples[i].t);
      REQUIRE(serial[0].samples[i].F == parallel[0].samples[i].F);
      REQUIRE(serial[0].samples[i].Fl == parallel[0].samples[i].Fl);
      REQUIRE(serial[0].samples[i].capped == parallel[0].samples[i].capped);
    }
  }
}

TEST_CASE("parallel histogram equals the serial reference") {
  const auto serial = crossover_histogram(12, 8, 1, 12, 2024, 4, false);
  const auto parallel = crossover_histogram(12, 8, 1, 12, 2024, 4, true);
  CHECK(serial.values == parallel.values);
  CHECK(serial.skipped == parallel.skipped);
  CHECK(serial.mean == parallel.mean);
  CHECK(serial.variance == parallel.variance);
  CHECK(serial.bin_counts == parallel.bin_counts);
}

TEST_CASE("thread cap of one still yields identical results") {
  setenv("TROTTER_PLANNER_THREADS", "1", 1);
  const auto capped = crossover_histogram(12, 8, 1, 6, 5, 4, true);
  unsetenv("TROTTER_PLANNER_THREADS");
  const auto free_run = crossover_histogram(12, 8, 1, 6, 5, 4, true);
  CHECK(capped.values == free_run.values);
}
