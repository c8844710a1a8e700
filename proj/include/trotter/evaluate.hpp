#pragma once

#include "trotter/linalg.hpp"
#include "trotter/planners.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace trotter::evaluate {

using linalg::Matrix;

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Log-fidelity is capped here when 1 - F underflows double precision.
constexpr double kLogFidelityCap = 14.0;

struct FidelitySample {
  double t = 0;
  double F = 0;
  double Fl = 0;
  bool capped = false;
};

struct FidelityCurve {
  std::string method;
  std::vector<std::int64_t> targets;
  std::int64_t n = 1;
  std::uint64_t seed = 0;
  std::vector<FidelitySample> samples;  // t strictly increasing
};

struct SlopeFit {
  double a = 0;         // slope magnitude of Fl = -a log10 t + b
  double b = 0;
  double residual = 0;  // rms residual of the fit
};

struct CrossoverStats {
  std::vector<double> values;  // found crossovers, in t ||A|| / n units
  std::int64_t skipped = 0;    // samples with no crossover in range
  double mean = 0;
  double variance = 0;         // unbiased sample variance
  std::vector<double> bin_edges;
  std::vector<std::int64_t> bin_counts;
};

struct ResourceCount {
  std::int64_t switchings = 0;
  std::int64_t trotter_steps = 0;
  std::int64_t n_required = 0;
};

/// Average gate fidelity |Tr(U1^dag U2)| / Tr(U1^dag U1), clamped to [0, 1].
double fidelity(const Matrix& U1, const Matrix& U2);

double frobenius_error(const Matrix& U1, const Matrix& U2);

/// -log10(1 - F), capped at kLogFidelityCap.
double log_fidelity(double F, bool* capped = nullptr);

std::vector<double> log_grid(double t_min, double t_max, int points);

/// Thread budget: TROTTER_PLANNER_THREADS caps OpenMP parallelism.
int thread_budget();

/// One fidelity curve for a planned sequence over the time grid. The exact
/// target exp(-i t sum w_k H_k) is recomputed per t. Results are a pure
/// function of the inputs, independent of worker count.
FidelityCurve sweep_sequence(const planners::GateSequence& seq, const std::vector<Matrix>& hams,
                             const std::vector<double>& t_grid, bool parallel = true);

/// Curves for several methods over a common grid.
std::vector<FidelityCurve> sweep_time(const std::vector<std::string>& methods,
                                      const linalg::HamiltonianSpec& spec,
                                      const std::vector<double>& t_grid, std::int64_t n,
                                      bool parallel = true);

/// Least-squares fit of Fl against log10 t over [t_min, t_max]; needs at
/// least 4 uncapped samples in the window.
SlopeFit fit_slope(const FidelityCurve& curve, double t_min, double t_max);

/// First sign change of Fl(a) - Fl(b) scanning upward in t, refined by
/// bisection on `fl_diff` to relative t-tolerance 1e-3. The result is
/// multiplied by norm_scale (pass ||H_1||_F / n for the paper's units).
std::optional<double> find_crossover(const FidelityCurve& a, const FidelityCurve& b,
                                     const std::function<double(double)>& fl_diff,
                                     double norm_scale);

/// 2O-vs-2D crossover statistics over seeded random Hermitian pairs of the
/// given dimension. Sample k draws its own seeds via split_seed, so the
/// histogram is reproducible for any worker count.
CrossoverStats crossover_histogram(std::int64_t p, std::int64_t q, std::int64_t n,
                                   std::int64_t samples, std::uint64_t seed, int dim = 4,
                                   bool parallel = true);

/// Smallest n reaching target_F at time t (doubling then bisection), with
/// switching and Trotter-step counts of the resulting schedule.
ResourceCount count_resources(const std::string& method, double target_F,
                              const linalg::HamiltonianSpec& spec, double t,
                              std::int64_t n_cap = 1 << 16);

// Crossover scan defaults (t ||A|| / n units).
constexpr double kCrossoverScanMin = 0.01;
constexpr double kCrossoverScanMax = 1.0;
constexpr int kCrossoverScanPoints = 200;

}  // namespace trotter::evaluate
