#include "trotter/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace trotter::evaluate {

double fidelity(const Matrix& U1, const Matrix& U2) {
  if (U1.rows() != U2.rows() || U1.cols() != U2.cols()) {
    throw EvalError("fidelity: dimension mismatch");
  }
  const double denom = (U1.adjoint() * U1).trace().real();
  const double f = std::abs((U1.adjoint() * U2).trace()) / denom;
  return std::clamp(f, 0.0, 1.0);
}

double frobenius_error(const Matrix& U1, const Matrix& U2) {
  if (U1.rows() != U2.rows() || U1.cols() != U2.cols()) {
    throw EvalError("frobenius_error: dimension mismatch");
  }
  return (U1 - U2).norm();
}

double log_fidelity(double F, bool* capped) {
  const double defect = 1.0 - F;
  if (defect < 1e-14) {
    if (capped) *capped = true;
    return kLogFidelityCap;
  }
  if (capped) *capped = false;
  return -std::log10(defect);
}

std::vector<double> log_grid(double t_min, double t_max, int points) {
  if (points < 2 || t_min <= 0 || t_max <= t_min) throw EvalError("log_grid: invalid range");
  std::vector<double> grid(points);
  const double l0 = std::log10(t_min), l1 = std::log10(t_max);
  for (int k = 0; k < points; ++k) {
    grid[k] = std::pow(10.0, l0 + (l1 - l0) * k / (points - 1));
  }
  return grid;
}

int thread_budget() {
#ifdef _OPENMP
  int budget = omp_get_max_threads();
  if (const char* env = std::getenv("TROTTER_PLANNER_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) budget = std::min(budget, cap);
  }
  return budget;
#else
  return 1;
#endif
}

FidelityCurve sweep_sequence(const planners::GateSequence& seq, const std::vector<Matrix>& hams,
                             const std::vector<double>& t_grid, bool parallel) {
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (t_grid[k] <= t_grid[k - 1]) throw EvalError("sweep: t grid must be strictly increasing");
  }
  if (t_grid.empty()) throw EvalError("sweep: empty t grid");
  FidelityCurve curve;
  curve.method = seq.method;
  curve.targets = seq.targets;
  curve.n = seq.n;
  curve.samples.resize(t_grid.size());
  const int threads = parallel ? thread_budget() : 1;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(t_grid.size()); ++k) {
    const double t = t_grid[k];
    const Matrix exact = linalg::exact_unitary(hams, seq.targets, t);
    const Matrix approx = linalg::sequence_to_unitary(seq, hams, t);
    FidelitySample s;
    s.t = t;
    s.F = fidelity(exact, approx);
    s.Fl = log_fidelity(s.F, &s.capped);
    curve.samples[k] = s;
  }
  return curve;
}

std::vector<FidelityCurve> sweep_time(const std::vector<std::string>& methods,
                                      const linalg::HamiltonianSpec& spec,
                                      const std::vector<double>& t_grid, std::int64_t n,
                                      bool parallel) {
  const auto hams = linalg::build_model(spec);
  std::vector<FidelityCurve> curves;
  curves.reserve(methods.size());
  for (const auto& m : methods) {
    curves.push_back(
        sweep_sequence(planners::plan(m, spec.weights, n), hams, t_grid, parallel));
  }
  return curves;
}

SlopeFit fit_slope(const FidelityCurve& curve, double t_min, double t_max) {
  std::vector<double> xs, ys;
  for (const auto& s : curve.samples) {
    if (s.t < t_min || s.t > t_max) continue;
    if (s.capped) throw EvalError("fit_slope: capped log-fidelity inside the fit window");
    xs.push_back(std::log10(s.t));
    ys.push_back(s.Fl);
  }
  if (xs.size() < 4) throw EvalError("fit_slope: need at least 4 samples in the window");
  const std::size_t m = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double rss = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double r = ys[k] - (slope * xs[k] + intercept);
    rss += r * r;
  }
  return {-slope, intercept, std::sqrt(rss / m)};
}

std::optional<double> find_crossover(const FidelityCurve& a, const FidelityCurve& b,
                                     const std::function<double(double)>& fl_diff,
                                     double norm_scale) {
  if (a.samples.size() != b.samples.size()) throw EvalError("find_crossover: grid mismatch");
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    if (a.samples[k].t != b.samples[k].t) throw EvalError("find_crossover: grid mismatch");
  }
  for (std::size_t k = 1; k < a.samples.size(); ++k) {
    const double d0 = a.samples[k - 1].Fl - b.samples[k - 1].Fl;
    const double d1 = a.samples[k].Fl - b.samples[k].Fl;
    if (d0 == 0.0) continue;  // exact ties do not bracket
    if (d1 == 0.0) return a.samples[k].t * norm_scale;
    if ((d0 < 0) == (d1 < 0)) continue;
    double lo = a.samples[k - 1].t, hi = a.samples[k].t;
    double dlo = d0;
    while ((hi - lo) / hi > 1e-3) {
      const double mid = std::sqrt(lo * hi);
      const double dm = fl_diff ? fl_diff(mid) : 0.0;
      if (!fl_diff) break;
      if (dm == 0.0) return mid * norm_scale;
      if ((dm < 0) == (dlo < 0)) {
        lo = mid;
        dlo = dm;
      } else {
        hi = mid;
      }
    }
    return std::sqrt(lo * hi) * norm_scale;
  }
  return std::nullopt;
}

CrossoverStats crossover_histogram(std::int64_t p, std::int64_t q, std::int64_t n,
                                   std::int64_t samples, std::uint64_t seed, int dim,
                                   bool parallel) {
  if (samples < 1) throw EvalError("crossover_histogram: samples must be >= 1");
  const auto path_2o = planners::plan_2O(p, q, n);
  const auto seq_2o = planners::sequence_from_path(path_2o, "2O", {p, q}, n);
  const auto seq_2d = planners::plan("2D", {p, q}, n);
  const auto grid_u = log_grid(kCrossoverScanMin, kCrossoverScanMax, kCrossoverScanPoints);

  std::vector<std::optional<double>> found(samples);
  const int threads = parallel ? thread_budget() : 1;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t k = 0; k < samples; ++k) {
    const Matrix h1 = linalg::random_hermitian(dim, linalg::split_seed(seed, 2 * k));
    const Matrix h2 = linalg::random_hermitian(dim, linalg::split_seed(seed, 2 * k + 1));
    const std::vector<Matrix> hams{h1, h2};
    const double norm_a = h1.norm();  // Frobenius norm of A at t = 1
    const auto fl_at = [&](const planners::GateSequence& s, double t) {
      const Matrix exact = linalg::exact_unitary(hams, {p, q}, t);
      return log_fidelity(fidelity(exact, linalg::sequence_to_unitary(s, hams, t)));
    };
    // Scan in normalized units u = t ||A|| / n.
    FidelityCurve ca, cb;
    ca.samples.resize(grid_u.size());
    cb.samples.resize(grid_u.size());
    for (std::size_t i = 0; i < grid_u.size(); ++i) {
      const double t = grid_u[i] * static_cast<double>(n) / norm_a;
      ca.samples[i] = {t, 0, fl_at(seq_2d, t), false};
      cb.samples[i] = {t, 0, fl_at(seq_2o, t), false};
    }
    found[k] = find_crossover(
        ca, cb, [&](double t) { return fl_at(seq_2d, t) - fl_at(seq_2o, t); },
        norm_a / static_cast<double>(n));
  }

  CrossoverStats stats;
  for (const auto& v : found) {
    if (v) {
      stats.values.push_back(*v);
    } else {
      ++stats.skipped;
    }
  }
  if (stats.values.empty()) throw EvalError("crossover_histogram: no sample produced a crossover");
  double sum = 0;
  for (double v : stats.values) sum += v;
  stats.mean = sum / stats.values.size();
  double ss = 0;
  for (double v : stats.values) ss += (v - stats.mean) * (v - stats.mean);
  stats.variance = stats.values.size() > 1 ? ss / (stats.values.size() - 1) : 0.0;

  const auto [lo_it, hi_it] = std::minmax_element(stats.values.begin(), stats.values.end());
  const double lo = *lo_it, hi = std::max(*hi_it, *lo_it + 1e-12);
  constexpr int kBins = 40;
  stats.bin_edges.resize(kBins + 1);
  stats.bin_counts.assign(kBins, 0);
  for (int bin = 0; bin <= kBins; ++bin) {
    stats.bin_edges[bin] = lo + (hi - lo) * bin / kBins;
  }
  for (double v : stats.values) {
    int bin = static_cast<int>((v - lo) / (hi - lo) * kBins);
    bin = std::clamp(bin, 0, kBins - 1);
    ++stats.bin_counts[bin];
  }
  return stats;
}

ResourceCount count_resources(const std::string& method, double target_F,
                              const linalg::HamiltonianSpec& spec, double t,
                              std::int64_t n_cap) {
  if (!(target_F > 0.0 && target_F < 1.0)) {
    throw EvalError("count_resources: target fidelity must lie in (0, 1)");
  }
  const auto hams = linalg::build_model(spec);
  const auto reaches = [&](std::int64_t n) {
    const auto seq = planners::plan(method, spec.weights, n);
    const Matrix exact = linalg::exact_unitary(hams, spec.weights, t);
    return fidelity(exact, linalg::sequence_to_unitary(seq, hams, t)) >= target_F;
  };
  std::int64_t hi = 1;
  while (!reaches(hi)) {
    hi *= 2;
    if (hi > n_cap) {
      throw EvalError("count_resources: target fidelity unreachable within n cap " +
                      std::to_string(n_cap));
    }
  }
  std::int64_t lo = hi / 2;  // lo unreachable (or 0), hi reachable
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (mid == 0 || reaches(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const auto seq = planners::plan(method, spec.weights, hi);
  std::int64_t steps_per_unit = 0;
  for (auto w : spec.weights) steps_per_unit += w;
  // Trotter steps of the minimal integral rendering: the smallest grid scale
  // m with every entry an integer count of steps gives m * sum(weights)
  // steps in total (per-axis coefficients sum to 1). Sequences with negative
  // coefficients have no rendering; fall back to the repetition count.
  std::int64_t scale = 1;
  bool renderable = true;
  for (const auto& e : seq.entries) {
    if (e.coeff < Rational(0)) {
      renderable = false;
      break;
    }
    const Rational c = e.coeff * Rational(spec.weights[e.term]);
    scale = std::lcm(scale, c.denominator());
  }
  return {seq.switchings(), steps_per_unit * (renderable ? scale : hi), hi};
}

}  // namespace trotter::evaluate
