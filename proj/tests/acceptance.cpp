// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include "trotter/evaluate.hpp"
#include "trotter/gridpath.hpp"
#include "trotter/linalg.hpp"
#include "trotter/planners.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

using namespace trotter;
using gridpath::LatticePath;
using linalg::Matrix;

namespace {

int g_failures = 0;

void criterion(int index, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("[%2d] %-34s %s%s%s\n", index, name.c_str(), ok ? "PASS" : "FAIL",
              detail.empty() ? "" : "  ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Adjacent same-term entries merged; the resolution-independent gate list.
std::vector<planners::GateEntry> merged(const planners::GateSequence& seq) {
  std::vector<planners::GateEntry> out;
  for (const auto& e : seq.entries) {
    if (!out.empty() && out.back().term == e.term) {
      out.back().coeff += e.coeff;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

double fl_at(const planners::GateSequence& seq, const std::vector<Matrix>& hams, double t) {
  const Matrix exact = linalg::exact_unitary(hams, seq.targets, t);
  return evaluate::log_fidelity(
      evaluate::fidelity(exact, linalg::sequence_to_unitary(seq, hams, t)));
}

void check_path_goldens() {
  const bool ok = planners::plan_2O(4, 3, 1).step_string() == "BAAABBA" &&
                  planners::plan_2T(4, 3, 1).to_path() &&
                  planners::plan_2T(4, 3, 1).to_path()->step_string() == "AABBBAA";
  criterion(1, "path goldens (4,3)", ok);
}

void check_zero_area() {
  bool ok = true;
  for (const char* steps : {"ABABABA", "BAAABBA", "AABBBAA"}) {
    ok = ok && gridpath::signed_area(LatticePath::parse({4, 3}, steps)) == Rational(0);
  }
  ok = ok && planners::plan_2D({4, 3}, 1).step_string() == "ABABABA";
  criterion(2, "zero signed area of the three paths", ok);
}

void check_2t_moments() {
  bool ok = true;
  for (std::int64_t p = 1; ok && p + 1 <= 14; ++p) {
    for (std::int64_t q = 1; ok && p + q <= 14; ++q) {
      if (p % 2 == 1 && q % 2 == 1) continue;
      for (std::int64_t n = 1; n <= 2; ++n) {
        const auto path = planners::plan_2T(p, q, n).to_path();
        if (!path) {
          ok = false;
          break;
        }
        const auto tr = gridpath::error_triplet(*path);
        // raw grid moments carry n^3 relative to the per-unit law -(pq/24n^2)(p, 2q)
        if (p % 2 == 0) {
          ok = tr.e2 == Rational(0) && tr.e3a == Rational(-p * q * p * n, 24) &&
               tr.e3b == Rational(-2 * p * q * q * n, 24);
        } else {
          // q even: the planner emits the letter-swapped B-centered form
          ok = tr.e2 == Rational(0) && tr.e3a == Rational(2 * p * q * p * n, 24) &&
               tr.e3b == Rational(p * q * q * n, 24);
        }
        if (!ok) break;
      }
    }
  }
  criterion(3, "2T moment law, p+q <= 14, n <= 2", ok);
}

void check_slopes() {
  // Samples start at 10^-2.4: the 2O curve at (12,8) crosses the 1e-14
  // log-fidelity floor near 10^-2.47, so sampling the bottom sliver of the
  // window would only contribute precision-floor noise to the fit.
  const auto grid = evaluate::log_grid(std::pow(10.0, -2.4), std::pow(10.0, -1.5), 32);
  const double lo = std::pow(10.0, -2.5), hi = std::pow(10.0, -1.5) * 1.0000001;
  bool ok = true;
  std::string detail;
  const auto fit_one = [&](const char* method, std::vector<std::int64_t> weights, double band_lo,
                           double band_hi) {
    const auto curves =
        evaluate::sweep_time({method}, linalg::HamiltonianSpec::named("tfi2", weights), grid, 1);
    const auto fit = evaluate::fit_slope(curves[0], lo, hi);
    detail += std::string(method) + "=" + fmt(fit.a) + " ";
    if (!(fit.a >= band_lo && fit.a <= band_hi)) ok = false;
  };
  try {
    fit_one("2O", {12, 8}, 5.7, 6.3);
    fit_one("2D", {12, 8}, 5.7, 6.3);
    fit_one("2T", {12, 8}, 5.7, 6.3);
    fit_one("1T", {6, 7}, 3.7, 4.3);
    // larger weights keep ruth's tiny slope-8 error above the double-precision
    // log-fidelity cap across the whole fit window
    fit_one("ruth", {24, 16}, 7.6, 8.4);
  } catch (const std::exception& e) {
    ok = false;
    detail += std::string("error: ") + e.what();
  }
  criterion(4, "slope fits in the fixed window", ok, detail);
}

void check_crossover() {
  const auto spec = linalg::HamiltonianSpec::named("tfi2", {12, 8});
  const auto hams = linalg::build_model(spec);
  const auto seq_2o = planners::plan("2O", {12, 8}, 1);
  const auto seq_2d = planners::plan("2D", {12, 8}, 1);
  const double norm_a = hams[0].norm();
  const auto grid_u = evaluate::log_grid(evaluate::kCrossoverScanMin, evaluate::kCrossoverScanMax,
                                         evaluate::kCrossoverScanPoints);
  evaluate::FidelityCurve ca, cb;
  ca.samples.resize(grid_u.size());
  cb.samples.resize(grid_u.size());
  for (std::size_t i = 0; i < grid_u.size(); ++i) {
    const double t = grid_u[i] / norm_a;
    ca.samples[i] = {t, 0, fl_at(seq_2d, hams, t), false};
    cb.samples[i] = {t, 0, fl_at(seq_2o, hams, t), false};
  }
  const bool small_t_order = ca.samples[0].Fl < cb.samples[0].Fl;
  const auto hit = evaluate::find_crossover(
      ca, cb, [&](double t) { return fl_at(seq_2d, hams, t) - fl_at(seq_2o, hams, t); }, norm_a);
  const bool ok = small_t_order && hit && *hit >= 0.11 && *hit <= 0.17;
  criterion(5, "2O/2D crossover, TFI (12,8)", ok,
            hit ? "t|A|/n=" + fmt(*hit) : "no crossover");
}

void check_histogram() {
  const auto stats = evaluate::crossover_histogram(12, 8, 1, 1000, 20260825);
  const bool ok = stats.mean >= 0.10 && stats.mean <= 0.18;
  criterion(6, "crossover histogram, 1000 pairs", ok,
            "mean=" + fmt(stats.mean) + " sd=" + fmt(std::sqrt(stats.variance)) +
                " skipped=" + std::to_string(stats.skipped));
}

void check_exhaustive() {
  bool ok = true;
  for (std::int64_t p = 1; ok && p + 1 <= 12; ++p) {
    for (std::int64_t q = 1; ok && p + q <= 12; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const auto greedy = planners::plan_2D({p, q}, 1);
      double best_dist = -1;
      std::int64_t best_moment = -1;
      gridpath::enumerate_paths(p, q, 12, [&](const LatticePath& path) {
        const double d = planners::total_diagonal_distance(path);
        if (best_dist < 0 || d < best_dist) best_dist = d;
        const auto w = gridpath::path_weight(path);
        if (w.w1 != 0) return;
        const std::int64_t m = std::abs(w.w2) + std::abs(w.w3);
        if (best_moment < 0 || m < best_moment) best_moment = m;
      });
      if (planners::total_diagonal_distance(greedy) > best_dist + 1e-9) ok = false;
      if (best_moment >= 0) {
        const auto w = gridpath::path_weight(planners::plan_2O(p, q, 1));
        if (std::abs(w.w2) + std::abs(w.w3) != best_moment) ok = false;
      }
      // Appendix D bound on the executed 2D schedule (symmetrized when both
      // targets are odd).
      const auto seq = planners::plan("2D", {p, q}, 1);
      const auto path = seq.to_path();
      if (!path) {
        ok = false;
        continue;
      }
      const auto cd = planners::path_CD(*path, p, q);
      const Rational bound(std::min(p * p + 4 * q * q, q * q + 4 * p * p));
      if (!(cd.f <= bound)) ok = false;
    }
  }
  criterion(7, "exhaustive optimality, p+q <= 12", ok);
}

void check_fig7a_ordering() {
  bool pairwise = true;
  double sum_2d = 0, sum_ruth = 0, sum_1t = 0;
  for (std::int64_t p = 1; p <= 9; ++p) {
    const std::int64_t q = 10 - p;
    const auto spec = linalg::HamiltonianSpec::named("tfi2", {p, q});
    const auto hams = linalg::build_model(spec);
    const double fl_2d = fl_at(planners::plan("2D", {p, q}, 10), hams, 1.0);
    sum_2d += fl_2d;
    // All methods share the budget of (p+q)*n = 100 unit Trotter steps. Ruth's
    // coefficients overshoot and backtrack, covering 13p/12 + 7q/3 grid units
    // per repetition, so fewer repetitions fit in the same budget; every other
    // method covers exactly p+q units per repetition and keeps n = 10.
    const double ruth_cost = 13.0 * p / 12.0 + 7.0 * q / 3.0;
    const auto n_ruth =
        std::max<std::int64_t>(1, static_cast<std::int64_t>((p + q) * 10 / ruth_cost));
    sum_ruth += fl_at(planners::plan("ruth", {p, q}, n_ruth), hams, 1.0);
    sum_1t += fl_at(planners::plan("1T", {p, q}, 10), hams, 1.0);
    if (p % 2 == 0 || q % 2 == 0) {
      const double fl_2t = fl_at(planners::plan("2T", {p, q}, 10), hams, 1.0);
      if (fl_2d < fl_2t - 1e-9) pairwise = false;
    }
  }
  const bool ok = pairwise && sum_2d >= sum_ruth && sum_2d >= sum_1t;
  criterion(8, "large-step ordering (p+q=10)", ok,
            "mean2D=" + fmt(sum_2d / 9) + " meanRuth=" + fmt(sum_ruth / 9) +
                " mean1T=" + fmt(sum_1t / 9));
}

void check_three_operator() {
  bool ok = planners::plan_2D({3, 4, 5}, 1).step_string() == "CBACBACBCABC" &&
            planners::plan_2D({6, 4, 2}, 1).step_string() == "ABACBAABACBA";
  for (std::int64_t p = 1; ok && p <= 10; ++p) {
    for (std::int64_t q = 1; ok && p + q <= 11; ++q) {
      const std::int64_t r = 12 - p - q;
      if (r < 1) continue;
      const auto spec = linalg::HamiltonianSpec::named("tfi-lz3", {p, q, r});
      const auto hams = linalg::build_model(spec);
      const double fl_2d = fl_at(planners::plan("2D", {p, q, r}, 10), hams, 1.0);
      const double fl_1t = fl_at(planners::plan("1T", {p, q, r}, 10), hams, 1.0);
      if (fl_2d < fl_1t - 1e-9) ok = false;
    }
  }
  criterion(9, "three-operator goldens and ordering", ok);
}

void check_resource_parity() {
  bool ok = true;
  std::string detail;
  // The (8,2) greedy unit is the halved symmetric form, so the 2D schedule at
  // n equals the 2T schedule at 2n gate for gate.
  for (std::int64_t n = 1; n <= 4; ++n) {
    if (merged(planners::plan("2D", {8, 2}, n)) != merged(planners::plan("2T", {8, 2}, 2 * n))) {
      ok = false;
    }
  }
  const auto spec = linalg::HamiltonianSpec::named("tfi2", {8, 2});
  for (double target : {0.9, 0.99, 0.999}) {
    const auto r2d = evaluate::count_resources("2D", target, spec, 1.0);
    const auto r2t = evaluate::count_resources("2T", target, spec, 1.0);
    detail += "F=" + fmt(target) + ":(" + std::to_string(r2d.switchings) + "," +
              std::to_string(r2d.trotter_steps) + ")/(" + std::to_string(r2t.switchings) + "," +
              std::to_string(r2t.trotter_steps) + ") ";
    if (r2d.switchings != r2t.switchings || r2d.trotter_steps != r2t.trotter_steps) ok = false;
    if (merged(planners::plan("2D", {8, 2}, r2d.n_required)) !=
        merged(planners::plan("2T", {8, 2}, r2t.n_required))) {
      ok = false;
    }
  }
  criterion(10, "resource parity for (8,2)", ok, detail);
}

void check_bch_oracle() {
  bool ok = true;
  std::string detail;
  const auto second_path = LatticePath::parse({1, 1}, "AB");
  const auto third_path = LatticePath::parse({4, 3}, "AABBBAA");
  const auto tr2 = gridpath::error_triplet(second_path);
  const auto tr3 = gridpath::error_triplet(third_path);
  double worst2 = 0, worst3 = 0, worst_ord2 = 99, worst_ord3 = 99;
  for (std::uint64_t k = 0; k < 20 && ok; ++k) {
    const Matrix A = linalg::random_hermitian(4, linalg::split_seed(777, 2 * k));
    const Matrix B = linalg::random_hermitian(4, linalg::split_seed(777, 2 * k + 1));
    const std::vector<Matrix> hams{A, B};
    const auto [c1, c2, c3] = linalg::nested_commutators(A, B);
    // Centered extraction e^{+iHt/2} U e^{+iHt/2}: exactly parity-odd for
    // palindromic products, so the leading operator is read off without the
    // O(t) conjugation artifact of the one-sided defect exact^dag U.
    const auto defect = [&](const LatticePath& path, double t) {
      const Matrix half = linalg::exact_unitary(hams, path.targets, t / 2).adjoint();
      return linalg::unitary_log(half * linalg::path_to_unitary(path, hams, t, 1) * half);
    };
    const std::complex<double> i_unit(0, 1);

    // Second order: E(t) ~ -e2 t^2 [A,B].
    {
      const double t = 1e-3;
      const Matrix pred = -to_double(tr2.e2) * t * t * c1;
      const Matrix got = defect(second_path, t);
      const double rel = (got - pred).norm() / pred.norm();
      worst2 = std::max(worst2, rel);
      const double order = std::log2(defect(second_path, 2 * t).norm() / got.norm());
      worst_ord2 = std::min(worst_ord2, order);
      if (rel > 1e-2 || order < 1.99) ok = false;
    }
    // Third order on the zero-area path: E(t) ~ i t^3 (e3a [A,[A,B]] + e3b [B,[A,B]]).
    {
      const double t = 1e-3;
      const Matrix pred = i_unit * (t * t * t) *
                          (to_double(tr3.e3a) * c2 + to_double(tr3.e3b) * c3);
      const Matrix got = defect(third_path, t);
      const double rel = (got - pred).norm() / pred.norm();
      worst3 = std::max(worst3, rel);
      const double order = std::log2(defect(third_path, 2 * t).norm() / got.norm());
      worst_ord3 = std::min(worst_ord3, order);
      if (rel > 1e-2 || order < 2.99) ok = false;
    }
  }
  criterion(11, "BCH consistency oracle, 20 pairs", ok,
            "rel2<=" + fmt(worst2) + " rel3<=" + fmt(worst3) + " ord2>=" + fmt(worst_ord2) +
                " ord3>=" + fmt(worst_ord3));
}

}  // namespace

int main() {
  check_path_goldens();
  check_zero_area();
  check_2t_moments();
  check_slopes();
  check_crossover();
  check_histogram();
  check_exhaustive();
  check_fig7a_ordering();
  check_three_operator();
  check_resource_parity();
  check_bch_oracle();
  if (g_failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
