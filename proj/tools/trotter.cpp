// Command-line front end: plan Trotter sequences, compute geometric error
// coefficients, run fidelity sweeps, crossover histograms and resource
// counts, and emit CSV/JSON/SVG artifacts.

#include "trotter/evaluate.hpp"
#include "trotter/gridpath.hpp"
#include "trotter/linalg.hpp"
#include "trotter/planners.hpp"
#include "trotter/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace trotter;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json rational_json(const Rational& r) {
  return json{{"num", r.numerator()}, {"den", r.denominator()}};
}

linalg::HamiltonianSpec model_spec(const std::string& model,
                                   const std::vector<std::int64_t>& weights) {
  if (model == "tfi2" || model == "tfi-lz3") {
    return linalg::HamiltonianSpec::named(model, weights);
  }
  if (model.rfind("file:", 0) == 0) {
    std::ifstream in(model.substr(5));
    if (!in) throw UsageError("cannot open matrix file " + model.substr(5));
    json j = json::parse(in);
    std::vector<linalg::Matrix> mats;
    for (const auto& m : j.at("matrices")) mats.push_back(linalg::matrix_from_json(m));
    return linalg::HamiltonianSpec::explicit_terms(std::move(mats), weights);
  }
  throw UsageError("unknown model: " + model + " (expected tfi2, tfi-lz3 or file:PATH)");
}

std::vector<std::int64_t> gather_targets(std::int64_t p, std::int64_t q, std::int64_t r) {
  std::vector<std::int64_t> targets{p, q};
  if (r > 0) targets.push_back(r);
  return targets;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << content;
}

json sequence_report(const planners::GateSequence& seq) {
  json j = seq.to_json();
  if (auto path = seq.to_path(); path && path->dims() == 2) {
    const auto triplet = gridpath::error_triplet(*path);
    j["error_triplet"] = {{"e2", rational_json(triplet.e2)},
                          {"e3a", rational_json(triplet.e3a)},
                          {"e3b", rational_json(triplet.e3b)}};
  }
  return j;
}

// Flat JSON config file; command-line flags override file values.
std::vector<std::string> config_as_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  json j = json::parse(in);
  if (!j.is_object()) throw UsageError("config must be a flat JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : j.items()) {
    if (value.is_object() || value.is_array()) {
      throw UsageError("config values must be scalars (offending key: " + key + ")");
    }
    args.push_back("--" + key + "=" +
                   (value.is_string() ? value.get<std::string>() : value.dump()));
  }
  return args;
}

int run(int argc, char** argv) {
  CLI::App app{"Trotter sequence planner and fidelity evaluator"};
  app.require_subcommand(1);

  std::int64_t p = 0, q = 0, r = 0, n = 1, samples = 1000;
  std::string method = "2D", model = "tfi2", out_dir = ".", format = "csv", figure;
  std::vector<std::string> methods;
  double t_min = 1e-3, t_max = 1e-1, t_val = 1.0, target_f = 0.999;
  int t_points = 40;
  std::uint64_t seed = 1;
  std::int64_t budget = 4096;
  std::string config_path;
  app.add_option("--config", config_path, "flat JSON config file; flags override");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-p,--p", p, "first target weight")->take_last();
    cmd->add_option("-q,--q", q, "second target weight")->take_last();
    cmd->add_option("-r,--r", r, "third target weight (three-operator planning)")->take_last();
    cmd->add_option("--n", n, "Trotter repetition count")->take_last();
  };

  auto* cmd_plan = app.add_subcommand("plan", "plan an ordering and print it as JSON");
  add_common(cmd_plan);
  cmd_plan->add_option("--method", method, "1T,2T,2D,2O,ruth,naive,cont2T")->take_last();
  cmd_plan->add_option("--budget", budget, "2O node budget override")->take_last();

  auto* cmd_error = app.add_subcommand("error", "geometric error coefficients of a step string");
  add_common(cmd_error);
  std::string steps;
  cmd_error->add_option("--steps", steps, "step string, e.g. ABAABBA")->required()->take_last();

  auto* cmd_sweep = app.add_subcommand("sweep", "log-fidelity sweep over a time grid");
  add_common(cmd_sweep);
  cmd_sweep->add_option("--method", methods, "methods to sweep");
  cmd_sweep->add_option("--model", model, "tfi2, tfi-lz3 or file:PATH")->take_last();
  cmd_sweep->add_option("--t-min", t_min)->take_last();
  cmd_sweep->add_option("--t-max", t_max)->take_last();
  cmd_sweep->add_option("--t-points", t_points)->take_last();
  cmd_sweep->add_option("--figure", figure, "preset: fig2b, fig7a or fig7c")->take_last();
  cmd_sweep->add_option("--out", out_dir, "output directory")->take_last();
  cmd_sweep->add_option("--format", format, "csv, json or svg")->take_last();
  cmd_sweep->add_option("--seed", seed)->take_last();

  auto* cmd_hist = app.add_subcommand("histogram", "2O/2D crossover histogram on random pairs");
  add_common(cmd_hist);
  cmd_hist->add_option("--samples", samples)->take_last();
  cmd_hist->add_option("--seed", seed)->take_last();
  cmd_hist->add_option("--out", out_dir)->take_last();

  auto* cmd_res = app.add_subcommand("resources", "switchings and Trotter steps to a fidelity");
  add_common(cmd_res);
  cmd_res->add_option("--method", methods, "methods to compare");
  cmd_res->add_option("--model", model)->take_last();
  cmd_res->add_option("--t", t_val, "evolution time")->take_last();
  cmd_res->add_option("--target-F", target_f, "fidelity target in (0,1)")->take_last();

  auto* cmd_oracle = app.add_subcommand("oracle", "brute-force optimality property suites");
  std::int64_t oracle_max = 12;
  cmd_oracle->add_option("--max-total", oracle_max, "largest p+q to enumerate")->take_last();

  std::vector<std::string> args(argv + 1, argv + argc);
  // Splice config defaults in front of the subcommand's own flags so real
  // flags win.
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k].rfind("--config", 0) == 0) {
      std::string path;
      if (auto eq = args[k].find('='); eq != std::string::npos) {
        path = args[k].substr(eq + 1);
        args.erase(args.begin() + k);
      } else if (k + 1 < args.size()) {
        path = args[k + 1];
        args.erase(args.begin() + k, args.begin() + k + 2);
      }
      const auto extra = config_as_args(path);
      args.insert(args.begin() + k, extra.begin(), extra.end());
      break;
    }
  }
  std::vector<const char*> cargs{argv[0]};
  for (const auto& a : args) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (cmd_plan->parsed()) {
    planners::GateSequence seq;
    if (method == "2O") {
      seq = planners::sequence_from_path(planners::plan_2O(p, q, n, budget), "2O",
                                         gather_targets(p, q, 0), n);
    } else {
      seq = planners::plan(method, gather_targets(p, q, r), n);
    }
    std::cout << sequence_report(seq).dump(2) << "\n";
    return 0;
  }

  if (cmd_error->parsed()) {
    const auto path = gridpath::LatticePath::parse(gather_targets(p, q, r), steps);
    const auto triplet = gridpath::error_triplet(path);
    std::cout << json{{"steps", steps},
                      {"e2", rational_json(triplet.e2)},
                      {"e3a", rational_json(triplet.e3a)},
                      {"e3b", rational_json(triplet.e3b)}}
                     .dump(2)
              << "\n";
    return 0;
  }

  if (cmd_sweep->parsed()) {
    std::vector<std::int64_t> weights = gather_targets(p > 0 ? p : 12, q > 0 ? q : 8, r);
    std::vector<double> grid;
    std::vector<std::string> use_methods = methods;
    std::int64_t use_n = n;
    if (figure == "fig2b") {
      weights = {12, 8};
      use_n = 1;
      use_methods = {"2O", "2D", "2T"};
      grid = evaluate::log_grid(1e-3, 3e-1, 60);
    } else if (figure == "fig7a") {
      // Handled below: one value per (p, q) pair at t = 1, n = 10.
    } else if (figure == "fig7c") {
      weights = {6, 7};
      use_n = 1;
      use_methods = {"2D", "1T", "ruth"};
      grid = evaluate::log_grid(1e-3, 1e-1, 60);
    } else if (!figure.empty()) {
      throw UsageError("unknown figure preset: " + figure);
    } else {
      if (t_points < 1 || t_min <= 0 || t_max <= t_min) {
        throw UsageError("empty or invalid t grid");
      }
      grid = evaluate::log_grid(t_min, t_max, t_points);
      if (use_methods.empty()) use_methods = {"2D", "2T"};
    }
    fs::create_directories(out_dir);

    if (figure == "fig7a") {
      // F_l per (p, q) with p + q = 10, t = 1, n = 10.
      std::ostringstream csv;
      csv << "# trotter-fig7a v1\n";
      csv << "p,q,Fl_2D,Fl_2T\n";
      const auto spec0 = model_spec(model, {1, 1});
      for (std::int64_t pp = 1; pp <= 9; ++pp) {
        const std::int64_t qq = 10 - pp;
        if (pp % 2 == 1 && qq % 2 == 1) continue;  // 2T undefined
        auto spec = model_spec(model, {pp, qq});
        const auto hams = linalg::build_model(spec);
        const auto curves = evaluate::sweep_time({"2D", "2T"}, spec, {1.0}, 10);
        csv << pp << ',' << qq << ',' << report::format_double(curves[0].samples[0].Fl) << ','
            << report::format_double(curves[1].samples[0].Fl) << "\n";
      }
      (void)spec0;
      write_file(fs::path(out_dir) / "fig7a.csv", csv.str());
      std::cout << "wrote " << (fs::path(out_dir) / "fig7a.csv").string() << "\n";
      return 0;
    }

    auto spec = model_spec(model, weights);
    const auto curves = evaluate::sweep_time(use_methods, spec, grid, use_n);
    for (const auto& curve : curves) {
      std::ostringstream os;
      report::write_curve_csv(os, curve);
      const auto file = fs::path(out_dir) / ("sweep_" + curve.method + ".csv");
      write_file(file, os.str());
      std::cout << "wrote " << file.string() << "\n";
    }
    if (format == "svg") {
      std::ostringstream os;
      report::write_sweep_svg(os, curves);
      const auto file = fs::path(out_dir) / "sweep.svg";
      write_file(file, os.str());
      std::cout << "wrote " << file.string() << "\n";
    }
    return 0;
  }

  if (cmd_hist->parsed()) {
    if (samples < 1) throw UsageError("--samples must be >= 1");
    if (p == 0) p = 12;
    if (q == 0) q = 8;
    const auto stats = evaluate::crossover_histogram(p, q, n, samples, seed);
    fs::create_directories(out_dir);
    std::ostringstream os;
    report::write_histogram_csv(os, stats);
    write_file(fs::path(out_dir) / "histogram_bins.csv", os.str());
    std::cout << report::stats_to_json(stats).dump(2) << "\n";
    return 0;
  }

  if (cmd_res->parsed()) {
    if (methods.empty()) methods = {"2D", "2T"};
    const auto spec = model_spec(model, gather_targets(p, q, r));
    std::cout << "method,n_required,switchings,trotter_steps\n";
    for (const auto& m : methods) {
      const auto res = evaluate::count_resources(m, target_f, spec, t_val);
      std::cout << m << ',' << res.n_required << ',' << res.switchings << ','
                << res.trotter_steps << "\n";
    }
    return 0;
  }

  if (cmd_oracle->parsed()) {
    // Exhaustive checks of the planner optimality claims.
    std::int64_t failures = 0;
    for (std::int64_t pp = 1; pp + 1 <= oracle_max; ++pp) {
      for (std::int64_t qq = 1; pp + qq <= oracle_max; ++qq) {
        if (std::gcd(pp, qq) != 1) continue;
        const auto greedy = planners::plan_2D({pp, qq}, 1);
        const double greedy_dist = planners::total_diagonal_distance(greedy);
        double best_dist = -1;
        std::int64_t best_moment = -1;
        gridpath::enumerate_paths(pp, qq, static_cast<int>(oracle_max),
                                  [&](const gridpath::LatticePath& path) {
                                    const double dist = planners::total_diagonal_distance(path);
                                    if (best_dist < 0 || dist < best_dist) best_dist = dist;
                                    const auto w = gridpath::path_weight(path);
                                    if (w.w1 != 0) return;
                                    const std::int64_t m = std::abs(w.w2) + std::abs(w.w3);
                                    if (best_moment < 0 || m < best_moment) best_moment = m;
                                  });
        const bool dist_ok = greedy_dist <= best_dist + 1e-9;
        bool moment_ok = true;
        if (best_moment >= 0) {
          const auto w = gridpath::path_weight(planners::plan_2O(pp, qq, 1));
          moment_ok = std::abs(w.w2) + std::abs(w.w3) == best_moment;
        }
        if (!dist_ok || !moment_ok) {
          ++failures;
          std::cout << "FAIL (" << pp << "," << qq << ") dist_ok=" << dist_ok
                    << " moment_ok=" << moment_ok << "\n";
        }
      }
    }
    std::cout << (failures == 0 ? "oracle: all checks passed\n" : "oracle: failures\n");
    return failures == 0 ? 0 : 2;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "numerical"}}.dump() << "\n";
    return 2;
  }
}
