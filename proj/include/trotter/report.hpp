#pragma once

#include "trotter/evaluate.hpp"

#include <nlohmann/json_fwd.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace trotter::report {

/// Byte-stable decimal rendering used by every emitted file.
std::string format_double(double v);

/// CSV with a versioned header comment line and columns t,F,F_l.
void write_curve_csv(std::ostream& os, const evaluate::FidelityCurve& curve);

/// Histogram bins as CSV (bin_lo, bin_hi, count).
void write_histogram_csv(std::ostream& os, const evaluate::CrossoverStats& stats);

nlohmann::json stats_to_json(const evaluate::CrossoverStats& stats);

/// Minimal line plot: log-log axes drawn as plain SVG paths, one polyline
/// per curve. A convenience view; CSV stays canonical.
void write_sweep_svg(std::ostream& os, const std::vector<evaluate::FidelityCurve>& curves);

}  // namespace trotter::report
