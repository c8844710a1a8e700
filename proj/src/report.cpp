#include "trotter/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace trotter::report {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_curve_csv(std::ostream& os, const evaluate::FidelityCurve& curve) {
  os << "# trotter-sweep v1 method=" << curve.method << " targets=";
  for (std::size_t k = 0; k < curve.targets.size(); ++k) {
    os << (k ? "," : "") << curve.targets[k];
  }
  os << " n=" << curve.n << "\n";
  os << "t,F,F_l\n";
  for (const auto& s : curve.samples) {
    os << format_double(s.t) << ',' << format_double(s.F) << ',' << format_double(s.Fl) << "\n";
  }
}

void write_histogram_csv(std::ostream& os, const evaluate::CrossoverStats& stats) {
  os << "# trotter-histogram v1\n";
  os << "bin_lo,bin_hi,count\n";
  for (std::size_t k = 0; k < stats.bin_counts.size(); ++k) {
    os << format_double(stats.bin_edges[k]) << ',' << format_double(stats.bin_edges[k + 1]) << ','
       << stats.bin_counts[k] << "\n";
  }
}

nlohmann::json stats_to_json(const evaluate::CrossoverStats& stats) {
  return nlohmann::json{{"schema", "trotter-histogram-stats-v1"},
                        {"found", stats.values.size()},
                        {"skipped", stats.skipped},
                        {"mean", stats.mean},
                        {"variance", stats.variance},
                        {"stddev", std::sqrt(stats.variance)}};
}

void write_sweep_svg(std::ostream& os, const std::vector<evaluate::FidelityCurve>& curves) {
  constexpr int kW = 640, kH = 480, kPad = 50;
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2"};
  double x0 = 0, x1 = 0, y0 = 0, y1 = 1;
  bool first = true;
  for (const auto& c : curves) {
    for (const auto& s : c.samples) {
      const double x = std::log10(s.t);
      if (first) {
        x0 = x1 = x;
        y0 = y1 = s.Fl;
        first = false;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, s.Fl);
      y1 = std::max(y1, s.Fl);
    }
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const auto px = [&](double x) { return kPad + (x - x0) / (x1 - x0) * (kW - 2 * kPad); };
  const auto py = [&](double y) { return kH - kPad - (y - y0) / (y1 - y0) * (kH - 2 * kPad); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad << "\" y2=\""
     << kH - kPad << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\""
     << kH - kPad << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" font-size=\"12\">log10 t</text>\n";
  os << "<text x=\"12\" y=\"" << kH / 2 << "\" font-size=\"12\">F_l</text>\n";
  int color = 0;
  for (const auto& c : curves) {
    os << "<polyline fill=\"none\" stroke=\"" << kColors[color % 7] << "\" points=\"";
    for (const auto& s : c.samples) {
      os << format_double(px(std::log10(s.t))) << ',' << format_double(py(s.Fl)) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << kW - kPad + 4 << "\" y=\"" << kPad + 14 * color
       << "\" font-size=\"11\" fill=\"" << kColors[color % 7] << "\">" << c.method << "</text>\n";
    ++color;
  }
  os << "</svg>\n";
}

}  // namespace trotter::report
