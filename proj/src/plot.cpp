#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "ctsbench/bench.hpp"
#include "ctsbench/csv.hpp"
#include "ctsbench/errors.hpp"
#include "ctsbench/io.hpp"

namespace ctsbench {

namespace {

constexpr double kWidth = 560, kHeight = 400;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Upper axis bound: 1, 2 or 5 times a power of ten, at least `v`.
double nice_ceiling(double v) {
  if (v <= 0.0) return 1.0;
  const double p = std::pow(10.0, std::floor(std::log10(v)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * p >= v) return m * p;
  }
  return 10.0 * p;
}

struct Frame {
  double x_max, y_max;
  double px(double x) const { return kLeft + x / x_max * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - y / y_max * (kHeight - kTop - kBottom); }
};

std::string svg_open(const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", kWidth) + "\" height=\"" +
         fmt("%.0f", kHeight) + "\" font-family=\"sans-serif\" font-size=\"11\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + "<text x=\"" + fmt("%.1f", kWidth / 2) +
         "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + title + "</text>\n";
}

std::string axes(const Frame& f, const std::string& x_label, const std::string& y_label, bool x_ticks) {
  std::string s;
  const double x0 = f.px(0), y0 = f.py(0);
  s += "<line x1=\"" + fmt("%.1f", x0) + "\" y1=\"" + fmt("%.1f", y0) + "\" x2=\"" + fmt("%.1f", f.px(f.x_max)) +
       "\" y2=\"" + fmt("%.1f", y0) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fmt("%.1f", x0) + "\" y1=\"" + fmt("%.1f", y0) + "\" x2=\"" + fmt("%.1f", x0) +
       "\" y2=\"" + fmt("%.1f", f.py(f.y_max)) + "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double yv = f.y_max * t / 5.0;
    s += "<text x=\"" + fmt("%.1f", x0 - 6) + "\" y=\"" + fmt("%.1f", f.py(yv) + 4) +
         "\" text-anchor=\"end\">" + fmt("%g", yv) + "</text>\n";
    if (x_ticks) {
      const double xv = f.x_max * t / 5.0;
      s += "<text x=\"" + fmt("%.1f", f.px(xv)) + "\" y=\"" + fmt("%.1f", y0 + 16) +
           "\" text-anchor=\"middle\">" + fmt("%g", xv) + "</text>\n";
    }
  }
  s += "<text x=\"" + fmt("%.1f", (kLeft + kWidth - kRight) / 2) + "\" y=\"" + fmt("%.1f", kHeight - 14) +
       "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  s += "<text transform=\"translate(16," + fmt("%.1f", (kTop + kHeight - kBottom) / 2) +
       ") rotate(-90)\" text-anchor=\"middle\">" + y_label + "</text>\n";
  return s;
}

}  // namespace

std::vector<std::string> plot_report(const EfficiencyReport& report, const std::string& out_dir) {
  if (report.rows.empty()) throw InvariantError("efficiency report has no placements to plot");
  const auto root = std::filesystem::path(out_dir);
  std::vector<std::string> written;

  // Scatter: raw vs clustered node counts.
  {
    std::string data = "design_name,placement_id,raw_nodes,clustered_nodes\n";
    std::size_t max_raw = 0, max_cl = 0;
    for (const auto& r : report.rows) {
      data += csv::join({r.design_name, r.placement_id, std::to_string(r.raw_nodes),
                         std::to_string(r.clustered_nodes)}) +
              "\n";
      max_raw = std::max(max_raw, r.raw_nodes);
      max_cl = std::max(max_cl, r.clustered_nodes);
    }
    const Frame f{nice_ceiling(static_cast<double>(max_raw)), nice_ceiling(static_cast<double>(max_cl))};
    std::string svg = svg_open("Raw vs clustered nodes per placement");
    svg += axes(f, "raw nodes", "clustered nodes", true);
    for (const auto& r : report.rows) {
      svg += "<circle cx=\"" + fmt("%.2f", f.px(static_cast<double>(r.raw_nodes))) + "\" cy=\"" +
             fmt("%.2f", f.py(static_cast<double>(r.clustered_nodes))) +
             "\" r=\"3.5\" fill=\"steelblue\" fill-opacity=\"0.8\"><title>" + r.design_name + "/" +
             r.placement_id + "</title></circle>\n";
    }
    svg += "</svg>\n";
    for (const auto& [name, body] : {std::pair{"compression_scatter.svg", svg}, {"compression_scatter.csv", data}}) {
      const std::string path = (root / name).string();
      write_file(path, body);
      written.push_back(path);
    }
  }

  // Bars: mean ratio with min/max whiskers.
  {
    const auto agg = report.aggregates();
    const char* metrics[] = {"node_compression", "edge_compression", "footprint_ratio", "memory_ratio"};
    std::string data = "metric,mean,min,max\n";
    double top = 0.0;
    for (const char* m : metrics) {
      const Stat& s = agg.at(m);
      data += csv::join({m, csv::format_double(s.mean), csv::format_double(s.min), csv::format_double(s.max)}) +
              "\n";
      top = std::max(top, s.max);
    }
    const Frame f{4.0, nice_ceiling(top)};
    std::string svg = svg_open("Efficiency ratios (" + report.mode() + " mode)");
    svg += axes(f, "metric", "ratio (raw / clustered)", false);
    for (int i = 0; i < 4; ++i) {
      const Stat& s = agg.at(metrics[i]);
      const double x = f.px(i + 0.2), w = f.px(i + 0.8) - x, cx = f.px(i + 0.5);
      svg += "<rect x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", f.py(s.mean)) + "\" width=\"" +
             fmt("%.2f", w) + "\" height=\"" + fmt("%.2f", f.py(0) - f.py(s.mean)) + "\" fill=\"#d98c3f\"/>\n";
      svg += "<line x1=\"" + fmt("%.2f", cx) + "\" y1=\"" + fmt("%.2f", f.py(s.min)) + "\" x2=\"" +
             fmt("%.2f", cx) + "\" y2=\"" + fmt("%.2f", f.py(s.max)) + "\" stroke=\"black\"/>\n";
      svg += "<text x=\"" + fmt("%.2f", cx) + "\" y=\"" + fmt("%.2f", f.py(0) + 16) +
             "\" text-anchor=\"middle\">" + metrics[i] + "</text>\n";
    }
    svg += "</svg>\n";
    for (const auto& [name, body] : {std::pair{"efficiency_bars.svg", svg}, {"efficiency_bars.csv", data}}) {
      const std::string path = (root / name).string();
      write_file(path, body);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace ctsbench
