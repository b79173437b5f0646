#include "pipeclimb/render.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <fstream>

#include "pipeclimb/errors.hpp"

namespace pipeclimb {
namespace {

std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

std::string format(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  va_list copy;
  va_copy(copy, args);
  const int n = std::vsnprintf(nullptr, 0, fmt, copy);
  va_end(copy);
  std::string out(static_cast<std::size_t>(std::max(n, 0)), '\0');
  std::vsnprintf(out.data(), out.size() + 1, fmt, args);
  va_end(args);
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string mu_tag(double mu_deg) { return format("mu%g", mu_deg); }

}  // namespace

std::string render_speed_svg(const TraversalReport& report, const std::string& title) {
  constexpr double width = 720, height = 360;
  constexpr double left = 60, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double t_max = std::max(report.total_time_s, 1e-9);
  double v_max = 0.0;
  for (const SimState& s : report.series) v_max = std::max(v_max, s.speeds.maxCoeff());
  v_max = v_max > 0.0 ? v_max * 1.1 : 1.0;

  auto x = [&](double t) { return left + plot_w * t / t_max; };
  auto y = [&](double v) { return top + plot_h * (1.0 - v / v_max); };

  std::string svg = format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
      "viewBox=\"0 0 %.0f %.0f\">\n",
      width, height, width, height);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += format("<text x=\"%.1f\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">%s</text>\n",
                left, xml_escape(title).c_str());
  svg += format(
      "<path d=\"M%.1f %.1f V%.1f H%.1f\" stroke=\"black\" fill=\"none\"/>\n", left, top,
      top + plot_h, left + plot_w);

  for (int i = 0; i <= 5; ++i) {
    const double v = v_max * i / 5.0;
    svg += format(
        "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\" "
        "text-anchor=\"end\">%.1f</text>\n",
        left - 6, y(v) + 3, v);
    const double t = t_max * i / 5.0;
    svg += format(
        "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\" "
        "text-anchor=\"middle\">%.1f</text>\n",
        x(t), top + plot_h + 14, t);
  }
  svg += format(
      "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
      "text-anchor=\"middle\">time (s)</text>\n",
      left + plot_w / 2, height - 12);
  svg += format(
      "<text x=\"14\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
      "transform=\"rotate(-90 14 %.1f)\" text-anchor=\"middle\">track speed (mm/s)</text>\n",
      top + plot_h / 2, top + plot_h / 2);

  // Segment boundaries.
  for (const SegmentTiming& seg : report.segments) {
    if (seg.entry_s <= 0.0) continue;
    svg += format(
        "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#bbbbbb\" "
        "stroke-dasharray=\"4 3\"/>\n",
        x(seg.entry_s), top, x(seg.entry_s), top + plot_h);
  }

  static constexpr const char* colours[3] = {"#d62728", "#1f77b4", "#2ca02c"};
  static constexpr const char* names[3] = {"A", "B", "C"};
  for (int track = 0; track < 3; ++track) {
    // Speeds hold until the next sample, so draw a step trace.
    std::string d;
    for (std::size_t i = 0; i < report.series.size(); ++i) {
      const SimState& s = report.series[i];
      if (i == 0) {
        d += format("M%.2f %.2f", x(s.t_s), y(s.speeds(track)));
      } else {
        const SimState& prev = report.series[i - 1];
        d += format(" H%.2f", x(s.t_s));
        if (s.speeds(track) != prev.speeds(track)) d += format(" V%.2f", y(s.speeds(track)));
      }
    }
    svg += format("<path d=\"%s\" stroke=\"%s\" stroke-width=\"1.5\" fill=\"none\"/>\n",
                  d.c_str(), colours[track]);
    svg += format(
        "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
        "fill=\"%s\">v_t%s</text>\n",
        left + plot_w - 110 + 36 * track, top - 8, colours[track], names[track]);
  }
  svg += "</svg>\n";
  return svg;
}

RenderedReport render_report(const std::vector<NamedReport>& reports,
                             const std::vector<SpeedComparison>& comparisons, bool with_plots) {
  if (comparisons.empty()) throw Error("render_report needs at least one speed comparison");

  RenderedReport out;
  std::string& t = out.table_text;
  if (!reports.empty()) {
    t += "Runs (bend entry treated as instantaneous; no contact transients modelled)\n";
    t += format("%-24s %-8s %7s %10s %12s %10s %12s\n", "scenario", "mode", "mu_deg",
                "v_mm_s", "distance_mm", "time_s", "max_slip");
    for (const NamedReport& r : reports) {
      const TraversalReport& rep = r.report;
      t += format("%-24s %-8s %7.2f %10.3f %12.3f %10.3f %12.3f\n", r.scenario.c_str(),
                  to_string(rep.mode).c_str(), rep.mu_deg, rep.nominal_speed_mm_s,
                  rep.distance_mm(), rep.total_time_s,
                  rep.final_state.slip_peak_mm_s.maxCoeff());
    }
    t += "\nSegment timings\n";
    t += format("%-24s %-8s %7s %4s %-22s %10s %10s %12s\n", "scenario", "mode", "mu_deg",
                "seg", "name", "entry_s", "exit_s", "distance_mm");
    for (const NamedReport& r : reports) {
      for (const SegmentTiming& seg : r.report.segments) {
        t += format("%-24s %-8s %7.2f %4zu %-22s %10.3f %10.3f %12.3f\n", r.scenario.c_str(),
                    to_string(r.report.mode).c_str(), r.report.mu_deg, seg.index,
                    seg.name.c_str(), seg.entry_s, seg.exit_s, seg.distance_mm);
      }
    }
    t += "\n";
  }

  t += "Track speed comparison (mm/s, APE %)\n";
  t += format("%-44s %7s %8s %8s %8s %8s %8s %8s %7s %7s %7s %7s %7s\n", "label", "mu_deg",
              "thA", "thB", "thC", "obsA", "obsB", "obsC", "apeA", "apeB", "apeC", "mean",
              "max");
  out.table_csv =
      "label,mu_deg,theory_vA,theory_vB,theory_vC,obs_vA,obs_vB,obs_vC,ape_A,ape_B,ape_C,"
      "mean_ape,max_ape\n";
  for (const SpeedComparison& c : comparisons) {
    t += format("%-44s %7.2f %8.2f %8.2f %8.2f %8.2f %8.2f %8.2f %7.3f %7.3f %7.3f %7.3f %7.3f\n",
                c.label.c_str(), c.mu_deg, c.theoretical(0), c.theoretical(1), c.theoretical(2),
                c.observed(0), c.observed(1), c.observed(2), c.ape_pct(0), c.ape_pct(1),
                c.ape_pct(2), c.mean_ape_pct, c.max_ape_pct);
    out.table_csv += csv_escape(c.label) +
                     format(",%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                            c.mu_deg, c.theoretical(0), c.theoretical(1), c.theoretical(2),
                            c.observed(0), c.observed(1), c.observed(2), c.ape_pct(0),
                            c.ape_pct(1), c.ape_pct(2), c.mean_ape_pct, c.max_ape_pct);
  }

  if (with_plots) {
    for (const NamedReport& r : reports) {
      const std::string stem =
          r.scenario + "_" + mu_tag(r.report.mu_deg) + "_" + to_string(r.report.mode);
      out.plots.emplace_back(stem + "_speeds.svg",
                             render_speed_svg(r.report, stem + " track speeds"));
    }
  }
  return out;
}

std::string render_validation_table(const std::vector<ValidationRow>& rows) {
  std::string t = format("%-16s %-8s %7s %8s %8s %8s %8s %8s %8s %8s %8s %9s %-6s\n", "case",
                         "kind", "mu_deg", "thA", "thB", "thC", "obsA", "obsB", "obsC",
                         "mean_ape", "max_ape", "quoted", "result");
  for (const ValidationRow& r : rows) {
    const SpeedComparison& c = r.comparison;
    const char* result = !r.reference.gated ? "info" : (r.pass ? "PASS" : "FAIL");
    t += format("%-16s %-8s %7.2f %8.2f %8.2f %8.2f %8.2f %8.2f %8.2f %8.3f %8.3f %9.2f %-6s\n",
                r.reference.label.c_str(),
                r.reference.kind == SegmentKind::Straight ? "straight" : "bend", c.mu_deg,
                c.theoretical(0), c.theoretical(1), c.theoretical(2), c.observed(0),
                c.observed(1), c.observed(2), c.mean_ape_pct, c.max_ape_pct,
                r.reference.reported_ape_pct, result);
  }
  return t;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_rendered(const RenderedReport& rendered, const std::filesystem::path& dir,
                    const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  write_text_file(dir / (stem + "_summary.txt"), rendered.table_text);
  write_text_file(dir / (stem + "_summary.csv"), rendered.table_csv);
  for (const auto& [name, svg] : rendered.plots) write_text_file(dir / name, svg);
}

}  // namespace pipeclimb
