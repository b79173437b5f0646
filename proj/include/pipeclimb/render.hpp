#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pipeclimb/analysis.hpp"
#include "pipeclimb/traversal.hpp"

namespace pipeclimb {

struct NamedReport {
  std::string scenario;  // used as the plot file stem
  TraversalReport report;
};

struct RenderedReport {
  std::string table_text;  // fixed-width summary
  std::string table_csv;   // one row per comparison
  std::vector<std::pair<std::string, std::string>> plots;  // file name -> SVG document
};

/// Pure function of its inputs: identical arguments give byte-identical
/// output. Throws Error when comparisons is empty.
[[nodiscard]] RenderedReport render_report(const std::vector<NamedReport>& reports,
                                           const std::vector<SpeedComparison>& comparisons,
                                           bool with_plots = true);

/// Track speed against time for one run, as a standalone SVG document.
[[nodiscard]] std::string render_speed_svg(const TraversalReport& report, const std::string& title);

[[nodiscard]] std::string render_validation_table(const std::vector<ValidationRow>& rows);

/// Writes <stem>_summary.txt, <stem>_summary.csv and each plot into dir.
/// Throws IoError when anything cannot be written.
void write_rendered(const RenderedReport& rendered, const std::filesystem::path& dir,
                    const std::string& stem);

/// Writes text to path, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pipeclimb
