#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pipeclimb/pipe_geometry.hpp"
#include "pipeclimb/traversal.hpp"
#include "pipeclimb/units.hpp"

namespace pipeclimb {

/// Absolute percentage error 100 * |observed - theoretical| / |theoretical|.
/// Throws UndefinedApe when theoretical is zero or either value is not finite.
[[nodiscard]] double ape(double theoretical, double observed);

struct SpeedComparison {
  std::string label;
  double mu_deg = 0.0;
  TrackSpeeds theoretical = TrackSpeeds::Zero();
  TrackSpeeds observed = TrackSpeeds::Zero();
  Triple<double> ape_pct = Triple<double>::Zero();
  double mean_ape_pct = 0.0;
  double max_ape_pct = 0.0;
};

[[nodiscard]] SpeedComparison compare_speeds(const TrackSpeeds& theoretical,
                                             const TrackSpeeds& observed, std::string label = {},
                                             double mu_deg = 0.0);

/// Theoretical triple from the bend law at orientation mu, against observed.
[[nodiscard]] SpeedComparison compare_orientation(double mu_deg, double bend_radius_mm,
                                                  double pipe_radius_mm, double v_mm_s,
                                                  const TrackSpeeds& observed,
                                                  std::string label = {});

/// One comparison per traversed segment: the simulated per-segment mean track
/// speeds against the no-slip speeds at the report's centre speed.
[[nodiscard]] std::vector<SpeedComparison> segment_comparisons(const TraversalReport& report,
                                                               const PipeNetwork& network,
                                                               const std::string& scenario);

/// Observed track speeds from the reference multibody simulation, with the
/// APE quoted alongside them.
struct ReferenceCase {
  std::string label;
  SegmentKind kind = SegmentKind::Straight;
  double mu_deg = 0.0;
  TrackSpeeds observed = TrackSpeeds::Zero();
  double reported_ape_pct = 0.0;
  bool gated = true;  // false: shown in the table but never fails validation
};

/// CSV with header `label,kind,mu_deg,vA_mm_s,vB_mm_s,vC_mm_s,reported_ape_pct,gated`.
[[nodiscard]] std::vector<ReferenceCase> parse_reference(std::istream& in,
                                                         const std::string& source);
[[nodiscard]] std::vector<ReferenceCase> load_reference(const std::filesystem::path& path);

/// The bundled dataset, identical to data/reference_speeds.csv.
[[nodiscard]] std::vector<ReferenceCase> builtin_reference();

struct ValidationSettings {
  double straight_speed_mm_s = 0.0;   // theoretical straight-pipe speed
  double bend_speed_mm_s = 50.24;     // centre speed used for the bend law
  double bend_radius_mm = 418.77;
  double pipe_radius_mm = 137.9;
  double straight_max_ape_pct = 2.2;  // straight rows: every track below this
  double reported_ape_tolerance_pct = 0.1;  // bend rows: |max APE - quoted| within this
};

struct ValidationRow {
  ReferenceCase reference;
  SpeedComparison comparison;
  bool pass = true;
};

[[nodiscard]] std::vector<ValidationRow> validate_reference(const std::vector<ReferenceCase>& cases,
                                                            const ValidationSettings& settings);

[[nodiscard]] bool all_gated_pass(const std::vector<ValidationRow>& rows);

}  // namespace pipeclimb
