#include "pipeclimb/analysis.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pipeclimb/bend_kinematics.hpp"
#include "pipeclimb/errors.hpp"

namespace pipeclimb {
namespace {

constexpr const char* kReferenceHeader =
    "label,kind,mu_deg,vA_mm_s,vB_mm_s,vC_mm_s,reported_ape_pct,gated";

// Observed triples and quoted errors from the reference multibody runs.
// Straight rows quote the shared bound; the 60 deg bend row is informational.
constexpr const char* kBuiltinReference =
    "label,kind,mu_deg,vA_mm_s,vB_mm_s,vC_mm_s,reported_ape_pct,gated\n"
    "straight_mu0,straight,0,50.03,50.03,50.03,2.2,1\n"
    "straight_mu30,straight,30,50.22,50.22,50.22,2.2,1\n"
    "straight_mu60,straight,60,51.36,51.36,51.36,2.2,1\n"
    "bend_mu0,bend,0,33.62,58.7,57.8,1.2,1\n"
    "bend_mu30,bend,30,37.3,63.8,50.3,3.8,1\n"
    "bend_mu60,bend,60,40.2,68.5,41.3,2.5,0\n";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_field(const std::string& text, const std::string& source, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
    throw ConfigError(source, line, "'" + text + "' is not a finite number");
  return value;
}

}  // namespace

double ape(double theoretical, double observed) {
  if (theoretical == 0.0 || !std::isfinite(theoretical) || !std::isfinite(observed))
    throw UndefinedApe("APE is undefined for a zero or non-finite theoretical value");
  return 100.0 * std::abs(observed - theoretical) / std::abs(theoretical);
}

SpeedComparison compare_speeds(const TrackSpeeds& theoretical, const TrackSpeeds& observed,
                               std::string label, double mu_deg) {
  SpeedComparison c;
  c.label = std::move(label);
  c.mu_deg = mu_deg;
  c.theoretical = theoretical;
  c.observed = observed;
  for (Eigen::Index i = 0; i < 3; ++i) c.ape_pct(i) = ape(theoretical(i), observed(i));
  c.mean_ape_pct = c.ape_pct.mean();
  c.max_ape_pct = c.ape_pct.maxCoeff();
  return c;
}

SpeedComparison compare_orientation(double mu_deg, double bend_radius_mm, double pipe_radius_mm,
                                    double v_mm_s, const TrackSpeeds& observed,
                                    std::string label) {
  return compare_speeds(bend_track_speeds(v_mm_s, bend_radius_mm, pipe_radius_mm, mu_deg),
                        observed, std::move(label), normalize_deg(mu_deg));
}

std::vector<SpeedComparison> segment_comparisons(const TraversalReport& report,
                                                 const PipeNetwork& network,
                                                 const std::string& scenario) {
  std::vector<SpeedComparison> out;
  for (const SegmentTiming& seg : report.segments) {
    if (!(seg.duration_s() > 0.0)) continue;
    const Segment& segment = network.segments().at(seg.index);
    TrackSpeeds theoretical = TrackSpeeds::Constant(report.nominal_speed_mm_s);
    if (const auto* bend = std::get_if<Bend>(&segment))
      theoretical = bend_track_speeds(report.nominal_speed_mm_s, bend->bend_radius_mm,
                                      network.spec().inner_radius_mm, report.mu_deg);
    std::string label = scenario + "/" + to_string(report.mode) + "/seg" +
                        std::to_string(seg.index) + ":" + seg.name;
    out.push_back(compare_speeds(theoretical, seg.mean_speeds, std::move(label), report.mu_deg));
  }
  return out;
}

std::vector<ReferenceCase> parse_reference(std::istream& in, const std::string& source) {
  std::vector<ReferenceCase> cases;
  std::string line;
  std::size_t number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kReferenceHeader)
        throw ConfigError(source, number, "expected header '" + std::string(kReferenceHeader) + "'");
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 8)
      throw ConfigError(source, number, "expected 8 fields, got " + std::to_string(f.size()));
    ReferenceCase c;
    c.label = f[0];
    if (f[1] == "straight")
      c.kind = SegmentKind::Straight;
    else if (f[1] == "bend")
      c.kind = SegmentKind::Bend;
    else
      throw ConfigError(source, number, "kind must be 'straight' or 'bend'");
    c.mu_deg = normalize_deg(parse_field(f[2], source, number));
    for (int i = 0; i < 3; ++i) c.observed(i) = parse_field(f[3 + i], source, number);
    c.reported_ape_pct = parse_field(f[6], source, number);
    if (f[7] != "0" && f[7] != "1") throw ConfigError(source, number, "gated must be 0 or 1");
    c.gated = f[7] == "1";
    cases.push_back(std::move(c));
  }
  if (!header_seen || cases.empty()) throw ConfigError(source, 0, "reference data is empty");
  return cases;
}

std::vector<ReferenceCase> load_reference(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open reference file");
  return parse_reference(in, path.string());
}

std::vector<ReferenceCase> builtin_reference() {
  std::istringstream in(kBuiltinReference);
  return parse_reference(in, "<builtin>");
}

std::vector<ValidationRow> validate_reference(const std::vector<ReferenceCase>& cases,
                                              const ValidationSettings& settings) {
  std::vector<ValidationRow> rows;
  for (const ReferenceCase& c : cases) {
    ValidationRow row;
    row.reference = c;
    if (c.kind == SegmentKind::Straight) {
      row.comparison = compare_speeds(TrackSpeeds::Constant(settings.straight_speed_mm_s),
                                      c.observed, c.label, c.mu_deg);
      row.pass = row.comparison.max_ape_pct < settings.straight_max_ape_pct;
    } else {
      row.comparison = compare_orientation(c.mu_deg, settings.bend_radius_mm,
                                           settings.pipe_radius_mm, settings.bend_speed_mm_s,
                                           c.observed, c.label);
      row.pass = std::abs(row.comparison.max_ape_pct - c.reported_ape_pct) <=
                 settings.reported_ape_tolerance_pct;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool all_gated_pass(const std::vector<ValidationRow>& rows) {
  for (const ValidationRow& r : rows)
    if (r.reference.gated && !r.pass) return false;
  return true;
}

}  // namespace pipeclimb
