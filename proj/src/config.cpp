#include "pipeclimb/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "pipeclimb/errors.hpp"

namespace pipeclimb {
namespace {

struct Line {
  std::size_t number = 0;
  std::string keyword;
  std::vector<std::string> values;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line;
    line.number = number;
    if (!(words >> line.keyword)) continue;
    for (std::string w; words >> w;) line.values.push_back(w);
    lines.push_back(std::move(line));
  }
  return lines;
}

class LineReader {
 public:
  LineReader(const std::string& source, const Line& line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(source_, line_.number, what);
  }

  void expect_count(std::size_t lo, std::size_t hi) const {
    const std::size_t n = line_.values.size();
    if (n < lo || n > hi) {
      fail("'" + line_.keyword + "' expects " +
           (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
           " value(s), got " + std::to_string(n));
    }
  }

  [[nodiscard]] double number(std::size_t i) const {
    const std::string& text = line_.values.at(i);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
      fail("'" + line_.keyword + "': '" + text + "' is not a finite number");
    return value;
  }

  [[nodiscard]] double single_number() const {
    expect_count(1, 1);
    return number(0);
  }

  [[nodiscard]] std::size_t count(std::size_t i) const {
    const double v = number(i);
    if (v < 1.0 || v != std::floor(v)) fail("'" + line_.keyword + "' expects a positive integer");
    return static_cast<std::size_t>(v);
  }

  [[nodiscard]] const Line& line() const noexcept { return line_; }

 private:
  const std::string& source_;
  const Line& line_;
};

// Accumulates network lines; returns false for keywords it does not own.
class NetworkBuilder {
 public:
  bool accept(const LineReader& r) {
    const Line& line = r.line();
    if (line.keyword == "pipe_radius") {
      if (radius_) r.fail("pipe_radius given more than once");
      radius_ = r.single_number();
      if (!(*radius_ > 0.0)) r.fail("pipe_radius must be > 0");
    } else if (line.keyword == "straight") {
      r.expect_count(2, 2);
      const double length = r.number(0);
      if (!(length > 0.0)) r.fail("straight length must be > 0");
      const std::string& g = line.values[1];
      GravityOrientation gravity;
      if (g == "vertical")
        gravity = GravityOrientation::Vertical;
      else if (g == "horizontal")
        gravity = GravityOrientation::Horizontal;
      else
        r.fail("straight orientation must be 'vertical' or 'horizontal', got '" + g + "'");
      segments_.push_back(Straight{length, gravity});
      lines_.push_back(line.number);
    } else if (line.keyword == "bend") {
      if (line.values.size() < 2) r.expect_count(2, 2);
      Bend bend{r.number(0), r.number(1), {}};
      for (std::size_t i = 2; i < line.values.size(); ++i)
        bend.label += (i > 2 ? " " : "") + line.values[i];
      if (!(bend.sweep_deg > 0.0 && bend.sweep_deg < 360.0))
        r.fail("bend sweep must lie in (0, 360) degrees");
      segments_.push_back(std::move(bend));
      lines_.push_back(line.number);
    } else {
      return false;
    }
    return true;
  }

  void append(const PipeNetwork& other, const LineReader& r) {
    if (radius_ && *radius_ != other.spec().inner_radius_mm)
      r.fail("included network has a different pipe_radius");
    radius_ = other.spec().inner_radius_mm;
    for (const Segment& s : other.segments()) {
      segments_.push_back(s);
      lines_.push_back(r.line().number);
    }
  }

  [[nodiscard]] PipeNetwork build(const std::string& source) const {
    const PipeSpec spec{radius_.value_or(PipeSpec{}.inner_radius_mm)};
    // Re-check bend radii here so the error names the offending line.
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      if (const auto* bend = std::get_if<Bend>(&segments_[i]);
          bend && !(bend->bend_radius_mm > spec.inner_radius_mm))
        throw ConfigError(source, lines_[i], "bend radius must exceed pipe_radius");
    }
    return PipeNetwork(spec, segments_);
  }

 private:
  std::optional<double> radius_;
  std::vector<Segment> segments_;
  std::vector<std::size_t> lines_;
};

}  // namespace

PipeNetwork parse_network(std::istream& in, const std::string& source) {
  NetworkBuilder builder;
  const std::vector<Line> lines = tokenize(in);
  for (const Line& line : lines) {
    const LineReader r(source, line);
    if (!builder.accept(r)) r.fail("unknown keyword '" + line.keyword + "'");
  }
  return builder.build(source);
}

PipeNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open network file");
  return parse_network(in, path.string());
}

Scenario parse_scenario(std::istream& in, const std::string& source,
                        const std::filesystem::path& base_dir) {
  Scenario sc;
  NetworkBuilder builder;
  bool mu_seen = false;
  bool mode_seen = false;

  using Setter = std::function<void(const LineReader&)>;
  auto num = [](double& field) {
    return Setter([&field](const LineReader& r) { field = r.single_number(); });
  };
  auto opt = [](std::optional<double>& field) {
    return Setter([&field](const LineReader& r) { field = r.single_number(); });
  };
  RobotConfig& robot = sc.robot;
  SimSettings& settings = sc.settings;
  const std::map<std::string, Setter> keys{
      {"gear_j", num(robot.differential.gear_j)},
      {"gear_k", num(robot.differential.gear_k)},
      {"input_rpm", num(robot.differential.input_rpm)},
      {"input_torque", num(robot.differential.input_torque)},
      {"inertia_I1", num(robot.differential.inertia_I1)},
      {"inertia_I01", num(robot.differential.inertia_I01)},
      {"inertia_I03", num(robot.differential.inertia_I03)},
      {"sprocket_mm", num(robot.sprocket_diameter_mm)},
      {"robot_length_mm", num(robot.robot_length_mm)},
      {"spring_preload_mm", num(robot.springs.preload_mm)},
      {"spring_bend_extra_mm", num(robot.springs.bend_extra_mm)},
      {"spring_max_mm", num(robot.springs.max_compression_mm)},
      {"linkage_span_mm", num(robot.springs.linkage_span_mm)},
      {"spring_phi_deg", num(robot.springs.phi_max_deg)},
      {"dt_s", num(settings.dt_s)},
      {"effective_distance_mm", opt(settings.effective_distance_mm)},
      {"speed_override_mm_s", opt(settings.speed_override_mm_s)},
      {"record_stride",
       [&settings](const LineReader& r) {
         r.expect_count(1, 1);
         settings.record_stride = r.count(0);
       }},
      {"name",
       [&sc](const LineReader& r) {
         r.expect_count(1, 1);
         sc.name = r.line().values[0];
         for (char c : sc.name) {
           if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
             r.fail("name may only contain letters, digits, '_' and '-'");
         }
       }},
      {"mu_deg",
       [&](const LineReader& r) {
         if (r.line().values.empty()) r.expect_count(1, 1);
         if (!mu_seen) sc.mu_deg.clear();
         mu_seen = true;
         for (std::size_t i = 0; i < r.line().values.size(); ++i)
           sc.mu_deg.push_back(normalize_deg(r.number(i)));
       }},
      {"mode",
       [&](const LineReader& r) {
         if (r.line().values.empty()) r.expect_count(1, 1);
         if (!mode_seen) sc.modes.clear();
         mode_seen = true;
         for (const std::string& v : r.line().values) {
           if (v == "both") {
             sc.modes.push_back(DriveMode::PassiveDifferential);
             sc.modes.push_back(DriveMode::FixedEqualSpeed);
             continue;
           }
           try {
             sc.modes.push_back(parse_drive_mode(v));
           } catch (const Error& e) {
             r.fail(e.what());
           }
         }
       }},
  };

  for (const Line& line : tokenize(in)) {
    const LineReader r(source, line);
    if (builder.accept(r)) continue;
    if (line.keyword == "network") {
      r.expect_count(1, 1);
      std::filesystem::path p = line.values[0];
      if (p.is_relative()) p = base_dir / p;
      if (!std::filesystem::exists(p)) r.fail("network file '" + p.string() + "' not found");
      try {
        builder.append(load_network(p), r);
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        r.fail(e.what());
      }
      continue;
    }
    const auto it = keys.find(line.keyword);
    if (it == keys.end()) r.fail("unknown keyword '" + line.keyword + "'");
    it->second(r);
  }

  try {
    sc.network = builder.build(source);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(source, 0, e.what());
  }
  if (sc.network.empty()) throw ConfigError(source, 0, "scenario has no pipe segments");
  if (!(settings.dt_s > 0.0)) throw ConfigError(source, 0, "dt_s must be > 0");
  if (sc.mu_deg.empty() || sc.modes.empty())
    throw ConfigError(source, 0, "scenario needs at least one mu_deg and one mode");
  sc.robot.mu_deg = sc.mu_deg.front();
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open scenario file");
  return parse_scenario(in, path.string(), path.parent_path());
}

void write_network(const PipeNetwork& network, std::ostream& out) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "pipe_radius %.17g\n", network.spec().inner_radius_mm);
  out << buf;
  for (const Segment& segment : network.segments()) {
    if (const auto* s = std::get_if<Straight>(&segment)) {
      std::snprintf(buf, sizeof buf, "straight %.17g %s\n", s->length_mm,
                    s->gravity == GravityOrientation::Vertical ? "vertical" : "horizontal");
      out << buf;
    } else {
      const auto& b = std::get<Bend>(segment);
      std::snprintf(buf, sizeof buf, "bend %.17g %.17g", b.bend_radius_mm, b.sweep_deg);
      out << buf;
      if (!b.label.empty()) out << ' ' << b.label;
      out << '\n';
    }
  }
}

}  // namespace pipeclimb
