// pipeclimb: command-line front end for the tracked in-pipe robot simulator.
//
//   pipeclimb speeds   --v 50.24 --R 418.77 --r 137.9 --mu 0
//   pipeclimb simulate --config scenarios/paper_network.cfg --out out/
//   pipeclimb validate [--reference data/reference_speeds.csv]
//   pipeclimb report   --config scenarios/paper_network.cfg --out out/
//
// Exit codes: 0 ok, 1 config/parse/io error, 2 invalid geometry,
// 3 simulation error, 4 validation tolerance failed.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pipeclimb/analysis.hpp"
#include "pipeclimb/bend_kinematics.hpp"
#include "pipeclimb/config.hpp"
#include "pipeclimb/errors.hpp"
#include "pipeclimb/render.hpp"
#include "pipeclimb/traversal.hpp"

namespace fs = std::filesystem;
using namespace pipeclimb;

namespace {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kGeometryError = 2,
  kSimulationError = 3,
  kValidationFailed = 4,
};

int fail(int code, const std::string& msg) {
  std::string escaped;
  for (char c : msg) {
    if (c == '"' || c == '\\') escaped += '\\';
    escaped += c == '\n' ? ' ' : c;
  }
  std::cerr << "error_code=" << code << " msg=\"" << escaped << "\"\n";
  return code;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v + 0.0);
  return buf;
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("PIPECLIMB_OUT"); env && *env) return env;
  return ".";
}

// A bare name such as "paper_network" resolves to a bundled scenario.
fs::path resolve_config(const std::string& arg) {
  fs::path p = arg;
  if (fs::exists(p) || p.has_extension() || p.has_parent_path()) return p;
  const fs::path bundled = fs::path(PIPECLIMB_DATA_DIR) / "scenarios" / (arg + ".cfg");
  return fs::exists(bundled) ? bundled : p;
}

std::string run_stem(const std::string& name, double mu, DriveMode mode) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "_mu%g_", mu);
  return name + buf + to_string(mode);
}

struct SweepOptions {
  std::string config;
  std::vector<double> mu;
  std::vector<std::string> modes;
  double dt = 0.0;
  std::size_t stride = 0;
  std::string out;
};

Scenario load_with_overrides(const SweepOptions& opt) {
  Scenario sc = load_scenario(resolve_config(opt.config));
  if (!opt.mu.empty()) {
    sc.mu_deg.clear();
    for (double m : opt.mu) sc.mu_deg.push_back(normalize_deg(m));
  }
  if (!opt.modes.empty()) {
    sc.modes.clear();
    for (const std::string& m : opt.modes) {
      if (m == "both") {
        sc.modes.push_back(DriveMode::PassiveDifferential);
        sc.modes.push_back(DriveMode::FixedEqualSpeed);
      } else {
        sc.modes.push_back(parse_drive_mode(m));
      }
    }
  }
  if (opt.dt != 0.0) {
    if (!(opt.dt > 0.0)) throw ConfigError("--dt", 0, "time step must be > 0");
    sc.settings.dt_s = opt.dt;
  }
  if (opt.stride != 0) sc.settings.record_stride = opt.stride;
  return sc;
}

// Runs every (mu, mode) pair concurrently; results come back in sweep order.
std::vector<NamedReport> run_sweep(const Scenario& sc) {
  std::vector<std::future<NamedReport>> jobs;
  for (double mu : sc.mu_deg) {
    for (DriveMode mode : sc.modes) {
      jobs.push_back(std::async(std::launch::async, [&sc, mu, mode] {
        RobotConfig robot = sc.robot;
        robot.mu_deg = mu;
        SimSettings settings = sc.settings;
        settings.mode = mode;
        return NamedReport{sc.name, run(sc.network, robot, settings)};
      }));
    }
  }
  std::vector<NamedReport> reports;
  for (auto& job : jobs) reports.push_back(job.get());
  return reports;
}

std::vector<SpeedComparison> comparisons_for(const Scenario& sc,
                                             const std::vector<NamedReport>& reports) {
  std::vector<SpeedComparison> out;
  for (const NamedReport& r : reports) {
    auto rows = segment_comparisons(r.report, sc.network, r.scenario);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    return fail(kConfigError, e.what());
  } catch (const IoError& e) {
    return fail(kConfigError, e.what());
  } catch (const Error& e) {
    return fail(kSimulationError, e.what());
  } catch (const std::exception& e) {
    return fail(kSimulationError, e.what());
  }
}

int cmd_speeds(double v, double bend_radius, double pipe_radius, double mu) {
  TrackSpeeds speeds;
  try {
    if (!(v >= 0.0)) throw GeometryError("speed must be >= 0");
    speeds = bend_track_speeds(v, bend_radius, pipe_radius, mu);
  } catch (const Error& e) {
    return fail(kGeometryError, e.what());
  }
  std::cout << fixed2(speeds(0)) << ' ' << fixed2(speeds(1)) << ' ' << fixed2(speeds(2)) << '\n'
            << "sum " << fixed2(speeds.sum()) << '\n';
  return kOk;
}

int cmd_simulate(const SweepOptions& opt) {
  return guarded([&] {
    const Scenario sc = load_with_overrides(opt);
    const fs::path dir = output_dir(opt.out);
    std::vector<NamedReport> reports;
    try {
      reports = run_sweep(sc);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      return fail(kSimulationError, e.what());
    }

    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
    for (const NamedReport& r : reports) {
      std::ostringstream csv;
      write_timeseries_csv(r.report, csv);
      write_text_file(dir / (run_stem(sc.name, r.report.mu_deg, r.report.mode) + ".csv"),
                      csv.str());
    }
    const RenderedReport rendered = render_report(reports, comparisons_for(sc, reports), false);
    write_rendered(rendered, dir, sc.name);

    for (const NamedReport& r : reports) {
      std::printf("%s mu=%g mode=%s total_time_s=%.2f distance_mm=%.2f v_mm_s=%.3f\n",
                  sc.name.c_str(), r.report.mu_deg, to_string(r.report.mode).c_str(),
                  r.report.total_time_s, r.report.distance_mm(), r.report.nominal_speed_mm_s);
    }
    std::printf("wrote %zu run(s) to %s\n", reports.size(), dir.string().c_str());
    return int(kOk);
  });
}

int cmd_report(const SweepOptions& opt) {
  return guarded([&] {
    const Scenario sc = load_with_overrides(opt);
    std::vector<NamedReport> reports;
    try {
      reports = run_sweep(sc);
    } catch (const Error& e) {
      return fail(kSimulationError, e.what());
    }
    const RenderedReport rendered = render_report(reports, comparisons_for(sc, reports), true);
    write_rendered(rendered, output_dir(opt.out), sc.name);
    std::cout << rendered.table_text;
    return int(kOk);
  });
}

int cmd_validate(const std::string& reference, double bend_v) {
  return guarded([&] {
    const std::vector<ReferenceCase> cases =
        reference.empty() ? builtin_reference() : load_reference(reference);
    ValidationSettings settings;
    settings.straight_speed_mm_s = nominal_speed(RobotConfig{});
    settings.bend_speed_mm_s = bend_v;
    const PipeNetwork net = reference_network();
    settings.pipe_radius_mm = net.spec().inner_radius_mm;
    settings.bend_radius_mm = std::get<Bend>(net.segments().at(1)).bend_radius_mm;

    const auto rows = validate_reference(cases, settings);
    std::cout << render_validation_table(rows);
    if (!all_gated_pass(rows)) return fail(kValidationFailed, "validation tolerance exceeded");
    std::cout << "all gated cases within tolerance\n";
    return int(kOk);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinematic simulator for a tracked in-pipe robot with a passive three-output "
               "differential"};
  app.require_subcommand(1);

  double v = 0, bend_r = 0, pipe_r = 0, mu = 0;
  auto* speeds = app.add_subcommand("speeds", "No-slip track speeds in a bend");
  speeds->add_option("--v", v, "centre speed (mm/s)")->required();
  speeds->add_option("--R", bend_r, "bend centerline radius (mm)")->required();
  speeds->add_option("--r", pipe_r, "pipe inner radius (mm)")->required();
  speeds->add_option("--mu", mu, "orientation of module A (deg)")->required();

  SweepOptions sim_opt;
  auto add_sweep = [](CLI::App* cmd, SweepOptions& o) {
    cmd->add_option("--config", o.config, "scenario file or bundled scenario name")->required();
    cmd->add_option("--mu", o.mu, "override orientation list (deg)");
    cmd->add_option("--mode", o.modes, "override drive modes: passive, fixed, both");
    cmd->add_option("--dt", o.dt, "override time step (s)");
    cmd->add_option("--record-stride", o.stride, "record every n-th step");
    cmd->add_option("--out", o.out, "output directory (default $PIPECLIMB_OUT or .)");
  };
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write CSV time series");
  add_sweep(simulate, sim_opt);
  SweepOptions report_opt;
  auto* report = app.add_subcommand("report", "Run a scenario and render tables and plots");
  add_sweep(report, report_opt);

  std::string reference;
  double bend_v = 50.24;
  auto* validate = app.add_subcommand("validate", "Compare against the bundled reference speeds");
  validate->add_option("--reference", reference, "reference CSV (default: bundled data)");
  validate->add_option("--bend-v", bend_v, "centre speed for the bend law (mm/s)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return fail(kConfigError, e.what());
  }

  if (*speeds) return cmd_speeds(v, bend_r, pipe_r, mu);
  if (*simulate) return cmd_simulate(sim_opt);
  if (*report) return cmd_report(report_opt);
  if (*validate) return cmd_validate(reference, bend_v);
  return kConfigError;
}
