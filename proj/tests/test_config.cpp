#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "pipeclimb/config.hpp"
#include "pipeclimb/errors.hpp"

using namespace pipeclimb;

namespace {

std::size_t error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    (void)parse_scenario(in, "test", ".");
  } catch (const ConfigError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_CASE("network parser") {
  std::istringstream in(
      "# comment\n\npipe_radius 50\nstraight 100 vertical  # trailing\n"
      "bend 200 90 long sweep\n");
  const PipeNetwork net = parse_network(in, "t");
  REQUIRE(net.size() == 2);
  CHECK(net.spec().inner_radius_mm == 50.0);
  CHECK(std::get<Bend>(net.segments()[1]).label == "long sweep");

  std::istringstream unknown("straight 100 vertical\ntee 5\n");
  try {
    (void)parse_network(unknown, "t");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("t:2:") == 0);
  }

  std::istringstream scenario_key("gear_j 1\n");
  CHECK_THROWS_AS((void)parse_network(scenario_key, "t"), ConfigError);
}

TEST_CASE("network writer round-trips") {
  const PipeNetwork net = reference_network();
  std::stringstream buf;
  write_network(net, buf);
  const PipeNetwork back = parse_network(buf, "rt");
  REQUIRE(back.size() == net.size());
  CHECK(total_centerline_length(back) == total_centerline_length(net));
  CHECK(back.spec().inner_radius_mm == net.spec().inner_radius_mm);
}

TEST_CASE("scenario parser") {
  std::istringstream in(
      "name demo\npipe_radius 100\nstraight 500 vertical\nbend 300 90\n"
      "gear_j 2\ngear_k 20\ninput_rpm 60\nsprocket_mm 70\nrobot_length_mm 150\n"
      "mu_deg 0 30\nmu_deg 400\nmode both\ndt_s 0.02\nrecord_stride 5\n"
      "spring_preload_mm 2\nspring_bend_extra_mm 1\nspring_max_mm 10\n"
      "linkage_span_mm 80\nspring_phi_deg 7\neffective_distance_mm 600\n");
  const Scenario sc = parse_scenario(in, "t", ".");
  CHECK(sc.name == "demo");
  CHECK(sc.network.size() == 2);
  CHECK(sc.robot.differential.gear_j == 2.0);
  CHECK(sc.robot.differential.gear_k == 20.0);
  CHECK(sc.robot.differential.input_rpm == 60.0);
  CHECK(sc.robot.sprocket_diameter_mm == 70.0);
  CHECK(sc.robot.robot_length_mm == 150.0);
  CHECK(sc.mu_deg == std::vector<double>{0.0, 30.0, 40.0});
  CHECK(sc.modes.size() == 2);
  CHECK(sc.settings.dt_s == 0.02);
  CHECK(sc.settings.record_stride == 5);
  CHECK(sc.robot.springs.preload_mm == 2.0);
  CHECK(sc.robot.springs.phi_max_deg == 7.0);
  CHECK(sc.settings.effective_distance_mm == 600.0);
  CHECK_FALSE(sc.settings.speed_override_mm_s.has_value());
}

TEST_CASE("scenario errors carry line numbers") {
  CHECK(error_line("straight 100 vertical\nbogus 1\n") == 2);
  CHECK(error_line("straight 100 vertical\ngear_j abc\n") == 2);
  CHECK(error_line("straight 100 vertical\ngear_j 1 2\n") == 2);
  CHECK(error_line("straight 100 sideways\n") == 1);
  CHECK(error_line("straight 100 vertical\nmode reverse\n") == 2);
  CHECK(error_line("straight 100 vertical\nrecord_stride 0\n") == 2);
  CHECK(error_line("pipe_radius 100\nstraight 5 vertical\nbend 50 90\n") == 3);
  CHECK(error_line("gear_j 1\n") == 0);  // no segments
  CHECK(error_line("straight 100 vertical\nnetwork missing.net\n") == 2);
  CHECK(error_line("straight 100 vertical\nname bad/name\n") == 2);
}

TEST_CASE("scenario includes a network file relative to itself") {
  const auto dir = std::filesystem::temp_directory_path() / "pipeclimb_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "net.net") << "pipe_radius 40\nstraight 100 horizontal\n";
    std::ofstream(dir / "s.cfg") << "name inc\nnetwork net.net\nmu_deg 30\n";
  }
  const Scenario sc = load_scenario(dir / "s.cfg");
  CHECK(sc.network.size() == 1);
  CHECK(sc.network.spec().inner_radius_mm == 40.0);
  CHECK(sc.robot.mu_deg == 30.0);
  CHECK_THROWS_AS((void)load_scenario(dir / "nope.cfg"), ConfigError);
  std::filesystem::remove_all(dir);
}
