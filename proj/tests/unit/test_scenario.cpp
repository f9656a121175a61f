#include <doctest.h>

#include <fstream>

#include "firstlook/error.hpp"
#include "firstlook/scenario.hpp"
#include "fixtures.hpp"

using namespace firstlook;

namespace {

const std::filesystem::path kScenarios = std::filesystem::path(FIRSTLOOK_SOURCE_DIR) / "scenarios";

const char* const kMinimal = R"(
name: minimal
world:
  surface: plane
  y_min: -20
  y_max: 20
route:
  landmarks:
    - [0, -10, 30]
    - [0, 10, 30]
)";

Error parse_error(const std::string& text) {
    try {
        parse_scenario_text(text);
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected an error");
    return Error(ErrorCode::RuntimeAbort, "unreachable");
}

}  // namespace

TEST_CASE("bundled reference scenario echoes the published simulation parameters") {
    const Scenario s = parse_scenario(kScenarios / "feiring-like.yaml");
    CHECK(s.planner.d_view == 20.0);
    CHECK(rad2deg(s.camera.alpha) == doctest::Approx(69.4).epsilon(1e-12));
    CHECK(rad2deg(s.camera.beta) == doctest::Approx(45.0).epsilon(1e-12));
    CHECK(s.camera.gamma_h == 0.8);
    CHECK(s.camera.gamma_v == 0.8);
    CHECK(s.planner.horizon_n == 5);
    const std::string echo = describe_scenario(s);
    CHECK(echo.find("d_view: 20") != std::string::npos);
    CHECK(echo.find("horizon: 5") != std::string::npos);
}

TEST_CASE("every bundled scenario parses") {
    for (const auto& entry : std::filesystem::directory_iterator(kScenarios)) {
        if (entry.path().extension() != ".yaml") continue;
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(parse_scenario(entry.path()));
    }
}

TEST_CASE("defaults of a minimal scenario") {
    const Scenario s = parse_scenario_text(kMinimal);
    CHECK(s.name == "minimal");
    CHECK(s.planner.d_view == 20.0);
    CHECK(s.planner.step_scale_limit == 40.0);
    CHECK(s.mission.sweep.mode == SweepMode::SinglePass);
    // Locality defaults to three quarters of the lateral step at the desired standoff.
    CHECK(s.route.locality_radius ==
          doctest::Approx(0.75 * overlap_steps(s.camera, 20.0).d_hov).epsilon(1e-12));
    CHECK(s.route.landmarks.size() == 2);
    CHECK(s.world.kind == SurfaceKind::Plane);
}

TEST_CASE("overlap above one names the violated bound") {
    std::string text = kMinimal;
    text += "camera:\n  gamma_h: 1.3\n";
    const Error e = parse_error(text);
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("gamma_h") != std::string::npos);
}

TEST_CASE("missing landmarks is a validation error") {
    const Error e = parse_error("world:\n  surface: plane\nroute:\n  locality_radius: 2\n");
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("landmarks") != std::string::npos);
    CHECK(parse_error("world:\n  surface: plane\n").code() == ErrorCode::ValidationError);
}

TEST_CASE("unknown keys are rejected with their line") {
    std::string text = kMinimal;
    text += "planner:\n  d_veiw: 20\n";
    const Error e = parse_error(text);
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("d_veiw") != std::string::npos);
    CHECK(std::string(e.what()).find("line 12") != std::string::npos);
}

TEST_CASE("malformed values and syntax are parse errors") {
    CHECK(parse_error(std::string(kMinimal) + "planner:\n  d_view: far\n").code() == ErrorCode::ParseError);
    CHECK(parse_error("world: [unclosed\n").code() == ErrorCode::ParseError);
    CHECK(parse_error(std::string(kMinimal) + "vehicle:\n  start: [1, 2]\n").code() == ErrorCode::ParseError);
}

TEST_CASE("nested invariants are enforced at parse time") {
    CHECK(parse_error(std::string(kMinimal) + "lidar:\n  max_range: 0\n").code() == ErrorCode::ValidationError);
    CHECK(parse_error(std::string(kMinimal) + "vehicle:\n  tick_dt: 0\n").code() == ErrorCode::ValidationError);
    CHECK(parse_error(std::string(kMinimal) + "planner:\n  horizon: 0\n").code() == ErrorCode::ValidationError);
    CHECK(parse_error(std::string(kMinimal) + "mission:\n  mode: zigzag\n").code() == ErrorCode::ValidationError);
    const Error cell = parse_error("world:\n  surface: plane\n  cell: -1\n"
                                   "route:\n  landmarks: [[0, 0, 30]]\n");
    CHECK(cell.code() == ErrorCode::ValidationError);
    CHECK(std::string(cell.what()).find("cell") != std::string::npos);
}

TEST_CASE("mesh files must exist and load relative to the scenario") {
    fixtures::TempDir dir("scn");
    CHECK(parse_error("world:\n  surface: file\n  mesh: nowhere.obj\nroute:\n  landmarks: [[0, 0, 0]]\n")
              .code() == ErrorCode::ValidationError);

    SurfaceParams p;
    save_mesh(make_surface(SurfaceKind::Plane, p, 0), dir / "wall.obj");
    std::ofstream(dir / "s.yaml") << "world:\n  surface: file\n  mesh: wall.obj\n"
                                     "route:\n  landmarks: [[0, 0, 30]]\n";
    const Scenario s = parse_scenario(dir / "s.yaml");
    CHECK_FALSE(s.world.kind.has_value());
    CHECK(build_world(s).triangles.size() == make_surface(SurfaceKind::Plane, p, 0).triangles.size());
    CHECK_THROWS_AS(parse_scenario(dir / "absent.yaml"), Error);
}

TEST_CASE("recede directive is applied when the world is built") {
    const Scenario s = parse_scenario(kScenarios / "receded_wall.yaml");
    REQUIRE(s.world.recede.has_value());
    const SurfaceMesh m = build_world(s);
    for (const auto& v : m.vertices) CHECK(v.x() == 25.0);
}

TEST_CASE("the echo re-parses to the same scenario") {
    const Scenario a = parse_scenario(kScenarios / "lawnmower.yaml");
    const std::string echo = describe_scenario(a);
    const Scenario b = parse_scenario_text(echo);
    CHECK(describe_scenario(b) == echo);
}
