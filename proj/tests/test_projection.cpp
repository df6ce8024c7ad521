#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "crossconv/projection.hpp"
#include "test_util.hpp"

using namespace crossconv;

namespace {

// Two-marker helical motion; the vertical channel keeps moving at every
// angle, so no projection is degenerate.
MocapSequence make_helix(std::size_t n = 60, double scale = 1.0, const std::string& name = "helix",
                         double phase = 0.0) {
    std::vector<std::vector<MarkerPosition>> frames(n);
    for (std::size_t f = 0; f < n; ++f) {
        const double t = 0.15 * static_cast<double>(f) + phase;
        MarkerPosition ankle{scale * 40.0 * std::cos(t), scale * (60.0 + 10.0 * std::sin(0.3 * t)),
                             scale * 40.0 * std::sin(t)};
        MarkerPosition wrist{scale * 25.0 * std::cos(1.7 * t + 0.4),
                             scale * (140.0 + 30.0 * std::sin(0.5 * t)),
                             scale * 55.0 * std::sin(1.3 * t)};
        frames[f] = {ankle, wrist};
    }
    return MocapSequence(name, Handedness::right, 120.0, {"ankle", "wrist"}, std::move(frames));
}

const MocapChannels kHelixChannels{"ankle", "wrist", {0, 59}};

}  // namespace

TEST_CASE("sincos_deg is exact at the quadrant angles") {
    CHECK(sincos_deg(0.0) == std::array<double, 2>{0.0, 1.0});
    CHECK(sincos_deg(90.0) == std::array<double, 2>{1.0, 0.0});
    CHECK(sincos_deg(180.0) == std::array<double, 2>{0.0, -1.0});
    CHECK(sincos_deg(270.0) == std::array<double, 2>{-1.0, 0.0});
    CHECK(sincos_deg(-90.0) == std::array<double, 2>{-1.0, 0.0});
    CHECK(sincos_deg(360.0) == std::array<double, 2>{0.0, 1.0});
    CHECK(sincos_deg(450.0) == std::array<double, 2>{1.0, 0.0});
}

TEST_CASE("project at 0 degrees is the identity on (z, y)") {
    const auto seq = make_helix();
    const KeypointSequence proj = project(seq, 0.0);
    for (std::size_t f = 0; f < seq.frame_count(); ++f)
        for (std::size_t m = 0; m < 2; ++m) {
            CHECK(proj.at(f, m).x == seq.at(f, m).z);
            CHECK(proj.at(f, m).y == -seq.at(f, m).y);
        }
}

TEST_CASE("project at 90 degrees maps the horizontal coordinate to x") {
    const auto seq = make_helix();
    const KeypointSequence proj = project(seq, 90.0);
    for (std::size_t f = 0; f < seq.frame_count(); ++f)
        for (std::size_t m = 0; m < 2; ++m) CHECK(proj.at(f, m).x == seq.at(f, m).x);
}

TEST_CASE("project follows the rotation formula at 30 degrees") {
    std::vector<std::vector<MarkerPosition>> frames(2, {{1.0, 5.0, 2.0}});
    const MocapSequence seq("pt", Handedness::right, 120.0, {"m"}, std::move(frames));
    const KeypointSequence proj = project(seq, 30.0);
    // z' = 2 cos30 + 1 sin30 = sqrt(3) + 0.5
    CHECK(proj.at(0, 0).x == doctest::Approx(std::sqrt(3.0) + 0.5).epsilon(1e-12));
    CHECK(proj.at(0, 0).y == -5.0);
}

TEST_CASE("project is periodic with period 360 degrees") {
    const auto seq = make_helix();
    // angles chosen exactly representable so theta+360 is computed exactly
    for (double theta : {-80.0, -33.5, 0.0, 12.25, 45.0, 89.5, 181.0}) {
        const KeypointSequence a = project(seq, theta);
        const KeypointSequence b = project(seq, theta + 360.0);
        const KeypointSequence c = project(seq, theta - 360.0);
        for (std::size_t f = 0; f < seq.frame_count(); ++f)
            for (std::size_t m = 0; m < 2; ++m) {
                CHECK(a.at(f, m).x == b.at(f, m).x);
                CHECK(a.at(f, m).x == c.at(f, m).x);
            }
    }
}

TEST_CASE("default theta grid matches the published sweep") {
    const auto grid = default_theta_grid();
    REQUIRE(grid.size() == 18);
    CHECK(grid.front() == -80.0);
    CHECK(grid.back() == 90.0);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] - grid[i - 1] == 10.0);
}

TEST_CASE("sweep of a motion against itself is zero at theta 0") {
    const auto seq = make_helix();
    const auto result = sweep(seq, kHelixChannels, seq, kHelixChannels, default_theta_grid());
    CHECK(result.errors.empty());
    REQUIRE(result.entries.size() == 18);
    bool found = false;
    for (const auto& e : result.entries)
        if (e.theta_deg == 0.0) {
            CHECK(e.dis == 0.0);
            found = true;
        }
    CHECK(found);
    for (const auto& e : result.entries) {
        CHECK(e.dis >= 0.0);
        CHECK(std::isfinite(e.dis));
    }
}

TEST_CASE("dis(theta) varies smoothly: fine-grid steps are bounded by coarse-grid steps") {
    const auto base = make_helix();
    const auto probe = make_helix(60, 1.0, "helix2", 0.7);

    auto max_step = [&](double step_deg) {
        std::vector<double> grid;
        for (double t = -80.0; t <= 90.0 + 1e-9; t += step_deg) grid.push_back(t);
        const auto r = sweep(base, kHelixChannels, probe, kHelixChannels, grid);
        REQUIRE(r.errors.empty());
        double worst = 0.0;
        for (std::size_t i = 1; i < r.entries.size(); ++i)
            worst = std::max(worst, std::abs(r.entries[i].dis - r.entries[i - 1].dis));
        return worst;
    };

    // refining the grid cannot make the curve rougher
    CHECK(max_step(1.0) <= max_step(10.0));
}

TEST_CASE("uniform spatial scaling does not change the sweep") {
    const auto base = make_helix();
    const auto probe = make_helix(60, 1.0, "probe", 0.3);
    const auto probe_scaled = make_helix(60, 2.5, "probe", 0.3);
    const auto r1 = sweep(base, kHelixChannels, probe, kHelixChannels, default_theta_grid());
    const auto r2 = sweep(base, kHelixChannels, probe_scaled, kHelixChannels, default_theta_grid());
    REQUIRE(r1.entries.size() == r2.entries.size());
    for (std::size_t i = 0; i < r1.entries.size(); ++i)
        CHECK(r2.entries[i].dis == doctest::Approx(r1.entries[i].dis).epsilon(1e-9));
}

TEST_CASE("a degenerate projection becomes an error entry and the sweep continues") {
    // probe ankle moves only along x: at theta=0 the projected track is
    // stationary, away from 0 the x motion enters the horizontal coordinate
    const std::size_t n = 40;
    std::vector<std::vector<MarkerPosition>> frames(n);
    for (std::size_t f = 0; f < n; ++f) {
        MarkerPosition ankle{10.0 * static_cast<double>(f), 50.0, 7.0};
        MarkerPosition wrist{3.0 * static_cast<double>(f),
                             100.0 + 5.0 * std::sin(0.2 * static_cast<double>(f)), 20.0};
        frames[f] = {ankle, wrist};
    }
    const MocapSequence probe("flat", Handedness::right, 120.0, {"ankle", "wrist"},
                              std::move(frames));
    const MocapChannels ch{"ankle", "wrist", {0, 39}};
    const auto base = make_helix(40);
    const MocapChannels base_ch{"ankle", "wrist", {0, 39}};

    const auto r = sweep(base, base_ch, probe, ch, default_theta_grid());
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].theta_deg == 0.0);
    CHECK(r.errors[0].message.find("degenerate") != std::string::npos);
    CHECK(r.entries.size() == 17);
}

TEST_CASE("sweep validates its theta grid") {
    const auto seq = make_helix();
    CHECK_THROWS_AS(sweep(seq, kHelixChannels, seq, kHelixChannels, {}), std::invalid_argument);
    CHECK_THROWS_AS(sweep(seq, kHelixChannels, seq, kHelixChannels, {0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep(seq, kHelixChannels, seq, kHelixChannels, {10.0, -10.0}),
                    std::invalid_argument);
}

TEST_CASE("MocapSequence validation") {
    std::vector<std::vector<MarkerPosition>> one(1, {{0, 0, 0}});
    CHECK_THROWS_AS(MocapSequence("s", Handedness::right, 120.0, {"m"}, std::move(one)),
                    std::invalid_argument);
    std::vector<std::vector<MarkerPosition>> bad{{{0, 0, 0}}, {{std::nan(""), 0, 0}}};
    CHECK_THROWS_AS(MocapSequence("s", Handedness::right, 120.0, {"m"}, std::move(bad)),
                    std::invalid_argument);
}
