#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "vpp/obstacle.hpp"
#include "vpp/operators.hpp"

using namespace vpp;
using std::numbers::pi;

namespace {

double chi_area(const ScalarCellField& chi) {
    double s = 0.0;
    for (double x : chi.values()) s += x;
    return s * chi.grid().cell_area();
}

}  // namespace

TEST(Chi, NoneIsZero) {
    const Grid g(8, 8);
    EXPECT_EQ(test::max_abs(sample_chi(Obstacle::none(), 0.3, g).values()), 0.0);
    EXPECT_EQ(test::max_abs(sample_chi_faces(Obstacle::none(), 0.3, g)), 0.0);
}

TEST(Chi, HalfCellDiskHitsOneCell) {
    const Grid g(9, 9);
    const Obstacle o = Obstacle::disk({0.5, 0.5}, 0.5 * g.hx(), {}, 0.0, 1.0);
    const ScalarCellField chi = sample_chi(o, 0.0, g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) EXPECT_EQ(chi(i, j), (i == 4 && j == 4) ? 1.0 : 0.0);
}

TEST(Chi, AreaWithinPerimeterBand) {
    const Grid g(64, 64);
    const double r = 0.2;
    const double h = g.hx();
    for (ChiMode mode : {ChiMode::binary, ChiMode::fraction}) {
        const Obstacle o = Obstacle::disk({0.5, 0.5}, r, {}, 0.0, 1.0, mode);
        EXPECT_NEAR(chi_area(sample_chi(o, 0.0, g)), pi * r * r, 4.0 * pi * r * h);
    }
    // the exact fraction mode is far tighter than the bound
    const Obstacle o = Obstacle::disk({0.43, 0.51}, r, {}, 0.0, 1.0, ChiMode::fraction);
    EXPECT_NEAR(chi_area(sample_chi(o, 0.0, g)), pi * r * r, 1e-12);
}

TEST(Chi, ValueRanges) {
    const Grid g(20, 16, 1.0, 0.8);
    const Obstacle bin = Obstacle::disk({0.47, 0.41}, 0.17, {}, 0.0, 1.0, ChiMode::binary);
    const Obstacle frac = Obstacle::disk({0.47, 0.41}, 0.17, {}, 0.0, 1.0, ChiMode::fraction);
    for (double x : sample_chi(bin, 0.0, g).values()) EXPECT_TRUE(x == 0.0 || x == 1.0);
    for (double x : sample_chi(frac, 0.0, g).values()) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
    }
    const VelocityField faces = sample_chi_faces(frac, 0.0, g);
    for (double x : faces.u_values()) EXPECT_TRUE(x >= 0.0 && x <= 1.0);
    for (double x : faces.v_values()) EXPECT_TRUE(x >= 0.0 && x <= 1.0);
}

TEST(Chi, RejectsTimesOutsideMotion) {
    const Grid g(8, 8);
    const Obstacle o = Obstacle::disk({0.5, 0.5}, 0.1, {0.1, 0.0}, 0.0, 1.0);
    EXPECT_THROW(sample_chi(o, 1.5, g), std::out_of_range);
    EXPECT_THROW(sample_chi(o, -0.1, g), std::out_of_range);
    EXPECT_THROW(sample_solid_velocity(o, 2.0, g), std::out_of_range);
    EXPECT_NO_THROW(sample_chi(o, 1.0, g));
}

TEST(Overlap, KnownAreas) {
    EXPECT_NEAR(disk_rectangle_overlap({0.0, 0.0}, 0.5, -1.0, 1.0, -1.0, 1.0), pi / 4.0, 1e-14);
    EXPECT_NEAR(disk_rectangle_overlap({0.0, 0.0}, 0.5, 0.0, 1.0, 0.0, 1.0), pi / 16.0, 1e-14);
    EXPECT_NEAR(disk_rectangle_overlap({0.0, 0.0}, 1.0, 0.0, 1.0, -1.0, 1.0), pi / 2.0, 1e-14);
    EXPECT_EQ(disk_rectangle_overlap({0.0, 0.0}, 0.5, 2.0, 3.0, 2.0, 3.0), 0.0);
    EXPECT_NEAR(disk_rectangle_overlap({0.0, 0.0}, 10.0, 0.1, 0.3, 0.2, 0.7), 0.1, 1e-14);
}

TEST(Overlap, MatchesMonteCarlo) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Vec2 c{0.31, 0.62};
    const double r = 0.27;
    int hits = 0;
    const int samples = 400000;
    for (int k = 0; k < samples; ++k) {
        const double x = 0.2 + 0.3 * u(rng), y = 0.4 + 0.5 * u(rng);
        if (std::hypot(x - c.x, y - c.y) < r) ++hits;
    }
    const double mc = 0.15 * hits / samples;
    EXPECT_NEAR(disk_rectangle_overlap(c, r, 0.2, 0.5, 0.4, 0.9), mc, 5e-4);
}

TEST(SolidVelocity, PureTranslation) {
    const Grid g(6, 6);
    const Obstacle o = Obstacle::disk({0.5, 0.5}, 0.1, {1.0, 0.0}, 0.0, 0.2);
    const VelocityField vs = sample_solid_velocity(o, 0.1, g);
    for (double x : vs.u_values()) EXPECT_EQ(x, 1.0);
    for (double x : vs.v_values()) EXPECT_EQ(x, 0.0);
}

TEST(SolidVelocity, RotationIsSolenoidal) {
    const Grid g(12, 10, 1.2, 1.0);
    const Obstacle o = Obstacle::disk({0.6, 0.5}, 0.2, {}, 1.0, 1.0);
    EXPECT_LE(test::max_abs(divergence(sample_solid_velocity(o, 0.5, g)).values()), 1e-12);
}

TEST(SolidVelocity, MatchesRigidMotion) {
    const Grid g(16, 16);
    const Vec2 c0{0.4, 0.45};
    const Vec2 vel{0.2, -0.1};
    const double omega = 1.3;
    const double t = 0.5;
    const Obstacle o = Obstacle::disk(c0, 0.15, vel, omega, 1.0);
    const VelocityField vs = sample_solid_velocity(o, t, g);
    const double cx = c0.x + vel.x * t, cy = c0.y + vel.y * t;
    std::mt19937_64 rng(43);
    for (int k = 0; k < 10; ++k) {
        const int i = static_cast<int>(rng() % (g.nx() + 1)), j = static_cast<int>(rng() % g.ny());
        EXPECT_NEAR(vs.u(i, j), vel.x - omega * (g.cell_y(j) - cy), 1e-14);
        const int a = static_cast<int>(rng() % g.nx()), b = static_cast<int>(rng() % (g.ny() + 1));
        EXPECT_NEAR(vs.v(a, b), vel.y + omega * (g.cell_x(a) - cx), 1e-14);
    }
}

TEST(Band, EmptyWithoutBody) { EXPECT_TRUE(boundary_band(Obstacle::none(), 0.0, Grid(8, 8)).empty()); }

TEST(Band, CountAndDefinition) {
    const Grid g(64, 64);
    const double h = g.hx();
    const double r = 10.0 * h;
    const Obstacle o = Obstacle::disk({0.52, 0.47}, r, {}, 0.0, 1.0);
    const auto band = boundary_band(o, 0.0, g);
    const double ring = 2.0 * pi * r / h;
    EXPECT_GE(static_cast<double>(band.size()), 0.5 * ring);
    EXPECT_LE(static_cast<double>(band.size()), 4.0 * ring);
    for (const CellIndex& c : band) {
        const double d = std::hypot(g.cell_x(c.i) - 0.52, g.cell_y(c.j) - 0.47);
        EXPECT_LE(std::abs(d - r), h * std::sqrt(2.0) + 1e-15);
    }
}

TEST(Trajectory, Continuity) {
    const Obstacle o = Obstacle::disk({0.3, 0.4}, 0.1, {0.3, 0.2}, 2.0, 1.0);
    const double speed = std::hypot(0.3, 0.2);
    for (double t : {0.0, 0.1, 0.37, 0.8}) {
        for (double d : {1e-6, 1e-3, 0.05, 0.2}) {
            const Vec2 a = o.center(t), b = o.center(t + d);
            EXPECT_LE(std::hypot(b.x - a.x, b.y - a.y), speed * d + 1e-15);
        }
    }
}

TEST(Trajectory, Clearance) {
    const Grid g(16, 16);
    const Obstacle stays = Obstacle::disk({0.3, 0.5}, 0.1, {0.2, 0.0}, 0.0, 1.0);
    EXPECT_NEAR(stays.clearance(g), 0.2, 1e-14);
    EXPECT_NO_THROW(stays.check_inside(g));
    const Obstacle leaves = Obstacle::disk({0.3, 0.5}, 0.1, {1.0, 0.0}, 0.0, 1.0);
    EXPECT_THROW(leaves.check_inside(g), std::invalid_argument);
    EXPECT_THROW(Obstacle::disk({0.5, 0.5}, 0.0, {}, 0.0, 1.0), std::invalid_argument);
}
