#pragma once

#include <vector>

#include "vpp/grid.hpp"

namespace vpp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// How the characteristic function of the body is discretized.
enum class ChiMode {
    binary,    ///< 1 where the sample point lies inside the body, 0 elsewhere
    fraction,  ///< exact covered area fraction of each cell
};

struct CellIndex {
    int i;
    int j;
    bool operator==(const CellIndex&) const = default;
};

/// A rigid disk on a prescribed trajectory, or no body at all.
///
/// The center moves as c(t) = c0 + velocity * t and the body spins at the
/// angular rate omega about its center, so the solid velocity
/// v_s(x, t) = velocity + omega * (-(y - c_y), x - c_x) is divergence free.
/// Motion is defined on [0, final_time]; queries outside throw.
class Obstacle {
public:
    /// No body: chi is identically zero.
    static Obstacle none();
    static Obstacle disk(Vec2 center0, double radius, Vec2 velocity, double omega, double final_time,
                         ChiMode mode = ChiMode::binary);

    bool present() const { return present_; }
    double radius() const { return radius_; }
    Vec2 translation_velocity() const { return velocity_; }
    double angular_velocity() const { return omega_; }
    double final_time() const { return final_time_; }
    ChiMode chi_mode() const { return mode_; }

    Vec2 center(double t) const;
    Vec2 solid_velocity_at(Vec2 x, double t) const;
    bool contains(Vec2 x, double t) const;
    /// Largest |v_s| over the body.
    double max_solid_speed() const;

    /// Smallest distance between the body and the domain boundary over
    /// [0, final_time]; a disk on a linear path attains it at an endpoint.
    double clearance(const Grid& grid) const;
    /// Throws std::invalid_argument unless clearance(grid) > 0.
    void check_inside(const Grid& grid) const;

private:
    void check_time(double t) const;

    bool present_ = false;
    Vec2 center0_{};
    double radius_ = 0.0;
    Vec2 velocity_{};
    double omega_ = 0.0;
    double final_time_ = 0.0;
    ChiMode mode_ = ChiMode::binary;
};

/// Cell-centered characteristic function of the body at time t, in the
/// obstacle's chi mode (binary: cell center inside; fraction: exact area).
ScalarCellField sample_chi(const Obstacle& obstacle, double t, const Grid& grid);
ScalarCellField sample_chi(const Obstacle& obstacle, double t, const Grid& grid, ChiMode mode);

/// Characteristic function on faces, which is where the penalization acts.
/// Binary mode samples the face center; fraction mode averages the covered
/// fractions of the adjacent cells.
VelocityField sample_chi_faces(const Obstacle& obstacle, double t, const Grid& grid);

/// Solid velocity sampled at every face (only meaningful where chi > 0).
VelocityField sample_solid_velocity(const Obstacle& obstacle, double t, const Grid& grid);

/// Cells whose center lies within one cell diagonal of the body boundary.
std::vector<CellIndex> boundary_band(const Obstacle& obstacle, double t, const Grid& grid);

/// Exact area of the intersection of a disk with an axis-aligned rectangle.
double disk_rectangle_overlap(Vec2 center, double radius, double x0, double x1, double y0, double y1);

}  // namespace vpp
