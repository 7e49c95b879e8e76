#include "vpp/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vpp {

Obstacle Obstacle::none() { return Obstacle{}; }

Obstacle Obstacle::disk(Vec2 center0, double radius, Vec2 velocity, double omega, double final_time,
                        ChiMode mode) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
    if (!(final_time >= 0.0)) throw std::invalid_argument("obstacle final time must be non-negative");
    Obstacle o;
    o.present_ = true;
    o.center0_ = center0;
    o.radius_ = radius;
    o.velocity_ = velocity;
    o.omega_ = omega;
    o.final_time_ = final_time;
    o.mode_ = mode;
    return o;
}

void Obstacle::check_time(double t) const {
    if (!present_) return;
    const double slack = 1e-12 * std::max(1.0, final_time_);
    if (t < -slack || t > final_time_ + slack) {
        throw std::out_of_range("obstacle queried at t=" + std::to_string(t) + " outside [0, " +
                                std::to_string(final_time_) + "]");
    }
}

Vec2 Obstacle::center(double t) const {
    check_time(t);
    return {center0_.x + velocity_.x * t, center0_.y + velocity_.y * t};
}

Vec2 Obstacle::solid_velocity_at(Vec2 x, double t) const {
    if (!present_) return {};
    const Vec2 c = center(t);
    return {velocity_.x - omega_ * (x.y - c.y), velocity_.y + omega_ * (x.x - c.x)};
}

bool Obstacle::contains(Vec2 x, double t) const {
    if (!present_) return false;
    const Vec2 c = center(t);
    const double dx = x.x - c.x, dy = x.y - c.y;
    return dx * dx + dy * dy < radius_ * radius_;
}

double Obstacle::max_solid_speed() const {
    if (!present_) return 0.0;
    return std::hypot(velocity_.x, velocity_.y) + std::abs(omega_) * radius_;
}

double Obstacle::clearance(const Grid& grid) const {
    if (!present_) return std::min(grid.lx(), grid.ly());
    auto gap = [&](double t) {
        const Vec2 c = center(t);
        return std::min({c.x, grid.lx() - c.x, c.y, grid.ly() - c.y}) - radius_;
    };
    return std::min(gap(0.0), gap(final_time_));
}

void Obstacle::check_inside(const Grid& grid) const {
    if (clearance(grid) <= 0.0) {
        throw std::invalid_argument("obstacle touches the domain boundary during [0, T]");
    }
}

// ---------------------------------------------------------------------------

double disk_rectangle_overlap(Vec2 center, double r, double x0, double x1, double y0, double y1) {
    // Shift to disk-centered coordinates and integrate the chord length
    // clipped to [y0, y1] piecewise in x.
    x0 -= center.x;
    x1 -= center.x;
    y0 -= center.y;
    y1 -= center.y;
    const double a = std::max(x0, -r);
    const double b = std::min(x1, r);
    if (!(a < b) || y1 <= -r || y0 >= r) return 0.0;

    auto half_chord = [r](double x) { return std::sqrt(std::max(0.0, r * r - x * x)); };
    // Antiderivative of half_chord.
    auto primitive = [r](double x) {
        const double xc = std::clamp(x, -r, r);
        return 0.5 * (xc * std::sqrt(std::max(0.0, r * r - xc * xc)) + r * r * std::asin(xc / r));
    };

    std::vector<double> cuts{a, b};
    for (double y : {y0, y1}) {
        if (std::abs(y) < r) {
            const double xs = std::sqrt(r * r - y * y);
            for (double x : {-xs, xs})
                if (x > a && x < b) cuts.push_back(x);
        }
    }
    std::sort(cuts.begin(), cuts.end());

    double area = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k], hi = cuts[k + 1];
        if (!(hi > lo)) continue;
        const double s_mid = half_chord(0.5 * (lo + hi));
        const bool upper_clipped = y1 < s_mid;
        const bool lower_clipped = y0 > -s_mid;
        const double upper_mid = upper_clipped ? y1 : s_mid;
        const double lower_mid = lower_clipped ? y0 : -s_mid;
        if (upper_mid <= lower_mid) continue;
        const double chord_integral = primitive(hi) - primitive(lo);
        const double upper = upper_clipped ? y1 * (hi - lo) : chord_integral;
        const double lower = lower_clipped ? y0 * (hi - lo) : -chord_integral;
        area += upper - lower;
    }
    return area;
}

ScalarCellField sample_chi(const Obstacle& obstacle, double t, const Grid& grid) {
    return sample_chi(obstacle, t, grid, obstacle.chi_mode());
}

ScalarCellField sample_chi(const Obstacle& obstacle, double t, const Grid& grid, ChiMode mode) {
    ScalarCellField chi(grid);
    if (!obstacle.present()) return chi;
    const Vec2 c = obstacle.center(t);
    const double hx = grid.hx(), hy = grid.hy();
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            if (mode == ChiMode::binary) {
                chi(i, j) = obstacle.contains({grid.cell_x(i), grid.cell_y(j)}, t) ? 1.0 : 0.0;
            } else {
                const double area = disk_rectangle_overlap(c, obstacle.radius(), i * hx, (i + 1) * hx,
                                                           j * hy, (j + 1) * hy);
                chi(i, j) = std::clamp(area / grid.cell_area(), 0.0, 1.0);
            }
        }
    }
    return chi;
}

VelocityField sample_chi_faces(const Obstacle& obstacle, double t, const Grid& grid) {
    VelocityField chi(grid);
    if (!obstacle.present()) return chi;
    const int nx = grid.nx(), ny = grid.ny();
    if (obstacle.chi_mode() == ChiMode::binary) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i <= nx; ++i)
                chi.u(i, j) = obstacle.contains({grid.node_x(i), grid.cell_y(j)}, t) ? 1.0 : 0.0;
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i < nx; ++i)
                chi.v(i, j) = obstacle.contains({grid.cell_x(i), grid.node_y(j)}, t) ? 1.0 : 0.0;
        return chi;
    }
    const ScalarCellField cells = sample_chi(obstacle, t, grid, ChiMode::fraction);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            const double west = i > 0 ? cells(i - 1, j) : cells(i, j);
            const double east = i < nx ? cells(i, j) : cells(i - 1, j);
            chi.u(i, j) = 0.5 * (west + east);
        }
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double south = j > 0 ? cells(i, j - 1) : cells(i, j);
            const double north = j < ny ? cells(i, j) : cells(i, j - 1);
            chi.v(i, j) = 0.5 * (south + north);
        }
    return chi;
}

VelocityField sample_solid_velocity(const Obstacle& obstacle, double t, const Grid& grid) {
    VelocityField vs(grid);
    if (!obstacle.present()) return vs;
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i <= grid.nx(); ++i)
            vs.u(i, j) = obstacle.solid_velocity_at({grid.node_x(i), grid.cell_y(j)}, t).x;
    for (int j = 0; j <= grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i)
            vs.v(i, j) = obstacle.solid_velocity_at({grid.cell_x(i), grid.node_y(j)}, t).y;
    return vs;
}

std::vector<CellIndex> boundary_band(const Obstacle& obstacle, double t, const Grid& grid) {
    std::vector<CellIndex> band;
    if (!obstacle.present()) return band;
    const Vec2 c = obstacle.center(t);
    const double width = std::hypot(grid.hx(), grid.hy());
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const double d = std::hypot(grid.cell_x(i) - c.x, grid.cell_y(j) - c.y);
            if (std::abs(d - obstacle.radius()) <= width) band.push_back({i, j});
        }
    }
    return band;
}

}  // namespace vpp
