#include "vpp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vpp {

Grid::Grid(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
    if (nx < 2 || ny < 2) {
        throw std::invalid_argument("grid needs at least 2 cells per direction, got " +
                                    std::to_string(nx) + "x" + std::to_string(ny));
    }
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
        throw std::invalid_argument("grid extents must be positive and finite");
    }
}

// ---------------------------------------------------------------------------

ScalarCellField::ScalarCellField(const Grid& grid) : grid_(grid), data_(grid.num_cells(), 0.0) {}

ScalarCellField::ScalarCellField(const Grid& grid, std::vector<double> values)
    : grid_(grid), data_(std::move(values)) {
    if (data_.size() != grid_.num_cells()) {
        throw std::invalid_argument("cell field size does not match grid");
    }
}

double ScalarCellField::mean() const {
    double sum = 0.0;
    for (double x : data_) sum += x;
    return sum / static_cast<double>(data_.size());
}

bool ScalarCellField::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

ScalarCellField& ScalarCellField::operator+=(const ScalarCellField& other) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ScalarCellField& ScalarCellField::operator-=(const ScalarCellField& other) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ScalarCellField& ScalarCellField::operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
}

ScalarCellField operator+(ScalarCellField a, const ScalarCellField& b) { return a += b; }
ScalarCellField operator-(ScalarCellField a, const ScalarCellField& b) { return a -= b; }
ScalarCellField operator*(double s, ScalarCellField a) { return a *= s; }

PressureField::PressureField(ScalarCellField samples) : ScalarCellField(std::move(samples)) {
    remove_mean();
}

void PressureField::remove_mean() {
    const double m = mean();
    for (double& x : values()) x -= m;
}

// ---------------------------------------------------------------------------

VelocityField::VelocityField(const Grid& grid)
    : grid_(grid), u_(grid.num_u(), 0.0), v_(grid.num_v(), 0.0) {}

void VelocityField::zero_normal_boundary() {
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    for (int j = 0; j < ny; ++j) {
        u(0, j) = 0.0;
        u(nx, j) = 0.0;
    }
    for (int i = 0; i < nx; ++i) {
        v(i, 0) = 0.0;
        v(i, ny) = 0.0;
    }
}

double VelocityField::max_normal_boundary() const {
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    double m = 0.0;
    for (int j = 0; j < ny; ++j) m = std::max({m, std::abs(u(0, j)), std::abs(u(nx, j))});
    for (int i = 0; i < nx; ++i) m = std::max({m, std::abs(v(i, 0)), std::abs(v(i, ny))});
    return m;
}

bool VelocityField::all_finite() const {
    auto finite = [](double x) { return std::isfinite(x); };
    return std::all_of(u_.begin(), u_.end(), finite) && std::all_of(v_.begin(), v_.end(), finite);
}

VelocityField& VelocityField::operator+=(const VelocityField& other) { return axpy(1.0, other); }
VelocityField& VelocityField::operator-=(const VelocityField& other) { return axpy(-1.0, other); }

VelocityField& VelocityField::operator*=(double s) {
    for (double& x : u_) x *= s;
    for (double& x : v_) x *= s;
    return *this;
}

VelocityField& VelocityField::axpy(double s, const VelocityField& other) {
    for (std::size_t k = 0; k < u_.size(); ++k) u_[k] += s * other.u_[k];
    for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += s * other.v_[k];
    return *this;
}

VelocityField operator+(VelocityField a, const VelocityField& b) { return a += b; }
VelocityField operator-(VelocityField a, const VelocityField& b) { return a -= b; }
VelocityField operator*(double s, VelocityField a) { return a *= s; }

// ---------------------------------------------------------------------------

NodeField::NodeField(const Grid& grid) : grid_(grid), data_(grid.num_nodes(), 0.0) {}

// ---------------------------------------------------------------------------

FaceLayout::FaceLayout(const Grid& grid)
    : grid_(grid),
      num_u_(std::size_t(grid.nx() - 1) * grid.ny()),
      num_v_(std::size_t(grid.nx()) * (grid.ny() - 1)) {}

long FaceLayout::u_dof(int i, int j) const {
    if (i <= 0 || i >= grid_.nx() || j < 0 || j >= grid_.ny()) return -1;
    return long(j) * (grid_.nx() - 1) + (i - 1);
}

long FaceLayout::v_dof(int i, int j) const {
    if (j <= 0 || j >= grid_.ny() || i < 0 || i >= grid_.nx()) return -1;
    return long(num_u_) + long(j - 1) * grid_.nx() + i;
}

std::vector<double> FaceLayout::gather(const VelocityField& field) const {
    std::vector<double> out(size());
    for (int j = 0; j < grid_.ny(); ++j)
        for (int i = 1; i < grid_.nx(); ++i) out[u_dof(i, j)] = field.u(i, j);
    for (int j = 1; j < grid_.ny(); ++j)
        for (int i = 0; i < grid_.nx(); ++i) out[v_dof(i, j)] = field.v(i, j);
    return out;
}

VelocityField FaceLayout::scatter(std::span<const double> dofs) const {
    if (dofs.size() != size()) throw std::invalid_argument("dof vector size does not match layout");
    VelocityField field(grid_);
    for (int j = 0; j < grid_.ny(); ++j)
        for (int i = 1; i < grid_.nx(); ++i) field.u(i, j) = dofs[u_dof(i, j)];
    for (int j = 1; j < grid_.ny(); ++j)
        for (int i = 0; i < grid_.nx(); ++i) field.v(i, j) = dofs[v_dof(i, j)];
    return field;
}

}  // namespace vpp
