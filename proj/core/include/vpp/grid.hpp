#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vpp {

/// Uniform MAC (staggered) grid over the rectangle [0, lx] x [0, ly].
///
/// Layout:
///   - cell (i, j) centered at ((i + 1/2) hx, (j + 1/2) hy), 0 <= i < nx, 0 <= j < ny
///   - u-face (i, j) at (i hx, (j + 1/2) hy), 0 <= i <= nx, 0 <= j < ny
///   - v-face (i, j) at ((i + 1/2) hx, j hy), 0 <= i < nx, 0 <= j <= ny
///   - node (i, j) at (i hx, j hy), 0 <= i <= nx, 0 <= j <= ny
///
/// All storage is row-major in j (x index fastest).
class Grid {
public:
    Grid(int nx, int ny, double lx = 1.0, double ly = 1.0);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    double hx() const { return lx_ / nx_; }
    double hy() const { return ly_ / ny_; }
    double cell_area() const { return hx() * hy(); }

    std::size_t num_cells() const { return std::size_t(nx_) * ny_; }
    std::size_t num_u() const { return std::size_t(nx_ + 1) * ny_; }
    std::size_t num_v() const { return std::size_t(nx_) * (ny_ + 1); }
    std::size_t num_nodes() const { return std::size_t(nx_ + 1) * (ny_ + 1); }

    std::size_t cell(int i, int j) const { return std::size_t(j) * nx_ + i; }
    std::size_t u_face(int i, int j) const { return std::size_t(j) * (nx_ + 1) + i; }
    std::size_t v_face(int i, int j) const { return std::size_t(j) * nx_ + i; }
    std::size_t node(int i, int j) const { return std::size_t(j) * (nx_ + 1) + i; }

    double cell_x(int i) const { return (i + 0.5) * hx(); }
    double cell_y(int j) const { return (j + 0.5) * hy(); }
    double node_x(int i) const { return i * hx(); }
    double node_y(int j) const { return j * hy(); }

    bool operator==(const Grid& other) const = default;

private:
    int nx_;
    int ny_;
    double lx_;
    double ly_;
};

/// Cell-centered scalar samples (divergence, characteristic function, ...).
class ScalarCellField {
public:
    explicit ScalarCellField(const Grid& grid);
    ScalarCellField(const Grid& grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    double& operator()(int i, int j) { return data_[grid_.cell(i, j)]; }
    double operator()(int i, int j) const { return data_[grid_.cell(i, j)]; }
    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

    /// Area-weighted mean over the domain.
    double mean() const;
    bool all_finite() const;

    ScalarCellField& operator+=(const ScalarCellField& other);
    ScalarCellField& operator-=(const ScalarCellField& other);
    ScalarCellField& operator*=(double s);

private:
    Grid grid_;
    std::vector<double> data_;
};

ScalarCellField operator+(ScalarCellField a, const ScalarCellField& b);
ScalarCellField operator-(ScalarCellField a, const ScalarCellField& b);
ScalarCellField operator*(double s, ScalarCellField a);

/// Cell-centered pressure, kept in the space of null-average functions.
class PressureField : public ScalarCellField {
public:
    explicit PressureField(const Grid& grid) : ScalarCellField(grid) {}
    /// Takes the samples and removes their mean.
    explicit PressureField(ScalarCellField samples);

    void remove_mean();
};

/// Face-centered velocity on the MAC grid. The boundary faces of a MAC grid
/// carry only normal components; tangential wall values enter the operators
/// through ghost reflection, so the Dirichlet and the normal-only variants
/// share this storage and differ only in the operators applied to them.
class VelocityField {
public:
    explicit VelocityField(const Grid& grid);

    const Grid& grid() const { return grid_; }

    double& u(int i, int j) { return u_[grid_.u_face(i, j)]; }
    double u(int i, int j) const { return u_[grid_.u_face(i, j)]; }
    double& v(int i, int j) { return v_[grid_.v_face(i, j)]; }
    double v(int i, int j) const { return v_[grid_.v_face(i, j)]; }

    std::span<double> u_values() { return u_; }
    std::span<const double> u_values() const { return u_; }
    std::span<double> v_values() { return v_; }
    std::span<const double> v_values() const { return v_; }

    /// Zero every face that lies on the domain boundary.
    void zero_normal_boundary();
    /// Largest magnitude over boundary faces.
    double max_normal_boundary() const;
    bool all_finite() const;

    VelocityField& operator+=(const VelocityField& other);
    VelocityField& operator-=(const VelocityField& other);
    VelocityField& operator*=(double s);
    /// this += s * other
    VelocityField& axpy(double s, const VelocityField& other);

private:
    Grid grid_;
    std::vector<double> u_;
    std::vector<double> v_;
};

VelocityField operator+(VelocityField a, const VelocityField& b);
VelocityField operator-(VelocityField a, const VelocityField& b);
VelocityField operator*(double s, VelocityField a);

/// Node-centered scalar samples (vorticity).
class NodeField {
public:
    explicit NodeField(const Grid& grid);

    const Grid& grid() const { return grid_; }
    double& operator()(int i, int j) { return data_[grid_.node(i, j)]; }
    double operator()(int i, int j) const { return data_[grid_.node(i, j)]; }
    std::span<const double> values() const { return data_; }

private:
    Grid grid_;
    std::vector<double> data_;
};

/// Interior-face numbering used by the linear systems: interior u-faces
/// (1 <= i <= nx-1) first, then interior v-faces (1 <= j <= ny-1).
class FaceLayout {
public:
    explicit FaceLayout(const Grid& grid);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return num_u_ + num_v_; }
    std::size_t num_u() const { return num_u_; }

    /// Unknown index for an interior u-face; -1 for boundary faces.
    long u_dof(int i, int j) const;
    long v_dof(int i, int j) const;

    std::vector<double> gather(const VelocityField& field) const;
    /// Boundary faces of the result are zero.
    VelocityField scatter(std::span<const double> dofs) const;

private:
    Grid grid_;
    std::size_t num_u_;
    std::size_t num_v_;
};

}  // namespace vpp
