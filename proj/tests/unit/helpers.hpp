#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "vpp/grid.hpp"
#include "vpp/linalg.hpp"
#include "vpp/operators.hpp"

namespace vpp::test {

using LinearMap = std::function<VelocityField(const VelocityField&)>;

// Dense matrix of a linear map over the interior-face unknowns, built one
// unit vector at a time. Independent of the sparse assembly.
inline Eigen::MatrixXd dense_of(const FaceLayout& layout, const LinearMap& op) {
    const auto n = static_cast<Eigen::Index>(layout.size());
    Eigen::MatrixXd m(n, n);
    std::vector<double> e(layout.size(), 0.0);
    for (Eigen::Index k = 0; k < n; ++k) {
        e[k] = 1.0;
        const std::vector<double> col = layout.gather(op(layout.scatter(e)));
        e[k] = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) m(r, k) = col[r];
    }
    return m;
}

inline Eigen::MatrixXd dense_of(const CsrMatrix& a) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = a.row_offsets()[r]; k < a.row_offsets()[r + 1]; ++k)
            m(r, a.col_indices()[k]) = a.values()[k];
    return m;
}

inline Eigen::VectorXd to_eigen(std::span<const double> x) {
    return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

inline std::vector<double> to_std(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

inline double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs(const VelocityField& f) { return std::max(max_abs(f.u_values()), max_abs(f.v_values())); }

inline double max_abs_diff(const VelocityField& a, const VelocityField& b) { return max_abs(a - b); }

inline double norm(const VelocityField& f) { return std::sqrt(inner(f, f)); }
inline double norm(const ScalarCellField& f) { return std::sqrt(inner(f, f)); }

// Face-wise product chi * w.
inline VelocityField times(const VelocityField& chi, const VelocityField& w) {
    VelocityField r = w;
    for (std::size_t k = 0; k < r.u_values().size(); ++k) r.u_values()[k] *= chi.u_values()[k];
    for (std::size_t k = 0; k < r.v_values().size(); ++k) r.v_values()[k] *= chi.v_values()[k];
    return r;
}

}  // namespace vpp::test
