#include "vpp/coupled.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "vpp/assembly.hpp"

namespace vpp {

CoupledResult coupled_step(const VelocityField& v_n, const PressureField& p_n, double t_n,
                           const VelocityField* forcing, const Obstacle& obstacle, const SchemeParams& params,
                           const WallVelocity& walls) {
    const Grid& g = v_n.grid();
    if (!(p_n.grid() == g)) throw std::invalid_argument("coupled step: pressure grid mismatch");
    if (g.nx() > 32 || g.ny() > 32) throw std::invalid_argument("coupled step is limited to 32 x 32 grids");
    params.validate();

    const FaceLayout layout(g);
    const int nf = static_cast<int>(layout.size());
    const int nc = static_cast<int>(g.num_cells());
    const int size = nf + nc + 1;
    const double t_next = t_n + params.dt;
    const double hx = g.hx(), hy = g.hy();

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    const CsrMatrix a = assemble_prediction(g, obstacle, params, v_n, t_next);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = a.row_offsets()[r]; k < a.row_offsets()[r + 1]; ++k)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a.col_indices()[k])) += a.values()[k];

    // Gradient columns and divergence rows.
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const int c = nf + static_cast<int>(g.cell(i, j));
            const long faces[4] = {layout.u_dof(i + 1, j), layout.u_dof(i, j), layout.v_dof(i, j + 1),
                                   layout.v_dof(i, j)};
            const double coeff[4] = {1.0 / hx, -1.0 / hx, 1.0 / hy, -1.0 / hy};
            for (int s = 0; s < 4; ++s) {
                if (faces[s] < 0) continue;
                m(c, faces[s]) += coeff[s];  // div
                m(faces[s], c) -= coeff[s];  // grad = -div^T
            }
            m(c, size - 1) = 1.0;
            m(size - 1, c) = 1.0;
        }
    }

    VelocityField rhs = (1.0 / params.dt) * v_n;
    if (forcing) rhs += *forcing;
    if (obstacle.present()) {
        const VelocityField chi = sample_chi_faces(obstacle, t_next, g);
        const VelocityField vs = sample_solid_velocity(obstacle, t_next, g);
        for (std::size_t k = 0; k < rhs.u_values().size(); ++k)
            rhs.u_values()[k] += chi.u_values()[k] * vs.u_values()[k] / params.eta;
        for (std::size_t k = 0; k < rhs.v_values().size(); ++k)
            rhs.v_values()[k] += chi.v_values()[k] * vs.v_values()[k] / params.eta;
    }
    if (!walls.homogeneous()) rhs += strain_divergence(VelocityField(g), params.mu, walls);

    Eigen::VectorXd b = Eigen::VectorXd::Zero(size);
    const std::vector<double> bf = layout.gather(rhs);
    for (int k = 0; k < nf; ++k) b(k) = bf[k];

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::VectorXd x = lu.solve(b);
    const double bnorm = b.norm();
    const double residual = bnorm > 0.0 ? (m * x - b).norm() / bnorm : (m * x).norm();
    if (!x.allFinite() || residual > 1e-8) throw std::runtime_error("coupled step: singular system");

    CoupledResult out{layout.scatter(std::span<const double>(x.data(), nf)), PressureField(g), residual};
    ScalarCellField p(g, std::vector<double>(x.data() + nf, x.data() + nf + nc));
    out.p = PressureField(std::move(p));
    return out;
}

}  // namespace vpp
