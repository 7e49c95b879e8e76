#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "helpers.hpp"
#include "vpp/assembly.hpp"
#include "vpp/linalg.hpp"
#include "vpp/obstacle.hpp"
#include "vpp/operators.hpp"
#include "vpp/random_fields.hpp"
#include "vpp/scheme.hpp"

using namespace vpp;

namespace {

std::vector<double> random_vector(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = d(rng);
    return x;
}

VelocityField correction_apply(const VelocityField& w, double eps_over_dt) {
    VelocityField r = gradient(divergence(w));
    r *= -1.0;
    r.axpy(eps_over_dt, w);
    return r;
}

// Residual map of the prediction operator, from the matrix-free operators.
VelocityField prediction_apply(const VelocityField& w, const VelocityField& v_prev, const VelocityField& chi,
                               const SchemeParams& p) {
    VelocityField r = (1.0 / p.dt) * w;
    r += convection(v_prev, w);
    r -= strain_divergence(w, p.mu);
    r.axpy(1.0 / p.eta, test::times(chi, w));
    return r;
}

}  // namespace

TEST(Csr, DuplicatesSummedZerosDropped) {
    const CsrMatrix a(3, 3, {{0, 0, 1.0}, {0, 0, 2.0}, {1, 2, 0.0}, {2, 1, -1.0}, {2, 1, 1.0}, {1, 1, 4.0}});
    EXPECT_EQ(a.nonzeros(), 2u);
    EXPECT_EQ(a.coeff(0, 0), 3.0);
    EXPECT_EQ(a.coeff(1, 1), 4.0);
    EXPECT_EQ(a.coeff(2, 1), 0.0);
    for (double v : a.values()) EXPECT_NE(v, 0.0);
}

TEST(Csr, RejectsBadEntries) {
    EXPECT_THROW(CsrMatrix(2, 2, {{0, 0, NAN}}), std::invalid_argument);
    EXPECT_THROW(CsrMatrix(2, 2, {{2, 0, 1.0}}), std::out_of_range);
}

TEST(Csr, MultiplyAndTranspose) {
    const CsrMatrix a(2, 3, {{0, 0, 1.0}, {0, 2, 2.0}, {1, 1, 3.0}});
    const std::vector<double> x{1.0, 2.0, 3.0};
    EXPECT_EQ(a * x, (std::vector<double>{7.0, 6.0}));
    const CsrMatrix t = a.transpose();
    EXPECT_EQ(t.rows(), 3u);
    EXPECT_EQ(t.coeff(2, 0), 2.0);
    EXPECT_EQ(t.coeff(1, 1), 3.0);
}

TEST(SolverConfig, Validation) {
    EXPECT_THROW((SolverConfig{SolverMethod::conjugate_gradient, 0.0, 10}.validate()), std::invalid_argument);
    EXPECT_THROW((SolverConfig{SolverMethod::conjugate_gradient, 1.0, 10}.validate()), std::invalid_argument);
    EXPECT_THROW((SolverConfig{SolverMethod::bicgstab, 1e-8, 0}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((SolverConfig{SolverMethod::bicgstab, 1e-8, 1}.validate()));
}

TEST(Solve, ZeroRhs) {
    const CsrMatrix a = assemble_correction(Grid(6, 6), 1.0);
    for (SolverMethod m : {SolverMethod::conjugate_gradient, SolverMethod::bicgstab}) {
        std::vector<double> b(a.rows(), 0.0), x(a.rows(), 0.7);
        const SolveReport r = solve(a, b, x, {m, 1e-10, 100});
        EXPECT_EQ(r.iterations, 0);
        EXPECT_EQ(test::max_abs(x), 0.0);
    }
}

TEST(Solve, Identity) {
    Rng rng(51);
    const CsrMatrix a = CsrMatrix::identity(40);
    const std::vector<double> b = random_vector(40, rng);
    for (SolverMethod m : {SolverMethod::conjugate_gradient, SolverMethod::bicgstab}) {
        std::vector<double> x(40, 0.0);
        const SolveReport r = solve(a, b, x, {m, 1e-12, 10});
        EXPECT_LE(r.iterations, 1);
        for (std::size_t k = 0; k < b.size(); ++k) EXPECT_NEAR(x[k], b[k], 1e-14);
    }
}

TEST(Solve, CorrectionMatchesDenseSolve) {
    const Grid g(8, 8);
    const FaceLayout layout(g);
    Rng rng(53);
    const double eps_over_dt = 1.0;
    const CsrMatrix a = assemble_correction(g, eps_over_dt);
    const std::vector<double> b = random_vector(a.rows(), rng);
    std::vector<double> x(a.rows(), 0.0);
    solve(a, b, x, {SolverMethod::conjugate_gradient, 1e-12, 10000});

    const Eigen::MatrixXd dense =
        test::dense_of(layout, [&](const VelocityField& w) { return correction_apply(w, eps_over_dt); });
    const Eigen::VectorXd ref = dense.partialPivLu().solve(test::to_eigen(b));
    EXPECT_LE((test::to_eigen(x) - ref).norm(), 1e-8 * ref.norm());
}

TEST(Solve, NonConvergenceCarriesResidual) {
    Rng rng(57);
    const CsrMatrix a = assemble_correction(Grid(16, 16), 1e-3);
    const std::vector<double> b = random_vector(a.rows(), rng);
    std::vector<double> x(a.rows(), 0.0);
    try {
        solve(a, b, x, {SolverMethod::conjugate_gradient, 1e-12, 2});
        FAIL() << "expected NonConvergence";
    } catch (const NonConvergence& e) {
        EXPECT_GT(e.residual(), 1e-12);
        EXPECT_EQ(e.iterations(), 2);
    }
}

TEST(Solve, BicgstabOnNonsymmetricPrediction) {
    const Grid g(10, 10);
    Rng rng(59);
    SchemeParams p;
    p.dt = 0.05;
    const VelocityField v_prev = 3.0 * random_velocity(g, rng);
    const CsrMatrix a = assemble_prediction(g, Obstacle::none(), p, v_prev, p.dt);
    const std::vector<double> b = random_vector(a.rows(), rng);
    std::vector<double> x(a.rows(), 0.0);
    solve(a, b, x, {SolverMethod::bicgstab, 1e-10, 1000});
    std::vector<double> r = a * x;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
    EXPECT_LE(norm2(r), 1e-10 * norm2(b));
}

TEST(Prediction, ReducesToScaledIdentity) {
    const Grid g(5, 4);
    SchemeParams p;
    p.dt = 0.02;
    p.mu = 0.0;
    const CsrMatrix a = assemble_prediction(g, Obstacle::none(), p, VelocityField(g), p.dt);
    EXPECT_EQ(a.nonzeros(), a.rows());
    for (std::size_t k = 0; k < a.rows(); ++k) EXPECT_DOUBLE_EQ(a.coeff(k, k), 50.0);
}

TEST(Prediction, ConvectionBlockIsSkew) {
    Rng rng(61);
    for (int k = 0; k < 20; ++k) {
        const Grid g(3 + k % 7, 3 + k % 5);
        SchemeParams p;
        p.dt = 0.1;
        p.mu = 0.0;
        const VelocityField v_prev = random_velocity(g, rng);
        const CsrMatrix a = assemble_prediction(g, Obstacle::none(), p, v_prev, p.dt);
        const std::vector<double> x = random_vector(a.rows(), rng);
        const double q = dot(x, a * x) - dot(x, x) / p.dt;
        EXPECT_LE(std::abs(q), 1e-10 * dot(x, x) / p.dt);

        const CsrMatrix b = assemble_convection(FaceLayout(g), v_prev);
        EXPECT_LE(std::abs(dot(x, b * x)), 1e-10 * dot(x, x) * (1.0 + test::max_abs(v_prev)) / g.hx());
    }
}

TEST(Prediction, MatchesResidualMap) {
    const Grid g(4, 4);
    const FaceLayout layout(g);
    Rng rng(67);
    SchemeParams p;
    p.dt = 0.05;
    p.mu = 0.3;
    p.eta = 1e-3;
    const Obstacle o = Obstacle::disk({0.5, 0.5}, 0.3, {0.1, 0.0}, 0.5, 1.0, ChiMode::fraction);
    const double t_next = 0.2;
    const VelocityField v_prev = random_velocity(g, rng);
    const VelocityField chi = sample_chi_faces(o, t_next, g);
    const CsrMatrix a = assemble_prediction(g, o, p, v_prev, t_next);

    const std::vector<double> x = random_vector(layout.size(), rng);
    const VelocityField base = prediction_apply(layout.scatter(x), v_prev, chi, p);
    const double step = 1e-6;
    for (int n = 0; n < 5; ++n) {
        const std::size_t k = rng() % layout.size();
        std::vector<double> xk = x;
        xk[k] += step;
        const VelocityField moved = prediction_apply(layout.scatter(xk), v_prev, chi, p);
        const std::vector<double> column = layout.gather((1.0 / step) * (moved - base));
        for (std::size_t r = 0; r < layout.size(); ++r)
            EXPECT_NEAR(a.coeff(r, k), column[r], 1e-6 * (1.0 + std::abs(column[r]))) << r << "," << k;
    }
}

TEST(Prediction, Coercive) {
    Rng rng(71);
    for (double mu : {0.0, 0.05, 1.0}) {
        const Grid g(9, 7);
        SchemeParams p;
        p.dt = 0.01;
        p.mu = mu;
        const CsrMatrix a = assemble_prediction(g, Obstacle::none(), p, 5.0 * random_velocity(g, rng), p.dt);
        for (int k = 0; k < 10; ++k) {
            const std::vector<double> x = random_vector(a.rows(), rng);
            EXPECT_GE(dot(x, a * x), (1.0 - 1e-12) * dot(x, x) / p.dt);
        }
    }
}

TEST(Prediction, RejectsNonFiniteVelocity) {
    const Grid g(4, 4);
    VelocityField v(g);
    v.u(2, 2) = NAN;
    EXPECT_THROW(assemble_prediction(g, Obstacle::none(), SchemeParams{}, v, 0.01), std::invalid_argument);
}

TEST(Viscous, MatchesStrainOperator) {
    const Grid g(6, 5, 1.0, 0.7);
    const FaceLayout layout(g);
    const Eigen::MatrixXd ref =
        test::dense_of(layout, [](const VelocityField& w) { return -1.0 * strain_divergence(w, 0.4); });
    const Eigen::MatrixXd a = test::dense_of(assemble_viscous(layout, 0.4));
    EXPECT_LE((a - ref).cwiseAbs().maxCoeff(), 1e-10 * ref.cwiseAbs().maxCoeff());
    EXPECT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-12 * ref.cwiseAbs().maxCoeff());
}

TEST(Correction, MatchesCompositionOnGradients) {
    const Grid g(10, 8);
    const FaceLayout layout(g);
    Rng rng(73);
    const double eps_over_dt = 0.7;
    const CsrMatrix a = assemble_correction(g, eps_over_dt);
    for (int k = 0; k < 5; ++k) {
        const VelocityField gp = gradient(random_pressure(g, rng));
        const VelocityField ref = eps_over_dt * gp - gradient(divergence(gp));
        const VelocityField out = layout.scatter(a * layout.gather(gp));
        EXPECT_LE(test::max_abs_diff(out, ref), 1e-12 * test::max_abs(ref));
    }
}

TEST(Correction, SymmetricPositiveDefinite) {
    const Grid g(8, 8);
    Rng rng(79);
    const CsrMatrix a = assemble_correction(g, 1e-3);
    for (int k = 0; k < 20; ++k) {
        const std::vector<double> x = random_vector(a.rows(), rng);
        const std::vector<double> y = random_vector(a.rows(), rng);
        const double xay = dot(x, a * y), yax = dot(y, a * x);
        EXPECT_LE(std::abs(xay - yax), 1e-12 * std::max(std::abs(xay), 1.0));
        EXPECT_GT(dot(x, a * x), 0.0);
    }
}

TEST(Correction, RejectsNonPositiveEpsilon) {
    EXPECT_THROW(assemble_correction(Grid(4, 4), 0.0), std::invalid_argument);
    EXPECT_THROW(assemble_correction(Grid(4, 4), -1.0), std::invalid_argument);
}

TEST(Correction, IterationsDoNotGrowAsStepShrinks) {
    const Grid g(32, 32);
    Rng rng(83);
    const VelocityField v_tilde = random_velocity(g, rng);
    int previous = -1;
    for (double dt : {0.04, 0.02, 0.01, 0.005}) {
        SchemeParams p;
        p.dt = dt;
        p.lambda = 1.0;
        const int it = correct(v_tilde, p).report.iterations;
        if (previous >= 0) {
            EXPECT_LE(it, previous + 2) << "dt=" << dt;
        }
        previous = it;
    }
}

TEST(DirichletLaplacian, SmallestEigenvalue) {
    // ghost lattice of n cells on [0, 1]: lambda_min = (4/h^2) sin^2(pi h / 2) per direction
    const int n = 16;
    const double h = 1.0 / n;
    const Eigen::MatrixXd a = test::dense_of(assemble_dirichlet_laplacian(n, n, h, h, true, true));
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff();
    const double s = std::sin(std::numbers::pi * h / 2.0);
    EXPECT_NEAR(lmin, 2.0 * 4.0 / (h * h) * s * s, 1e-9 * lmin);
}
