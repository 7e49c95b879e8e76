#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "helpers.hpp"
#include "vpp/diagnostics.hpp"
#include "vpp/nikolskii.hpp"
#include "vpp/obstacle.hpp"
#include "vpp/random_fields.hpp"
#include "vpp/scheme.hpp"

using namespace vpp;
using std::numbers::pi;

namespace {

ScalarCellField sine_mode(const Grid& g) {
    ScalarCellField f(g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) f(i, j) = std::sin(pi * g.cell_x(i)) * std::sin(pi * g.cell_y(j));
    return f;
}

ScalarCellField constant(const Grid& g, double c) {
    ScalarCellField f(g);
    for (double& x : f.values()) x = c;
    return f;
}

// Midpoint-rule reference for the translation integrals of a step function.
TranslationIntegrals sampled_translation(const std::vector<double>& values, double dt, double h) {
    const double span = dt * values.size();
    const int n = 2000000;
    const double w = (span - h) / n;
    TranslationIntegrals r;
    for (int k = 0; k < n; ++k) {
        const double t = (k + 0.5) * w;
        const auto a = static_cast<std::size_t>(t / dt);
        const auto b = std::min(static_cast<std::size_t>((t + h) / dt), values.size() - 1);
        const double d = std::abs(values[b] - values[a]);
        r.integral += w * d;
        r.l2 += w * d * d;
    }
    r.l2 = std::sqrt(r.l2);
    return r;
}

}  // namespace

TEST(L2Norm, Examples) {
    const Grid g(16, 16);
    EXPECT_EQ(l2_norm(ScalarCellField(g)), 0.0);
    EXPECT_EQ(l2_norm(VelocityField(g)), 0.0);
    EXPECT_NEAR(l2_norm(constant(g, 1.0)), 1.0, 1e-14);
    EXPECT_NEAR(l2_norm(sine_mode(Grid(128, 128))), 0.5, 1e-3);
}

TEST(HMinus1, Zero) {
    const Grid g(8, 8);
    EXPECT_EQ(h_minus1_norm(ScalarCellField(g)), 0.0);
    EXPECT_EQ(h_minus1_norm(VelocityField(g)), 0.0);
}

TEST(HMinus1, LaplacianEigenfunction) {
    const Grid g(128, 128);
    const double expected = 0.5 / (std::sqrt(2.0) * pi);
    EXPECT_NEAR(h_minus1_norm(sine_mode(g)), expected, 0.01 * expected);
}

TEST(HMinus1, VectorFieldEigenfunction) {
    // sin(pi x) sin(pi y) in the u slot only: same value as the scalar case
    const Grid g(96, 96);
    VelocityField w(g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i <= g.nx(); ++i) w.u(i, j) = std::sin(pi * g.node_x(i)) * std::sin(pi * g.cell_y(j));
    const double expected = 0.5 / (std::sqrt(2.0) * pi);
    EXPECT_NEAR(h_minus1_norm(w), expected, 0.01 * expected);
}

TEST(HMinus1, Homogeneous) {
    const Grid g(20, 14, 1.0, 0.7);
    Rng rng(301);
    const ScalarCellField f = random_cell_field(g, rng);
    const VelocityField w = random_velocity(g, rng);
    for (double c : {-3.0, 0.25, 17.0}) {
        EXPECT_NEAR(h_minus1_norm(c * f), std::abs(c) * h_minus1_norm(f), 1e-10 * std::abs(c) * h_minus1_norm(f));
        EXPECT_NEAR(h_minus1_norm(c * w), std::abs(c) * h_minus1_norm(w), 1e-10 * std::abs(c) * h_minus1_norm(w));
    }
}

TEST(HMinus1, PoincareBound) {
    const Grid g(24, 24);
    const double cp = poincare_constant(g);
    EXPECT_NEAR(cp, 1.0 / (std::sqrt(2.0) * pi), 0.01 / (std::sqrt(2.0) * pi));
    Rng rng(307);
    for (int k = 0; k < 20; ++k) {
        const ScalarCellField f = random_cell_field(g, rng);
        EXPECT_LE(h_minus1_norm(f), cp * l2_norm(f) * (1.0 + 1e-8));
    }
    EXPECT_NEAR(h_minus1_norm(sine_mode(g)) / l2_norm(sine_mode(g)), cp, 1e-6 * cp);
}

TEST(Nikolskii, ConstantSeriesIsZero) {
    const Grid g(4, 4);
    FieldSeries<ScalarCellField> s(0.1);
    for (int k = 0; k < 6; ++k) s.push_back(constant(g, 2.0));
    for (double h : {0.01, 0.1, 0.25, 0.5}) {
        const TranslationIntegrals r = nikolskii_translation(s, h, SeriesNorm::l2);
        EXPECT_EQ(r.integral, 0.0);
        EXPECT_EQ(r.l2, 0.0);
    }
}

TEST(Nikolskii, TwoSnapshotOverlap) {
    const Grid g(4, 4);
    FieldSeries<ScalarCellField> s(1.0);
    s.push_back(constant(g, 0.0));
    s.push_back(constant(g, 1.0));
    const TranslationIntegrals r = nikolskii_translation(s, 0.5, SeriesNorm::l2);
    EXPECT_NEAR(r.integral, 0.5, 1e-14);
    EXPECT_NEAR(r.l2, std::sqrt(0.5), 1e-14);
}

TEST(Nikolskii, RejectsBadOffsets) {
    FieldSeries<ScalarCellField> s(1.0);
    s.push_back(constant(Grid(2, 2), 0.0));
    s.push_back(constant(Grid(2, 2), 1.0));
    EXPECT_THROW(nikolskii_translation(s, 2.0, SeriesNorm::l2), std::invalid_argument);
    EXPECT_THROW(nikolskii_translation(s, 3.0, SeriesNorm::l2), std::invalid_argument);
    EXPECT_THROW(nikolskii_translation(s, 0.0, SeriesNorm::l2), std::invalid_argument);
    EXPECT_THROW(FieldSeries<ScalarCellField>(0.0), std::invalid_argument);
}

TEST(Nikolskii, MatchesSampledIntegralOnBothBranches) {
    std::mt19937_64 rng(311);
    std::normal_distribution<double> step(0.0, 1.0);
    const double dt = 0.1;
    std::vector<double> values{0.0};
    for (int k = 1; k < 12; ++k) values.push_back(values.back() + step(rng));
    auto norm = [&](std::size_t a, std::size_t b) { return std::abs(values[b] - values[a]); };
    for (double h : {0.013, 0.05, 0.1, 0.17, 0.35, 0.8}) {
        const TranslationIntegrals exact = nikolskii_translation(values.size(), dt, h, norm);
        const TranslationIntegrals ref = sampled_translation(values, dt, h);
        EXPECT_NEAR(exact.integral, ref.integral, 1e-4 * (1.0 + ref.integral)) << "h=" << h;
        EXPECT_NEAR(exact.l2, ref.l2, 1e-4 * (1.0 + ref.l2)) << "h=" << h;
    }
}

TEST(Nikolskii, DoublingIncrementsDoublesIntegral) {
    const Grid g(6, 6);
    Rng rng(313);
    FieldSeries<ScalarCellField> s(0.05), twice(0.05);
    ScalarCellField u = random_cell_field(g, rng);
    ScalarCellField u2 = 2.0 * u;
    for (int k = 0; k < 10; ++k) {
        s.push_back(u);
        twice.push_back(u2);
        const ScalarCellField inc = random_cell_field(g, rng);
        u += inc;
        u2 += 2.0 * inc;
    }
    for (double h : {0.01, 0.05, 0.12, 0.3}) {
        const double a = nikolskii_translation(s, h, SeriesNorm::l2).integral;
        const double b = nikolskii_translation(twice, h, SeriesNorm::l2).integral;
        EXPECT_NEAR(b, 2.0 * a, 1e-13 * a);
    }
}

TEST(Nikolskii, VelocitySeriesNorms) {
    const Grid g(10, 10);
    Rng rng(317);
    FieldSeries<VelocityField> s(0.1);
    for (int k = 0; k < 5; ++k) s.push_back(random_velocity(g, rng));
    const TranslationIntegrals l2 = nikolskii_translation(s, 0.15, SeriesNorm::l2);
    const TranslationIntegrals hm = nikolskii_translation(s, 0.15, SeriesNorm::hminus1);
    EXPECT_GT(l2.integral, 0.0);
    EXPECT_LT(hm.integral, l2.integral);
}

TEST(Slip, MatchingVelocityGivesZero) {
    const Grid g(32, 32);
    const Obstacle o = Obstacle::disk({0.5, 0.5}, 0.2, {0.3, -0.1}, 2.0, 1.0);
    const SlipEstimate s = slip_error(sample_solid_velocity(o, 0.2, g), o, 0.2);
    EXPECT_NEAR(s.value, 0.0, 1e-28);
    EXPECT_FALSE(s.empty_band);
    EXPECT_NEAR(penalization_energy(sample_solid_velocity(o, 0.2, g), o, 0.2), 0.0, 1e-28);
}

TEST(Slip, UnitMismatchGivesCircumference) {
    const double r = 0.2;
    for (int n : {64, 128}) {
        const Grid g(n, n);
        const Obstacle o = Obstacle::disk({0.5, 0.5}, r, {}, 0.0, 1.0);
        VelocityField w(g);
        for (double& x : w.u_values()) x = 1.0;
        const SlipEstimate s = slip_error(w, o, 0.0);
        EXPECT_NEAR(s.value, 2.0 * pi * r, 0.15 * 2.0 * pi * r) << n;
    }
}

TEST(Slip, InvariantAwayFromBand) {
    const Grid g(48, 48);
    Rng rng(331);
    const Obstacle o = Obstacle::disk({0.5, 0.5}, 0.2, {}, 1.0, 1.0);
    const VelocityField v = random_velocity(g, rng);
    VelocityField far(g);
    // support in the corner strip, several cells from the band
    for (int j = 0; j < 8; ++j)
        for (int i = 1; i < 8; ++i) far.u(i, j) = 5.0 + i;
    const double a = slip_error(v, o, 0.0).value;
    const double b = slip_error(v + far, o, 0.0).value;
    EXPECT_EQ(a, b);
}

TEST(Slip, EmptyBandFlagged) {
    const Grid g(16, 16);
    const SlipEstimate s = slip_error(VelocityField(g), Obstacle::none(), 0.0);
    EXPECT_TRUE(s.empty_band);
    EXPECT_EQ(s.value, 0.0);
}

TEST(Ledger, ZeroRun) {
    const Grid g(6, 6);
    SchemeParams p;
    p.dt = 0.1;
    p.final_time = 0.5;
    const RunResult r = run(VelocityField(g), ScalarCellField(g), {}, p);
    const LedgerReport ledger = energy_ledger_check(r.records, p, r.initial, false);
    ASSERT_EQ(ledger.ledger.size(), 6u);
    for (double x : ledger.ledger) EXPECT_EQ(x, 0.0);
    EXPECT_TRUE(ledger.ledger_non_increasing);
    EXPECT_EQ(ledger.max_kinetic_increase, 0.0);
}

TEST(Ledger, HandBuiltRecords) {
    SchemeParams p;
    p.dt = 0.5;
    p.lambda = 2.0;  // eps = 1
    p.mu = 0.1;
    p.eta = 0.25;
    p.final_time = 1.0;
    DiagnosticsRecord r;
    r.n = 1;
    r.t = 0.5;
    r.kinetic_energy = 0.5;     // ||v||^2 = 1
    r.pressure_norm = 2.0;      // dt eps ||p||^2 = 2
    r.pressure_grad_norm = 1.0; // dt^2 ||grad p||^2 = 0.25
    r.increment_norm = 1.0;     // 1
    r.grad_norm = 2.0;          // mu dt 4 = 0.2
    r.pressure_increment_norm = 1.0;  // eps dt 1 = 0.5
    r.penalization_energy = 0.5;      // (2/eta) dt 0.5 = 2
    const InitialNorms init{4.0, 0.0, 0.0};
    const std::vector<DiagnosticsRecord> recs{r};
    const LedgerReport ledger = energy_ledger_check(recs, p, init, true);
    ASSERT_EQ(ledger.ledger.size(), 2u);
    EXPECT_DOUBLE_EQ(ledger.ledger[0], 4.0);
    EXPECT_DOUBLE_EQ(ledger.ledger[1], 1.0 + 2.0 + 0.25 + 1.0 + 0.2 + 0.5 + 2.0);
    EXPECT_FALSE(ledger.ledger_non_increasing);
    EXPECT_TRUE(ledger.terms_finite_non_negative);
}

TEST(Records, CsvShape) {
    const std::string header = DiagnosticsRecord::csv_header();
    DiagnosticsRecord r;
    r.n = 3;
    r.t = 0.1;
    const std::string row = r.csv_row();
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
    EXPECT_EQ(row.rfind("3,0.10000000000000001,", 0), 0u);
}
