#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vpp/grid.hpp"

namespace vpp {

/// Snapshots u^0, u^1, ... read as the step function u(t) = u^k on
/// [k dt, (k+1) dt). The series covers [0, size() * dt).
template <class Field>
class FieldSeries {
public:
    explicit FieldSeries(double dt) : dt_(dt) {
        if (!(dt > 0.0)) throw std::invalid_argument("series spacing must be positive");
    }

    void push_back(Field f) { snapshots_.push_back(std::move(f)); }

    double dt() const { return dt_; }
    std::size_t size() const { return snapshots_.size(); }
    double span() const { return dt_ * static_cast<double>(snapshots_.size()); }
    const Field& operator[](std::size_t k) const { return snapshots_[k]; }

private:
    double dt_;
    std::vector<Field> snapshots_;
};

struct TranslationIntegrals {
    double integral = 0.0;  ///< int_0^{T-h} ||u(t+h) - u(t)|| dt
    double l2 = 0.0;        ///< (int_0^{T-h} ||u(t+h) - u(t)||^2 dt)^{1/2}
};

/// Exact translation integrals of a step function with `count` snapshots of
/// spacing dt, T = count * dt, given ||u^b - u^a|| through `difference_norm(a, b)`.
/// The integrand is piecewise constant between the points k dt and k dt - h,
/// which covers both h <= dt and h > dt. Requires 0 < h < T.
TranslationIntegrals nikolskii_translation(std::size_t count, double dt, double h,
                                           const std::function<double(std::size_t, std::size_t)>& difference_norm);

template <class Field, class Norm>
TranslationIntegrals nikolskii_translation(const FieldSeries<Field>& series, double h, Norm norm) {
    return nikolskii_translation(series.size(), series.dt(), h, [&](std::size_t a, std::size_t b) {
        Field diff = series[b];
        diff -= series[a];
        return norm(diff);
    });
}

enum class SeriesNorm { l2, hminus1 };

TranslationIntegrals nikolskii_translation(const FieldSeries<VelocityField>& series, double h, SeriesNorm norm);
TranslationIntegrals nikolskii_translation(const FieldSeries<ScalarCellField>& series, double h, SeriesNorm norm);

}  // namespace vpp
