#include "vpp/nikolskii.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "vpp/diagnostics.hpp"

namespace vpp {

TranslationIntegrals nikolskii_translation(std::size_t count, double dt, double h,
                                           const std::function<double(std::size_t, std::size_t)>& difference_norm) {
    if (count == 0) throw std::invalid_argument("translation estimate needs at least one snapshot");
    if (!(dt > 0.0)) throw std::invalid_argument("series spacing must be positive");
    const double span = dt * static_cast<double>(count);
    if (!(h > 0.0)) throw std::invalid_argument("translation offset h must be positive");
    if (!(h < span)) throw std::invalid_argument("translation offset h must be smaller than the series span");

    const double upper = span - h;
    std::vector<double> cuts{0.0, upper};
    for (std::size_t k = 1; k <= count; ++k) {
        const double a = dt * static_cast<double>(k);
        if (a > 0.0 && a < upper) cuts.push_back(a);
        const double b = a - h;
        if (b > 0.0 && b < upper) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto index_at = [&](double t) {
        const auto k = static_cast<std::size_t>(std::floor(t / dt));
        return std::min(k, count - 1);
    };

    std::map<std::pair<std::size_t, std::size_t>, double> cache;
    TranslationIntegrals out;
    double sq = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double len = cuts[s + 1] - cuts[s];
        if (len <= 0.0) continue;
        const double mid = 0.5 * (cuts[s] + cuts[s + 1]);
        const std::size_t a = index_at(mid);
        const std::size_t b = index_at(mid + h);
        if (a == b) continue;
        auto [it, fresh] = cache.try_emplace({a, b}, 0.0);
        if (fresh) it->second = difference_norm(a, b);
        out.integral += len * it->second;
        sq += len * it->second * it->second;
    }
    out.l2 = std::sqrt(sq);
    return out;
}

namespace {

template <class Field>
TranslationIntegrals translate(const FieldSeries<Field>& series, double h, SeriesNorm norm) {
    return nikolskii_translation(series, h, [norm](const Field& f) {
        return norm == SeriesNorm::l2 ? l2_norm(f) : h_minus1_norm(f);
    });
}

}  // namespace

TranslationIntegrals nikolskii_translation(const FieldSeries<VelocityField>& series, double h, SeriesNorm norm) {
    return translate(series, h, norm);
}

TranslationIntegrals nikolskii_translation(const FieldSeries<ScalarCellField>& series, double h, SeriesNorm norm) {
    return translate(series, h, norm);
}

}  // namespace vpp
