#include "vpp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vpp {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets)
    : rows_(rows), cols_(cols) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    offsets_.assign(rows + 1, 0);
    cols_idx_.reserve(triplets.size());
    values_.reserve(triplets.size());

    std::size_t k = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        while (k < triplets.size() && triplets[k].row == r) {
            const std::size_t c = triplets[k].col;
            if (c >= cols) throw std::out_of_range("triplet column out of range");
            double sum = 0.0;
            while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
                sum += triplets[k].value;
                ++k;
            }
            if (!std::isfinite(sum)) throw std::invalid_argument("non-finite matrix entry");
            if (sum != 0.0) {
                cols_idx_.push_back(c);
                values_.push_back(sum);
            }
        }
        offsets_[r + 1] = values_.size();
    }
    if (k != triplets.size()) throw std::out_of_range("triplet row out of range");
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
    std::vector<Triplet> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return CsrMatrix(n, n, std::move(t));
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != cols_ || y.size() != rows_) throw std::invalid_argument("matrix-vector size mismatch");
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) s += values_[k] * x[cols_idx_[k]];
        y[r] = s;
    }
}

std::vector<double> CsrMatrix::operator*(std::span<const double> x) const {
    std::vector<double> y(rows_);
    multiply(x, y);
    return y;
}

double CsrMatrix::coeff(std::size_t row, std::size_t col) const {
    const auto first = cols_idx_.begin() + offsets_[row];
    const auto last = cols_idx_.begin() + offsets_[row + 1];
    const auto it = std::lower_bound(first, last, col);
    return (it != last && *it == col) ? values_[it - cols_idx_.begin()] : 0.0;
}

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(std::min(rows_, cols_));
    for (std::size_t r = 0; r < d.size(); ++r) d[r] = coeff(r, r);
    return d;
}

CsrMatrix CsrMatrix::transpose() const {
    std::vector<Triplet> t;
    t.reserve(values_.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) t.push_back({cols_idx_[k], r, values_[k]});
    return CsrMatrix(cols_, rows_, std::move(t));
}

// ---------------------------------------------------------------------------

void SolverConfig::validate() const {
    if (!(rtol > 0.0 && rtol < 1.0)) throw std::invalid_argument("solver rtol must lie in (0, 1)");
    if (max_iter < 1) throw std::invalid_argument("solver max_iter must be at least 1");
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

namespace {

std::vector<double> inverse_diagonal(const CsrMatrix& a) {
    std::vector<double> d = a.diagonal();
    for (double& x : d) x = (x != 0.0) ? 1.0 / x : 1.0;
    return d;
}

double true_residual(const CsrMatrix& a, std::span<const double> b, std::span<const double> x,
                     std::vector<double>& r) {
    a.multiply(x, r);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = b[k] - r[k];
    return norm2(r);
}

// Preconditioned CG; returns iterations used, leaves the true residual in r.
int pcg(const CsrMatrix& a, std::span<const double> b, std::span<double> x, const std::vector<double>& dinv,
        double target, int budget, std::vector<double>& r) {
    const std::size_t n = b.size();
    std::vector<double> z(n), p(n), q(n);
    double rnorm = true_residual(a, b, x, r);
    if (rnorm <= target) return 0;
    for (std::size_t k = 0; k < n; ++k) z[k] = dinv[k] * r[k];
    p = z;
    double rz = dot(r, z);
    int it = 0;
    while (it < budget) {
        ++it;
        a.multiply(p, q);
        const double pq = dot(p, q);
        if (pq == 0.0) break;
        const double alpha = rz / pq;
        for (std::size_t k = 0; k < n; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * q[k];
        }
        rnorm = norm2(r);
        if (rnorm <= target) break;
        for (std::size_t k = 0; k < n; ++k) z[k] = dinv[k] * r[k];
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    true_residual(a, b, x, r);
    return it;
}

int pbicgstab(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
              const std::vector<double>& dinv, double target, int budget, std::vector<double>& r) {
    const std::size_t n = b.size();
    std::vector<double> rhat(n), p(n, 0.0), v(n, 0.0), y(n), s(n), z(n), t(n);
    double rnorm = true_residual(a, b, x, r);
    if (rnorm <= target) return 0;
    rhat = r;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    int it = 0;
    while (it < budget) {
        ++it;
        const double rho_new = dot(rhat, r);
        if (rho_new == 0.0 || omega == 0.0) break;  // breakdown: caller restarts
        const double beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * (p[k] - omega * v[k]);
        for (std::size_t k = 0; k < n; ++k) y[k] = dinv[k] * p[k];
        a.multiply(y, v);
        const double rv = dot(rhat, v);
        if (rv == 0.0) break;
        alpha = rho / rv;
        for (std::size_t k = 0; k < n; ++k) s[k] = r[k] - alpha * v[k];
        if (norm2(s) <= target) {
            for (std::size_t k = 0; k < n; ++k) x[k] += alpha * y[k];
            break;
        }
        for (std::size_t k = 0; k < n; ++k) z[k] = dinv[k] * s[k];
        a.multiply(z, t);
        const double tt = dot(t, t);
        omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            x[k] += alpha * y[k] + omega * z[k];
            r[k] = s[k] - omega * t[k];
        }
        if (norm2(r) <= target) break;
    }
    true_residual(a, b, x, r);
    return it;
}

}  // namespace

SolveReport solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x, const SolverConfig& cfg) {
    cfg.validate();
    if (a.rows() != a.cols() || b.size() != a.rows() || x.size() != a.rows()) {
        throw std::invalid_argument("solve: operator and vector sizes do not match");
    }
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return {0, 0.0};
    }
    const double target = cfg.rtol * bnorm;
    const std::vector<double> dinv = inverse_diagonal(a);
    std::vector<double> r(b.size());

    // Restart from the current iterate whenever the recurrence stops short of
    // the true residual (drift or breakdown) while budget remains.
    int used = 0;
    double rnorm = true_residual(a, b, x, r);
    while (rnorm > target && used < cfg.max_iter) {
        const int budget = cfg.max_iter - used;
        const int it = cfg.method == SolverMethod::conjugate_gradient
                           ? pcg(a, b, x, dinv, target, budget, r)
                           : pbicgstab(a, b, x, dinv, target, budget, r);
        used += std::max(it, 1);
        const double previous = rnorm;
        rnorm = norm2(r);
        if (it == 0 || (rnorm > target && rnorm >= previous)) break;
    }
    if (!(rnorm <= target)) {
        std::ostringstream msg;
        msg << "linear solve did not converge: relative residual " << rnorm / bnorm << " > " << cfg.rtol
            << " after " << used << " iterations";
        throw NonConvergence(msg.str(), rnorm / bnorm, used);
    }
    return {used, rnorm / bnorm};
}

}  // namespace vpp
