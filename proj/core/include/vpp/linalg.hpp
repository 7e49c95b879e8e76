#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpp {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Compressed-row sparse matrix. Duplicate triplets are summed and exact
/// zeros are dropped at construction; entries must be finite.
class CsrMatrix {
public:
    CsrMatrix() = default;
    CsrMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);

    static CsrMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const { return values_.size(); }

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> operator*(std::span<const double> x) const;

    double coeff(std::size_t row, std::size_t col) const;
    std::vector<double> diagonal() const;
    CsrMatrix transpose() const;

    std::span<const std::size_t> row_offsets() const { return offsets_; }
    std::span<const std::size_t> col_indices() const { return cols_idx_; }
    std::span<const double> values() const { return values_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::size_t> cols_idx_;
    std::vector<double> values_;
};

enum class SolverMethod {
    conjugate_gradient,  ///< symmetric positive definite operators
    bicgstab,            ///< general nonsymmetric operators
};

struct SolverConfig {
    SolverMethod method = SolverMethod::conjugate_gradient;
    double rtol = 1e-10;
    int max_iter = 10000;

    void validate() const;
};

struct SolveReport {
    int iterations = 0;
    double residual = 0.0;  ///< final ||A x - b|| / ||b||
};

/// Raised when the residual is still above tolerance at the iteration cap.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
    double residual() const { return residual_; }
    int iterations() const { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// Jacobi-preconditioned Krylov solve of A x = b. `x` holds the initial guess
/// on entry and the solution on exit; a zero right-hand side returns x = 0
/// after zero iterations. Convergence means ||A x - b|| <= rtol ||b||.
SolveReport solve(const CsrMatrix& a, std::span<const double> b, std::span<double> x, const SolverConfig& cfg);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace vpp
