#pragma once

#include "zstab/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace zstab::ops {

/// Lower-triangular banded matrix: diagonal plus `bandwidth` subdiagonals,
/// stored row-major with a fixed stride of bandwidth+1 per row. Entries whose
/// column index would be negative are kept as zeros.
class BandedLowerMatrix {
public:
    BandedLowerMatrix(std::size_t n, std::size_t bandwidth);

    /// Toeplitz instance: every row carries the same stencil (lowest column
    /// first, diagonal last), truncated at the top-left corner.
    static BandedLowerMatrix toeplitz(std::size_t n, std::span<const double> stencil);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] std::size_t bandwidth() const { return b_; }
    [[nodiscard]] bool is_toeplitz() const { return toeplitz_; }
    [[nodiscard]] const std::vector<double>& stencil() const { return stencil_; }

    /// Band entry access; (row, col) must satisfy row - bandwidth <= col <= row.
    double& at(std::size_t row, std::size_t col);
    [[nodiscard]] double get(std::size_t row, std::size_t col) const;

    /// Clears the Toeplitz marker (call after editing rows of a Toeplitz instance).
    void mark_general() { toeplitz_ = false; stencil_.clear(); }

    /// Writes "row col value" triplets (1-based indices) of nonzero entries.
    void write_triplets(std::ostream& out) const;

private:
    std::size_t n_;
    std::size_t b_;
    std::vector<double> data_;  // stride b_+1; data_[row*(b_+1) + (b_ - (row-col))]
    bool toeplitz_ = false;
    std::vector<double> stencil_;
};

/// Positive diagonal matrix (step sizes, phi-tilde and friends).
struct DiagonalMatrix {
    std::vector<double> d;

    [[nodiscard]] std::size_t size() const { return d.size(); }
    [[nodiscard]] double inf_norm() const;
};

/// Forward substitution M x = rhs in O(n * bandwidth). Throws on zero diagonal.
std::vector<double> forward_solve(const BandedLowerMatrix& m, std::span<const double> rhs);

/// Back substitution M^T x = rhs (upper-triangular transpose solve).
std::vector<double> transpose_solve(const BandedLowerMatrix& m, std::span<const double> rhs);

/// Max absolute row sum.
double inf_norm(const BandedLowerMatrix& m);

enum class InverseNormRoute {
    Auto,              ///< Toeplitz recursion when available, else unit solves
    UnitSolves,        ///< n forward solves against unit vectors
    TransposeSolves,   ///< n transpose solves, one per inverse row
    ToeplitzRecursion  ///< scalar first-column recursion (Toeplitz only)
};

/// ||M^{-1}||_inf, the max row sum of |M^{-1}|, computed exactly by the
/// requested route. The routes are algebraically identical and tested equal.
double inverse_inf_norm(const BandedLowerMatrix& m, InverseNormRoute route = InverseNormRoute::Auto);

/// Lower logarithmic max norm: min over rows of (diagonal - sum |off-diagonal|).
/// Positivity (diagonal dominance) implies ||M^{-1}||_inf <= 1/m_inf.
double lower_log_norm_inf(const BandedLowerMatrix& m);

/// Exact-mode log norm of a full Toeplitz row (stencil diagonal-last).
Rational lower_log_norm_inf(std::span<const Rational> stencil);

}  // namespace zstab::ops
