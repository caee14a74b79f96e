#include "zstab/banded.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace zstab::ops {

BandedLowerMatrix::BandedLowerMatrix(std::size_t n, std::size_t bandwidth)
    : n_(n), b_(bandwidth), data_(n * (bandwidth + 1), 0.0) {
    if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
}

BandedLowerMatrix BandedLowerMatrix::toeplitz(std::size_t n, std::span<const double> stencil) {
    if (stencil.empty()) throw std::invalid_argument("empty Toeplitz stencil");
    BandedLowerMatrix m(n, stencil.size() - 1);
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t j = 0; j < stencil.size(); ++j) {
            const std::size_t offset = stencil.size() - 1 - j;  // subdiagonal index
            if (offset <= row) m.at(row, row - offset) = stencil[j];
        }
    }
    m.toeplitz_ = true;
    m.stencil_.assign(stencil.begin(), stencil.end());
    return m;
}

double& BandedLowerMatrix::at(std::size_t row, std::size_t col) {
    if (row >= n_ || col > row || row - col > b_) throw std::out_of_range("band index out of range");
    return data_[row * (b_ + 1) + (b_ - (row - col))];
}

double BandedLowerMatrix::get(std::size_t row, std::size_t col) const {
    if (row >= n_ || col >= n_ || col > row || row - col > b_) return 0.0;
    return data_[row * (b_ + 1) + (b_ - (row - col))];
}

void BandedLowerMatrix::write_triplets(std::ostream& out) const {
    char buf[64];
    for (std::size_t row = 0; row < n_; ++row) {
        const std::size_t lo = row >= b_ ? row - b_ : 0;
        for (std::size_t col = lo; col <= row; ++col) {
            const double x = get(row, col);
            if (x != 0.0) {
                std::snprintf(buf, sizeof buf, "%zu %zu %.15e\n", row + 1, col + 1, x);
                out << buf;
            }
        }
    }
}

double DiagonalMatrix::inf_norm() const {
    double worst = 0.0;
    for (double x : d) worst = std::max(worst, std::abs(x));
    return worst;
}

std::vector<double> forward_solve(const BandedLowerMatrix& m, std::span<const double> rhs) {
    const std::size_t n = m.size(), b = m.bandwidth();
    if (rhs.size() != n) throw std::invalid_argument("rhs dimension mismatch");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = rhs[i];
        const std::size_t lo = i >= b ? i - b : 0;
        for (std::size_t j = lo; j < i; ++j) acc -= m.get(i, j) * x[j];
        const double diag = m.get(i, i);
        if (diag == 0.0) throw std::domain_error("zero diagonal in triangular solve");
        x[i] = acc / diag;
    }
    return x;
}

std::vector<double> transpose_solve(const BandedLowerMatrix& m, std::span<const double> rhs) {
    const std::size_t n = m.size(), b = m.bandwidth();
    if (rhs.size() != n) throw std::invalid_argument("rhs dimension mismatch");
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = rhs[ii];
        const std::size_t hi = std::min(n - 1, ii + b);
        for (std::size_t j = ii + 1; j <= hi; ++j) acc -= m.get(j, ii) * x[j];
        const double diag = m.get(ii, ii);
        if (diag == 0.0) throw std::domain_error("zero diagonal in triangular solve");
        x[ii] = acc / diag;
    }
    return x;
}

double inf_norm(const BandedLowerMatrix& m) {
    const std::size_t n = m.size(), b = m.bandwidth();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        const std::size_t lo = i >= b ? i - b : 0;
        for (std::size_t j = lo; j <= i; ++j) s += std::abs(m.get(i, j));
        worst = std::max(worst, s);
    }
    return worst;
}

namespace {

double inverse_norm_unit_solves(const BandedLowerMatrix& m) {
    const std::size_t n = m.size(), b = m.bandwidth();
    std::vector<double> row_sums(n, 0.0);
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        // Column j of the inverse: solve from row j down (rows above are zero).
        std::fill(col.begin() + static_cast<std::ptrdiff_t>(j), col.end(), 0.0);
        for (std::size_t i = j; i < n; ++i) {
            double acc = (i == j) ? 1.0 : 0.0;
            const std::size_t lo = std::max(j, i >= b ? i - b : 0);
            for (std::size_t l = lo; l < i; ++l) acc -= m.get(i, l) * col[l];
            const double diag = m.get(i, i);
            if (diag == 0.0) throw std::domain_error("zero diagonal in triangular solve");
            col[i] = acc / diag;
            row_sums[i] += std::abs(col[i]);
        }
    }
    return *std::max_element(row_sums.begin(), row_sums.end());
}

double inverse_norm_transpose_solves(const BandedLowerMatrix& m) {
    const std::size_t n = m.size();
    std::vector<double> e(n, 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        e[i] = 1.0;
        const std::vector<double> row = transpose_solve(m, e);  // row i of M^{-1}
        e[i] = 0.0;
        double s = 0.0;
        for (double x : row) s += std::abs(x);
        worst = std::max(worst, s);
    }
    return worst;
}

double inverse_norm_toeplitz(const BandedLowerMatrix& m) {
    // First inverse column of the diagonal-normalized matrix solves
    // (M/diag) u = e_1; by the Toeplitz structure the last row of |M^{-1}|
    // has the largest row sum, equal to (sum |u_n|)/|diag|.
    const std::vector<double>& s = m.stencil();
    const std::size_t k = s.size();
    const double diag = s[k - 1];
    if (diag == 0.0) throw std::domain_error("zero diagonal in triangular solve");
    std::vector<double> delta(k);
    for (std::size_t j = 0; j < k; ++j) delta[j] = s[j] / diag;
    std::vector<double> u(m.size(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double acc = (i == 0) ? 1.0 : 0.0;
        for (std::size_t off = 1; off < k && off <= i; ++off) acc -= delta[k - 1 - off] * u[i - off];
        u[i] = acc;
        sum += std::abs(acc);
    }
    return sum / std::abs(diag);
}

}  // namespace

double inverse_inf_norm(const BandedLowerMatrix& m, InverseNormRoute route) {
    switch (route) {
        case InverseNormRoute::UnitSolves:
            return inverse_norm_unit_solves(m);
        case InverseNormRoute::TransposeSolves:
            return inverse_norm_transpose_solves(m);
        case InverseNormRoute::ToeplitzRecursion:
            if (!m.is_toeplitz()) throw std::invalid_argument("matrix is not marked Toeplitz");
            return inverse_norm_toeplitz(m);
        case InverseNormRoute::Auto:
        default:
            return m.is_toeplitz() ? inverse_norm_toeplitz(m) : inverse_norm_unit_solves(m);
    }
}

double lower_log_norm_inf(const BandedLowerMatrix& m) {
    const std::size_t n = m.size(), b = m.bandwidth();
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        const std::size_t lo = i >= b ? i - b : 0;
        for (std::size_t j = lo; j < i; ++j) off += std::abs(m.get(i, j));
        worst = std::min(worst, m.get(i, i) - off);
    }
    return worst;
}

Rational lower_log_norm_inf(std::span<const Rational> stencil) {
    if (stencil.empty()) throw std::invalid_argument("empty stencil");
    Rational off(0);
    for (std::size_t j = 0; j + 1 < stencil.size(); ++j) off += zstab::detail::abs_val(stencil[j]);
    return stencil.back() - off;
}

}  // namespace zstab::ops
