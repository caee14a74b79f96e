#include "zstab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zstab::ops {

namespace {

/// Ratio vector (oldest first) for the row whose newest node is t_i,
/// reading steps h_{i-k}..h_{i-1} with h_m = h_0 for m < 0.
std::vector<double> row_ratios(int k, const grid::Grid& g, std::size_t i) {
    std::vector<double> ratios(static_cast<std::size_t>(k) - 1);
    auto step = [&](long m) { return m < 0 ? g.h[0] : g.h[static_cast<std::size_t>(m)]; };
    const long first = static_cast<long>(i) - k;
    for (int j = 0; j + 1 < k; ++j)
        ratios[static_cast<std::size_t>(j)] = step(first + j + 1) / step(first + j);
    return ratios;
}

void require_grid(const method::MethodSpec& spec, const grid::Grid& g) {
    spec.validate();
    if (g.steps() < spec.k + 1) throw std::invalid_argument("grid too short for the requested step number");
}

}  // namespace

BandedLowerMatrix assemble_A(const method::MethodSpec& spec, const grid::Grid& g) {
    require_grid(spec, g);
    const std::size_t n = g.h.size();
    const int k = spec.k;
    BandedLowerMatrix A(n, static_cast<std::size_t>(k));
    for (std::size_t row = 0; row < n; ++row) {
        const auto ratios = row_ratios(k, g, row + 1);
        const auto coeff = method::bdf_variable_row<double>(spec, ratios);
        for (int j = 0; j <= k; ++j) {
            const long col = static_cast<long>(row) - k + j;
            if (col >= 0) A.at(row, static_cast<std::size_t>(col)) = coeff.alpha[static_cast<std::size_t>(j)];
        }
    }
    return A;
}

BandedLowerMatrix assemble_R(const method::MethodSpec& spec, const grid::Grid& g) {
    require_grid(spec, g);
    const std::size_t n = g.h.size();
    const int k = spec.k;
    BandedLowerMatrix R(n, static_cast<std::size_t>(k) - 1);
    for (std::size_t row = 0; row < n; ++row) {
        const auto ratios = row_ratios(k, g, row + 1);
        const auto gamma = method::deflate_row(method::bdf_variable_row<double>(spec, ratios)).gamma;
        for (int j = 0; j < k; ++j) {
            const long col = static_cast<long>(row) - k + j + 1;
            if (col >= 0) R.at(row, static_cast<std::size_t>(col)) = gamma[static_cast<std::size_t>(j)];
        }
    }
    return R;
}

BandedLowerMatrix constant_step_A(const method::MethodSpec& spec, std::size_t n) {
    spec.validate();
    const auto row = method::bdf_constant_row<double>(spec);
    return BandedLowerMatrix::toeplitz(n, row.alpha);
}

BandedLowerMatrix constant_step_R(const method::MethodSpec& spec, std::size_t n) {
    spec.validate();
    const auto gamma = method::deflate_row(method::bdf_constant_row<double>(spec)).gamma;
    return BandedLowerMatrix::toeplitz(n, gamma);
}

BandedLowerMatrix assemble_D(std::size_t n) {
    const double N = static_cast<double>(n);
    const double stencil[2] = {-N, N};
    return BandedLowerMatrix::toeplitz(n, std::span<const double>(stencil, 2));
}

DiagonalMatrix assemble_H(const grid::Grid& g) { return DiagonalMatrix{g.h}; }

std::vector<double> initial_rhs(const method::MethodSpec& spec, const grid::Grid& g,
                                const std::vector<double>& init) {
    require_grid(spec, g);
    const int k = spec.k;
    if (init.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("need k initial values");
    std::vector<double> rhs(g.h.size(), 0.0);
    for (std::size_t row = 0; row < static_cast<std::size_t>(k); ++row) {
        const auto coeff = method::bdf_variable_row<double>(spec, row_ratios(k, g, row + 1));
        for (int j = 0; j <= k; ++j) {
            const long col = static_cast<long>(row) - k + j;
            if (col < 0) rhs[row] -= coeff.alpha[static_cast<std::size_t>(j)] *
                                     init[static_cast<std::size_t>(col + k)];
        }
    }
    return rhs;
}

DiagonalMatrix phi_tilde(const grid::Grid& g) {
    DiagonalMatrix p{g.h};
    const double N = static_cast<double>(g.h.size());
    for (double& x : p.d) x *= N;
    return p;
}

double factorization_residual(const method::MethodSpec& spec, const grid::Grid& g) {
    const BandedLowerMatrix A = assemble_A(spec, g);
    const BandedLowerMatrix R = assemble_R(spec, g);
    const std::size_t n = g.h.size();
    const std::size_t k = static_cast<std::size_t>(spec.k);
    const double N = static_cast<double>(n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // (R D)_{i,c} = N (R_{i,c} - R_{i,c+1}); both sides carry 1/h_i after
        // the H^{-1} and phi_tilde^{-1} = 1/(N h_i) scalings.
        double row_err = 0.0;
        const std::size_t lo = i >= k ? i - k : 0;
        for (std::size_t c = lo; c <= i; ++c) {
            const double rd = N * (R.get(i, c) - R.get(i, c + 1));
            row_err += std::abs(A.get(i, c) / g.h[i] - rd / (N * g.h[i]));
        }
        worst = std::max(worst, row_err);
    }
    return worst;
}

}  // namespace zstab::ops
