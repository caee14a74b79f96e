#pragma once

#include "zstab/banded.hpp"
#include "zstab/grid.hpp"
#include "zstab/method.hpp"

namespace zstab::ops {

/// N x N method-coefficient operator over the unknowns y_1..y_N. Row i holds
/// the variable-step alpha row for the local ratio vector; the first k-1 rows
/// are truncated (initial data folds into the right-hand side), with the grid
/// virtually extended to the left by constant steps h_0.
BandedLowerMatrix assemble_A(const method::MethodSpec& spec, const grid::Grid& g);

/// Extraneous operator: rows are the deflations of the assemble_A rows;
/// bandwidth k-1.
BandedLowerMatrix assemble_R(const method::MethodSpec& spec, const grid::Grid& g);

/// Constant-step operators built directly as Toeplitz instances from the
/// unit-ratio row (float uniform grids carry ULP-level ratio noise, so the
/// assembled versions are only Toeplitz to rounding).
BandedLowerMatrix constant_step_A(const method::MethodSpec& spec, std::size_t n);
BandedLowerMatrix constant_step_R(const method::MethodSpec& spec, std::size_t n);

/// Simple differencing operator D = N * (bidiagonal 1, -1); its inverse is the
/// cumulative summation operator with inf-norm exactly 1.
BandedLowerMatrix assemble_D(std::size_t n);

/// Step-size diagonal H = diag(h_0..h_{N-1}).
DiagonalMatrix assemble_H(const grid::Grid& g);

/// Right-hand side of A_N y = b for the homogeneous problem: the truncated
/// band columns of the first k-1 rows applied to the initial history
/// (init = y_{-k+1}..y_0, oldest first).
std::vector<double> initial_rhs(const method::MethodSpec& spec, const grid::Grid& g,
                                const std::vector<double>& init);

/// phi-tilde = N*H, the realized-step diagonal making the factorization exact.
DiagonalMatrix phi_tilde(const grid::Grid& g);

/// ||H^{-1} A - phi_tilde^{-1} R D||_inf. Rounding-level for consistent
/// assembly: contract <= 1e-12 * N on smooth grids for all BDF k <= 6.
double factorization_residual(const method::MethodSpec& spec, const grid::Grid& g);

}  // namespace zstab::ops
