#pragma once

#include "zstab/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace zstab::method {

enum class Family { Bdf };

/// A k-step method identifier. Only the BDF family is built in.
struct MethodSpec {
    Family family = Family::Bdf;
    int k = 2;

    static MethodSpec bdf(int k) { return MethodSpec{Family::Bdf, k}; }

    void validate() const {
        if (family != Family::Bdf) throw std::invalid_argument("unsupported method family");
        if (k < 1 || k > 6) throw std::invalid_argument("BDF step number k must be in 1..6");
    }
};

/// One row of method coefficients on a local stencil of k+1 nodes.
///
/// alpha and beta are indexed oldest node first, so alpha[k] multiplies the
/// newest value. ratios[i] = h_{i+1}/h_i runs oldest to newest over the k-1
/// consecutive step ratios of the stencil.
template <typename T>
struct RowT {
    int k = 0;
    std::vector<T> alpha;   // size k+1
    std::vector<T> beta;    // size k+1; BDF rows have beta[k] only
    std::vector<T> ratios;  // size k-1

    [[nodiscard]] T row_sum() const {
        T s(0);
        for (const T& a : alpha) s += a;
        return s;
    }
};

using CoefficientRow = RowT<double>;
using ExactCoefficientRow = RowT<Rational>;

/// Deflated row: the alpha row divided by the backward difference (-1, 1).
/// gamma[k-1] is the diagonal entry of the extraneous operator.
template <typename T>
struct DeflatedRowT {
    int k = 0;
    std::vector<T> gamma;  // size k
};

using DeflatedRow = DeflatedRowT<double>;
using ExactDeflatedRow = DeflatedRowT<Rational>;

namespace detail {

/// Nodes t_0..t_k spanned by unit oldest step and the given ratios.
template <typename T>
std::vector<T> stencil_nodes(int k, const std::vector<T>& ratios) {
    std::vector<T> t(static_cast<std::size_t>(k) + 1);
    t[0] = T(0);
    T h(1);
    for (int i = 0; i < k; ++i) {
        if (i > 0) h *= ratios[static_cast<std::size_t>(i) - 1];
        t[static_cast<std::size_t>(i) + 1] = t[static_cast<std::size_t>(i)] + h;
    }
    return t;
}

/// alpha row with beta_k = 1: h_{k-1} times the derivative of the Lagrange
/// interpolant through the stencil nodes, evaluated at the newest node.
/// The double instantiation evaluates in extended precision internally; the
/// node-gap products are mildly ill-conditioned at skewed ratios.
template <typename T>
std::vector<T> alpha_beta1(int k, const std::vector<T>& ratios) {
    if constexpr (std::is_same_v<T, double>) {
        const std::vector<long double> wide(ratios.begin(), ratios.end());
        const std::vector<long double> result = alpha_beta1<long double>(k, wide);
        return std::vector<double>(result.begin(), result.end());
    }
    const std::vector<T> t = stencil_nodes<T>(k, ratios);
    const std::size_t n = static_cast<std::size_t>(k);
    T hk = t[n] - t[n - 1];
    std::vector<T> alpha(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        T deriv;
        if (j == n) {
            deriv = T(0);
            for (std::size_t i = 0; i < n; ++i) deriv += T(1) / (t[n] - t[i]);
        } else {
            T num(1), den(1);
            for (std::size_t i = 0; i <= n; ++i) {
                if (i != j && i != n) num *= t[n] - t[i];
                if (i != j) den *= t[j] - t[i];
            }
            deriv = num / den;
        }
        alpha[j] = hk * deriv;
    }
    return alpha;
}

}  // namespace detail

/// Variable-step BDF coefficient row for the given consecutive step ratios.
///
/// k=2 rows carry the classical polynomial scaling (r^2, -(1+r)^2, 1+2r)/2,
/// whose beta[2] is (1+r)/2; every other k is normalized to beta[k] = 1.
/// Both reduce to the standard constant-step row at unit ratios.
template <typename T>
RowT<T> bdf_variable_row(const MethodSpec& spec, const std::vector<T>& ratios) {
    spec.validate();
    if (ratios.size() != static_cast<std::size_t>(spec.k) - 1)
        throw std::invalid_argument("expected k-1 step ratios");
    for (const T& r : ratios) {
        bool bad = !(r > T(0));
        if constexpr (std::is_floating_point_v<T>) bad = bad || !std::isfinite(r);
        if (bad) throw std::invalid_argument("step ratios must be positive and finite");
    }

    RowT<T> row;
    row.k = spec.k;
    row.ratios.assign(ratios.begin(), ratios.end());
    row.alpha = detail::alpha_beta1<T>(spec.k, ratios);

    T scale(1);
    if (spec.k == 2) scale = (T(1) + ratios[0]) / T(2);
    for (T& a : row.alpha) a *= scale;
    row.beta.assign(static_cast<std::size_t>(spec.k) + 1, T(0));
    row.beta.back() = scale;
    return row;
}

/// Constant-step BDF row (the unit-ratio case; Table-style coefficients).
template <typename T>
RowT<T> bdf_constant_row(const MethodSpec& spec) {
    spec.validate();
    std::vector<T> unit(static_cast<std::size_t>(spec.k) - 1, T(1));
    return bdf_variable_row<T>(spec, unit);
}

/// Synthetic division of the alpha row by (zeta - 1).
///
/// Valid only for preconsistent rows (zero row sum); the remainder is checked
/// against zero (exact mode) or 1e-13 relative (double mode) and a violation
/// throws std::domain_error. The convolution of the result with (-1, 1)
/// reproduces alpha[1..k] exactly and alpha[0] up to the remainder.
template <typename T>
DeflatedRowT<T> deflate_row(const RowT<T>& row) {
    const std::size_t k = static_cast<std::size_t>(row.k);
    if (row.alpha.size() != k + 1 || k == 0) throw std::invalid_argument("malformed coefficient row");

    DeflatedRowT<T> out;
    out.k = row.k;
    out.gamma.assign(k, T(0));
    out.gamma[k - 1] = row.alpha[k];
    for (std::size_t j = k - 1; j >= 1; --j) out.gamma[j - 1] = row.alpha[j] + out.gamma[j];

    T remainder = row.alpha[0] + out.gamma[0];
    T scale(0);
    for (const T& a : row.alpha) scale = std::max(scale, zstab::detail::abs_val(a));
    if (zstab::detail::abs_val(remainder) > zstab::detail::identity_tolerance<T>() * scale)
        throw std::domain_error("row is not preconsistent: deflation remainder is nonzero");
    return out;
}

/// Reconstructs the alpha row as the convolution gamma * (-1, 1).
template <typename T>
std::vector<T> convolve_backward_difference(const std::vector<T>& gamma) {
    std::vector<T> alpha(gamma.size() + 1);
    alpha[0] = -gamma[0];
    for (std::size_t j = 1; j < gamma.size(); ++j) alpha[j] = gamma[j - 1] - gamma[j];
    alpha[gamma.size()] = gamma[gamma.size() - 1];
    return alpha;
}

/// Max residual of the row over monomials 1, t, ..., t^k on the given nodes:
/// |sum_j alpha_j q(t_j) - h_{k-1} sum_j beta_j q'(t_j)|.
///
/// The nodes must realize the row's ratio vector. A correct BDF-k row gives 0
/// in exact mode and <= 1e-12 in double for nodes in [0,1].
template <typename T>
T exactness_residual(const RowT<T>& row, const std::vector<T>& nodes) {
    const std::size_t k = static_cast<std::size_t>(row.k);
    if (nodes.size() != k + 1) throw std::invalid_argument("expected k+1 nodes");
    for (std::size_t i = 0; i + 1 <= k; ++i)
        if (!(nodes[i] < nodes[i + 1])) throw std::invalid_argument("nodes must be strictly increasing");
    for (std::size_t i = 0; i + 2 <= k; ++i) {
        const T lhs = nodes[i + 2] - nodes[i + 1];
        const T rhs = (nodes[i + 1] - nodes[i]) * row.ratios[i];
        const T diff = lhs - rhs;
        T err = zstab::detail::abs_val(diff);
        T tol(0);
        if constexpr (std::is_floating_point_v<T>) tol = T(1e-9) * zstab::detail::abs_val(rhs);
        if (err > tol) throw std::invalid_argument("nodes are inconsistent with the row's step ratios");
    }

    const T h = nodes[k] - nodes[k - 1];
    T worst(0);
    for (std::size_t d = 0; d <= k; ++d) {
        T lhs(0), rhs(0);
        for (std::size_t j = 0; j <= k; ++j) {
            T p(1), dp(0);  // t^d and d*t^(d-1)
            for (std::size_t m = 0; m < d; ++m) {
                dp = dp * nodes[j] + p;
                p *= nodes[j];
            }
            lhs += row.alpha[j] * p;
            rhs += row.beta[j] * dp;
        }
        const T defect = lhs - h * rhs;
        worst = std::max(worst, zstab::detail::abs_val(defect));
    }
    return worst;
}

}  // namespace zstab::method
