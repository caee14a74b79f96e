#pragma once

#include "zstab/method.hpp"

#include <complex>
#include <span>
#include <optional>
#include <string>
#include <vector>

namespace zstab::stability {

/// Extraneous roots (zeros of the deflated polynomial) and their max modulus.
struct RootSet {
    std::vector<std::complex<double>> roots;
    double q = 0.0;             ///< max |root|; strong stability iff q < 1
    double max_residual = 0.0;  ///< max |rho_R(root)| over the scaled polynomial
    bool max_root_simple = true;

    [[nodiscard]] bool strongly_stable() const { return q < 1.0; }
};

/// Roots of the constant-step extraneous polynomial via companion-matrix
/// eigenvalues plus Newton polish. Throws std::runtime_error if the residual
/// contract (<= 1e-12) cannot be met after a deterministic restart.
RootSet extraneous_root_radius(const method::MethodSpec& spec);

/// Same computation for an arbitrary deflated stencil (diagonal last).
RootSet stencil_roots(std::span<const double> gamma);

/// Uniform-grid inverse bound: C0 with ||R_{k,N}^{-1}(1)||_inf <= C0 for all N.
struct C0Result {
    double c0 = 0.0;             ///< limit of the inverse norm (l1 sum of u / alpha_k)
    double q = 0.0;              ///< extraneous root radius
    double growth_constant = 0;  ///< K with |u_n| <= K q^n (empirical, log-space)
    double theorem2_bound = 0;   ///< K q / ((1-q) alpha_k); equals c0 when k = 1
    std::size_t terms = 0;       ///< u terms summed before the 1e-16 cutoff
    bool max_root_simple = true;
};

/// Runs the scalar recursion rho_R(E)u = 0 seeded by the unit diagonal
/// construction and sums |u| until it falls below 1e-16 (tail certified by
/// q < 1). Throws std::domain_error when q >= 1.
C0Result c0_constant(const method::MethodSpec& spec, std::size_t n_probe = 1000000);

/// C0 machinery on a raw stencil (test hook and internal building block).
C0Result c0_from_stencil(std::span<const double> gamma, std::size_t n_probe = 1000000);

/// First-order perturbation structure of the extraneous operator:
/// T[0] is the constant-step deflated stencil, T[j] the derivative of the
/// deflated row with respect to the increment of the j-th newest step ratio
/// at unit ratios. For k=2 the exact quadratic term is also available.
struct PerturbationSet {
    int k = 0;
    std::vector<std::vector<double>> T;            ///< k stencils, each length k
    std::optional<std::vector<double>> quadratic;  ///< k=2 only: the V^2 stencil
};

enum class DerivativeRoute {
    Auto,             ///< closed forms for k <= 3, finite differences above
    ClosedForm,       ///< exact rational stencils (k = 2, 3 only)
    FiniteDifference  ///< central differences at 1e-5 with one Richardson level
};

PerturbationSet perturbation_matrices(const method::MethodSpec& spec,
                                      DerivativeRoute route = DerivativeRoute::Auto);

/// l1 norm of the Toeplitz symbol product T_j(z)/T_0(z), i.e. the N->infinity
/// limit of ||T_j T_0^{-1}||_inf. Coefficients are summed until the geometric
/// tail (certified by the root radius of T_0) contributes < 1e-12.
double toeplitz_product_inf_norm(std::span<const double> tj, std::span<const double> t0);

/// Full stability certificate for a method on grids of given regularity.
struct StabilityReport {
    int k = 0;
    double q = 0.0;
    double c0 = 0.0;
    double theorem2_bound = 0.0;
    double m_inf = 0.0;               ///< lower log norm of the constant-step stencil
    std::vector<double> s_norms;      ///< S_j = ||T_j T_0^{-1}||_inf, j = 1..k-1
    bool quadratic_condition = false; ///< true when the k=2 quadratic term is used
    double w_max = 0.0;               ///< largest admissible ||V||_inf
    double w_max_linear = 0.0;        ///< linear-condition value (differs for k=2)
    double regularity = 0.0;          ///< ||phi'/phi||_inf this report was built for
    long n_star = 0;                  ///< ceil(regularity / w_max)
    double c_phi_w = 0.0;             ///< w at which c_phi_bound is reported (w_max/2)
    double c_phi_bound = 0.0;         ///< inverse bound at c_phi_w
    bool max_root_simple = true;
    std::string verdict;              ///< "certified"

    /// Canonical JSON with the fixed field names and ordering.
    [[nodiscard]] std::string to_json() const;
};

/// Computes q, C0, S_j, solves the admissibility equation for w_max by
/// bisection (quadratic form for k=2, linear form otherwise), and derives
/// N* = ceil(regularity / w_max). Throws std::domain_error when the stencil
/// is not strongly stable (q >= 1) or the regularity is not finite.
StabilityReport stability_threshold(const method::MethodSpec& spec,
                                    const PerturbationSet& pert,
                                    double regularity);

/// Inverse bound C0 / (1 - S1 w - S2 w^2) (quadratic) or C0 / (1 - w sum S_j)
/// at a given w; +infinity for w >= w_max.
double certificate_bound(const StabilityReport& report, double w);

/// m_inf[T_0 + v (T_1 + ... + T_{k-1})]: the ramp-up log norm at constant
/// increment v (equal consecutive ratios).
double ramp_log_norm(const PerturbationSet& pert, double v);

/// Admissible ramp-up increment window (v_min, v_max): v_max solves
/// m_inf(v) = 0 branchwise-exactly; v_min is the nearest negative
/// absolute-value branch boundary. N* for ramping grids is regularity/v_max.
struct RampUpWindow {
    double v_min = 0.0;
    double v_max = 0.0;

    [[nodiscard]] double n_star(double regularity) const { return regularity / v_max; }
    [[nodiscard]] double ratio_low() const { return 1.0 + v_min; }
    [[nodiscard]] double ratio_high() const { return 1.0 + v_max; }
};

RampUpWindow ramp_up_window(const PerturbationSet& pert);

/// Closed-form BDF2 step-ratio stability window.
struct Bdf2Window {
    double r_max = 0.0;  ///< 1 + sqrt(2)

    /// One-step extraneous amplification r^2/(1+2r); equals 1 at r_max.
    [[nodiscard]] static double amplification(double r) { return r * r / (1.0 + 2.0 * r); }
    /// Minimal step count for a map of given regularity: regularity/sqrt(2).
    [[nodiscard]] double n_star(double regularity) const;
};

Bdf2Window bdf2_exact_ratio_bound();

}  // namespace zstab::stability
