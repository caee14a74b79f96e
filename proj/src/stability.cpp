#include "zstab/stability.hpp"

#include "zstab/json_writer.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace zstab::stability {

namespace {

constexpr double kRootResidualTol = 1e-12;

std::complex<double> eval_poly(std::span<const double> coeff, std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = coeff.size(); j-- > 0;) acc = acc * z + coeff[j];
    return acc;
}

std::complex<double> eval_poly_deriv(std::span<const double> coeff, std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = coeff.size(); j-- > 1;) acc = acc * z + static_cast<double>(j) * coeff[j];
    return acc;
}

std::vector<std::complex<double>> companion_roots(std::span<const double> monic_tail) {
    // monic_tail holds c_0..c_{d-1} of z^d + c_{d-1} z^{d-1} + ... + c_0.
    const std::size_t d = monic_tail.size();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<long>(d), static_cast<long>(d));
    for (std::size_t i = 1; i < d; ++i) companion(static_cast<long>(i), static_cast<long>(i) - 1) = 1.0;
    for (std::size_t i = 0; i < d; ++i)
        companion(static_cast<long>(i), static_cast<long>(d) - 1) = -monic_tail[i];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigenvalue iteration failed");
    std::vector<std::complex<double>> roots(d);
    for (std::size_t i = 0; i < d; ++i) roots[i] = solver.eigenvalues()(static_cast<long>(i));
    return roots;
}

void newton_polish(std::span<const double> coeff, std::vector<std::complex<double>>& roots) {
    for (auto& z : roots) {
        for (int it = 0; it < 8; ++it) {
            const std::complex<double> p = eval_poly(coeff, z);
            const std::complex<double> dp = eval_poly_deriv(coeff, z);
            if (std::abs(dp) == 0.0) break;
            const std::complex<double> step = p / dp;
            z -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
        }
    }
}

void sort_roots(std::vector<std::complex<double>>& roots) {
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

}  // namespace

RootSet stencil_roots(std::span<const double> gamma) {
    if (gamma.empty()) throw std::invalid_argument("empty stencil");
    const double lead = gamma.back();
    if (lead == 0.0) throw std::invalid_argument("stencil has zero leading coefficient");

    RootSet out;
    if (gamma.size() == 1) return out;  // constant polynomial, no roots

    std::vector<double> monic(gamma.size() - 1);
    for (std::size_t j = 0; j + 1 < gamma.size(); ++j) monic[j] = gamma[j] / lead;
    std::vector<double> scaled(gamma.size());
    for (std::size_t j = 0; j < gamma.size(); ++j) scaled[j] = gamma[j] / lead;

    auto attempt = [&](bool restart) {
        std::vector<double> tail = monic;
        if (restart) {
            // Deterministic restart: solve the reversed polynomial for 1/z.
            std::vector<double> rev(scaled.rbegin(), scaled.rend());
            const double rl = rev.back();
            std::vector<double> rtail(rev.size() - 1);
            for (std::size_t j = 0; j + 1 < rev.size(); ++j) rtail[j] = rev[j] / rl;
            auto inv_roots = companion_roots(rtail);
            std::vector<std::complex<double>> roots;
            roots.reserve(inv_roots.size());
            for (const auto& z : inv_roots)
                roots.push_back(std::abs(z) == 0.0 ? std::complex<double>(0, 0) : 1.0 / z);
            return roots;
        }
        return companion_roots(tail);
    };

    for (int pass = 0; pass < 2; ++pass) {
        std::vector<std::complex<double>> roots;
        try {
            roots = attempt(pass == 1);
        } catch (const std::runtime_error&) {
            continue;
        }
        newton_polish(scaled, roots);
        sort_roots(roots);
        double residual = 0.0, q = 0.0;
        for (const auto& z : roots) {
            residual = std::max(residual, std::abs(eval_poly(scaled, z)));
            q = std::max(q, std::abs(z));
        }
        if (residual <= kRootResidualTol) {
            out.roots = std::move(roots);
            out.q = q;
            out.max_residual = residual;
            out.max_root_simple = true;
            for (std::size_t a = 0; a < out.roots.size(); ++a)
                for (std::size_t b = a + 1; b < out.roots.size(); ++b)
                    if (std::abs(out.roots[a]) > q - 1e-8 && std::abs(out.roots[b]) > q - 1e-8 &&
                        std::abs(out.roots[a] - out.roots[b]) < 1e-8)
                        out.max_root_simple = false;
            return out;
        }
    }
    throw std::runtime_error("extraneous root finder failed to meet the residual contract");
}

RootSet extraneous_root_radius(const method::MethodSpec& spec) {
    spec.validate();
    const auto gamma = method::deflate_row(method::bdf_constant_row<double>(spec)).gamma;
    return stencil_roots(gamma);
}

C0Result c0_from_stencil(std::span<const double> gamma, std::size_t n_probe) {
    const RootSet roots = stencil_roots(gamma);
    if (!roots.strongly_stable())
        throw std::domain_error("extraneous polynomial is not strongly stable (q >= 1)");

    const std::size_t k = gamma.size();
    const double alpha_k = gamma[k - 1];
    std::vector<double> delta(k);
    for (std::size_t j = 0; j < k; ++j) delta[j] = gamma[j] / alpha_k;

    C0Result res;
    res.q = roots.q;
    res.max_root_simple = roots.max_root_simple;

    // u_1 = 1 preceded by zeros; rho_R(E) u = 0 thereafter.
    std::vector<double> u;
    u.reserve(256);
    u.push_back(1.0);
    double sum = 1.0;
    double log_k = 0.0;  // log of max |u_n| q^{-n}
    const double log_q = roots.q > 0.0 ? std::log(roots.q) : 0.0;
    for (std::size_t i = 1; i < n_probe; ++i) {
        double acc = 0.0;
        for (std::size_t off = 1; off < k && off <= i; ++off) acc -= delta[k - 1 - off] * u[i - off];
        u.push_back(acc);
        sum += std::abs(acc);
        if (acc != 0.0 && roots.q > 0.0)
            log_k = std::max(log_k, std::log(std::abs(acc)) - static_cast<double>(i + 1) * log_q);
        bool dead = i + 1 >= k;
        for (std::size_t off = 0; off + 1 < k && dead; ++off) dead = std::abs(u[i - off]) < 1e-16;
        if (k == 1) dead = true;
        if (dead) break;
    }
    res.terms = u.size();
    res.c0 = sum / std::abs(alpha_k);
    if (roots.q > 0.0) {
        res.growth_constant = std::exp(log_k);
        res.theorem2_bound = res.growth_constant * roots.q / ((1.0 - roots.q) * std::abs(alpha_k));
    } else {
        // Degenerate k=1 case: the proof's geometric bound is void; the exact
        // inverse norm is 1/alpha_k.
        res.growth_constant = 1.0;
        res.theorem2_bound = res.c0;
    }
    return res;
}

C0Result c0_constant(const method::MethodSpec& spec, std::size_t n_probe) {
    spec.validate();
    const auto gamma = method::deflate_row(method::bdf_constant_row<double>(spec)).gamma;
    return c0_from_stencil(gamma, n_probe);
}

namespace {

std::vector<double> deflated_at(const method::MethodSpec& spec, const std::vector<double>& ratios) {
    return method::deflate_row(method::bdf_variable_row<double>(spec, ratios)).gamma;
}

/// Central difference with one Richardson level in the increment of the
/// j-th newest ratio (j = 1 is the newest).
std::vector<double> stencil_derivative(const method::MethodSpec& spec, int j_newest, double h) {
    const std::size_t idx = static_cast<std::size_t>(spec.k - 1 - j_newest);
    auto diff = [&](double step) {
        std::vector<double> rp(static_cast<std::size_t>(spec.k) - 1, 1.0), rm = rp;
        rp[idx] = 1.0 + step;
        rm[idx] = 1.0 - step;
        const auto gp = deflated_at(spec, rp);
        const auto gm = deflated_at(spec, rm);
        std::vector<double> d(gp.size());
        for (std::size_t m = 0; m < gp.size(); ++m) d[m] = (gp[m] - gm[m]) / (2.0 * step);
        return d;
    };
    const auto d1 = diff(h);
    const auto d2 = diff(h / 2.0);
    std::vector<double> out(d1.size());
    for (std::size_t m = 0; m < d1.size(); ++m) out[m] = (4.0 * d2[m] - d1[m]) / 3.0;
    return out;
}

}  // namespace

PerturbationSet perturbation_matrices(const method::MethodSpec& spec, DerivativeRoute route) {
    spec.validate();
    if (spec.k < 2) throw std::invalid_argument("perturbation structure needs k >= 2");

    PerturbationSet set;
    set.k = spec.k;

    const bool closed = route == DerivativeRoute::ClosedForm ||
                        (route == DerivativeRoute::Auto && spec.k <= 3);
    if (closed) {
        if (spec.k == 2) {
            set.T = {{-0.5, 1.5}, {-1.0, 1.0}};
            set.quadratic = std::vector<double>{-0.5, 0.0};
        } else if (spec.k == 3) {
            set.T = {{12.0 / 36, -42.0 / 36, 66.0 / 36},
                     {26.0 / 36, -73.0 / 36, 17.0 / 36},
                     {22.0 / 36, -14.0 / 36, 4.0 / 36}};
        } else {
            throw std::invalid_argument("closed-form perturbation stencils exist for k = 2, 3 only");
        }
        return set;
    }

    set.T.push_back(deflated_at(spec, std::vector<double>(static_cast<std::size_t>(spec.k) - 1, 1.0)));
    for (int j = 1; j < spec.k; ++j) set.T.push_back(stencil_derivative(spec, j, 1e-5));
    if (spec.k == 2) {
        // The k=2 deflated row is exactly quadratic in v, so a wide second
        // difference is exact up to rounding.
        const double h = 1.0 / 16.0;
        const auto gp = deflated_at(spec, {1.0 + h});
        const auto gm = deflated_at(spec, {1.0 - h});
        const auto g0 = deflated_at(spec, {1.0});
        std::vector<double> quad(gp.size());
        for (std::size_t m = 0; m < gp.size(); ++m) quad[m] = (gp[m] + gm[m] - 2.0 * g0[m]) / (2.0 * h * h);
        set.quadratic = quad;
    }
    return set;
}

double toeplitz_product_inf_norm(std::span<const double> tj, std::span<const double> t0) {
    const RootSet roots = stencil_roots(t0);
    if (!roots.strongly_stable())
        throw std::domain_error("T0 is not strongly stable; the symbol series diverges");
    const std::size_t k = t0.size();
    const double diag = t0[k - 1];

    // Symbol coefficients indexed by subdiagonal: coefficient m of the series
    // solves the convolution t0 * c = tj.
    auto sym = [&](std::span<const double> s, std::size_t m) {
        return m < s.size() ? s[s.size() - 1 - m] : 0.0;
    };
    std::vector<double> c;
    c.reserve(256);
    double sum = 0.0;
    const double q = std::max(roots.q, 1e-300);
    const double log_q = std::log(q);
    double log_k = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < 10000000; ++n) {
        double acc = sym(tj, n);
        for (std::size_t m = 1; m < k && m <= n; ++m) acc -= sym(t0, m) * c[n - m];
        acc /= diag;
        c.push_back(acc);
        sum += std::abs(acc);
        if (acc != 0.0)
            log_k = std::max(log_k, std::log(std::abs(acc)) - static_cast<double>(n) * log_q);
        if (n >= 2 * k + 16) {
            // Geometric tail bound K q^{n+1} / (1-q) below threshold ends the sum.
            const double tail = std::exp(log_k + static_cast<double>(n + 1) * log_q) / (1.0 - q);
            if (!(tail >= 1e-12)) return sum;
        }
    }
    throw std::runtime_error("Toeplitz symbol series failed to converge");
}

namespace {

double bisect_root(const std::function<double(double)>& g, double lo, double hi) {
    double flo = g(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

StabilityReport stability_threshold(const method::MethodSpec& spec,
                                    const PerturbationSet& pert,
                                    double regularity) {
    spec.validate();
    if (pert.k != spec.k || pert.T.empty()) throw std::invalid_argument("perturbation set does not match the method");
    if (!(regularity >= 0.0)) throw std::invalid_argument("regularity must be nonnegative");
    if (!std::isfinite(regularity)) throw std::domain_error("regularity is infinite: singular grid map");

    const std::vector<double>& t0 = pert.T[0];
    const C0Result c0 = c0_from_stencil(t0);  // throws for q >= 1

    StabilityReport rep;
    rep.k = spec.k;
    rep.q = c0.q;
    rep.c0 = c0.c0;
    rep.theorem2_bound = c0.theorem2_bound;
    rep.max_root_simple = c0.max_root_simple;
    rep.regularity = regularity;

    double off = 0.0;
    for (std::size_t m = 0; m + 1 < t0.size(); ++m) off += std::abs(t0[m]);
    rep.m_inf = t0.back() - off;

    for (std::size_t j = 1; j < pert.T.size(); ++j)
        rep.s_norms.push_back(toeplitz_product_inf_norm(pert.T[j], t0));
    double s_sum = 0.0;
    for (double s : rep.s_norms) s_sum += s;

    rep.quadratic_condition = pert.quadratic.has_value();
    const double s_quad =
        rep.quadratic_condition ? toeplitz_product_inf_norm(*pert.quadratic, t0) : 0.0;
    if (rep.quadratic_condition) rep.s_norms.push_back(s_quad);

    auto admissibility = [&](double w) {
        return rep.quadratic_condition ? rep.s_norms[0] * w + s_quad * w * w - 1.0 : s_sum * w - 1.0;
    };

    if ((rep.quadratic_condition && rep.s_norms[0] == 0.0 && s_quad == 0.0) ||
        (!rep.quadratic_condition && s_sum == 0.0)) {
        rep.w_max = std::numeric_limits<double>::infinity();
        rep.w_max_linear = rep.w_max;
    } else {
        double hi = 1.0;
        while (admissibility(hi) < 0.0 && hi < 1e12) hi *= 2.0;
        rep.w_max = bisect_root(admissibility, 0.0, hi);
        rep.w_max_linear = s_sum > 0.0 ? 1.0 / s_sum : std::numeric_limits<double>::infinity();
    }

    rep.n_star = regularity == 0.0 ? 0 : static_cast<long>(std::ceil(regularity / rep.w_max));
    rep.c_phi_w = std::isfinite(rep.w_max) ? rep.w_max / 2.0 : 0.0;
    rep.verdict = "certified";
    rep.c_phi_bound = certificate_bound(rep, rep.c_phi_w);
    return rep;
}

double certificate_bound(const StabilityReport& report, double w) {
    if (!(w >= 0.0)) throw std::invalid_argument("w must be nonnegative");
    double used;
    if (report.quadratic_condition) {
        used = report.s_norms[0] * w + report.s_norms[1] * w * w;
    } else {
        used = 0.0;
        for (double s : report.s_norms) used += s * w;
    }
    if (used >= 1.0) return std::numeric_limits<double>::infinity();
    return report.c0 / (1.0 - used);
}

double ramp_log_norm(const PerturbationSet& pert, double v) {
    const std::size_t k = pert.T[0].size();
    double diag = 0.0, off = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
        double entry = pert.T[0][m];
        for (std::size_t j = 1; j < pert.T.size(); ++j) entry += v * pert.T[j][m];
        if (m + 1 == k)
            diag = entry;
        else
            off += std::abs(entry);
    }
    return diag - off;
}

RampUpWindow ramp_up_window(const PerturbationSet& pert) {
    const std::size_t k = pert.T[0].size();
    std::vector<double> base(k, 0.0), slope(k, 0.0);
    for (std::size_t m = 0; m < k; ++m) {
        base[m] = pert.T[0][m];
        for (std::size_t j = 1; j < pert.T.size(); ++j) slope[m] += pert.T[j][m];
    }
    if (!(ramp_log_norm(pert, 0.0) > 0.0))
        throw std::domain_error("constant-step stencil is not diagonally dominant");

    RampUpWindow window;

    // Positive side: m_inf(v) is piecewise linear; walk the branches and take
    // the exact root of the branch where it crosses zero.
    double v = 0.0;
    for (int branch = 0; branch < 64; ++branch) {
        double c = base[k - 1] + v * slope[k - 1];
        double s = slope[k - 1];
        double next_break = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m + 1 < k; ++m) {
            const double entry = base[m] + v * slope[m];
            const double sgn = entry >= 0.0 ? 1.0 : -1.0;
            c -= sgn * entry;
            s -= sgn * slope[m];
            if (slope[m] != 0.0) {
                const double flip = -base[m] / slope[m];
                if (flip > v + 1e-15) next_break = std::min(next_break, flip);
            }
        }
        // On this branch m_inf(x) = c + s (x - v).
        if (s < 0.0) {
            const double root = v - c / s;
            if (root <= next_break) {
                window.v_max = root;
                break;
            }
        }
        if (!std::isfinite(next_break)) {
            window.v_max = std::numeric_limits<double>::infinity();
            break;
        }
        v = next_break;
    }

    // Negative side: the nearest branch boundary, where the absolute-value
    // pattern of the constant-step stencil first changes.
    double vmin = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m + 1 < k; ++m) {
        if (slope[m] != 0.0) {
            const double flip = -base[m] / slope[m];
            if (flip < 0.0) vmin = std::max(vmin, flip);
        }
    }
    window.v_min = vmin;
    return window;
}

double Bdf2Window::n_star(double regularity) const { return regularity / std::sqrt(2.0); }

Bdf2Window bdf2_exact_ratio_bound() { return Bdf2Window{1.0 + std::sqrt(2.0)}; }

std::string StabilityReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("q").value(q);
    w.key("c0").value(c0);
    w.key("theorem2_bound").value(theorem2_bound);
    w.key("m_inf").value(m_inf);
    w.key("s_norms").value_array(s_norms);
    w.key("quadratic_condition").value(quadratic_condition);
    w.key("w_max").value(w_max);
    w.key("w_max_linear").value(w_max_linear);
    w.key("regularity").value(regularity);
    w.key("n_star").value(n_star);
    w.key("c_phi_w").value(c_phi_w);
    w.key("c_phi_bound").value(c_phi_bound);
    w.key("max_root_simple").value(max_root_simple);
    w.key("verdict").value(verdict);
    w.end_object();
    return w.str();
}

}  // namespace zstab::stability
