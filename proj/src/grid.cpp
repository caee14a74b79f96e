#include "zstab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace zstab::grid {

namespace {

std::string compact(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

double parse_param(const std::string& text, const std::string& family, const std::string& key) {
    // text is everything after "family:", e.g. "c=2" or "c=2,junk=3" (rejected)
    const auto eq = text.find('=');
    if (eq == std::string::npos || text.substr(0, eq) != key || text.find(',') != std::string::npos)
        throw std::invalid_argument("grid family '" + family + "' expects a single parameter '" + key + "='");
    std::size_t used = 0;
    const std::string value = text.substr(eq + 1);
    double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("bad numeric value in grid spec: " + value);
    return x;
}

}  // namespace

GridMap GridMap::identity() {
    GridMap m;
    m.name = "identity";
    m.Phi = [](double tau) { return tau; };
    m.phi = [](double) { return 1.0; };
    m.dphi = [](double) { return 0.0; };
    return m;
}

GridMap GridMap::exp_ramp(double c) {
    if (std::abs(c) < 1e-12) return identity();
    GridMap m;
    m.name = "exp:c=" + compact(c);
    const double denom = std::expm1(c);
    m.Phi = [c, denom](double tau) { return std::expm1(c * tau) / denom; };
    m.phi = [c, denom](double tau) { return c * std::exp(c * tau) / denom; };
    m.dphi = [c, denom](double tau) { return c * c * std::exp(c * tau) / denom; };
    return m;
}

GridMap GridMap::poly_stretch(double a) {
    if (!(a > 0)) throw std::invalid_argument("poly stretch exponent must be positive");
    GridMap m;
    m.name = "poly:a=" + compact(a);
    m.Phi = [a](double tau) { return std::pow(tau, a); };
    m.phi = [a](double tau) { return a * std::pow(tau, a - 1.0); };
    m.dphi = [a](double tau) { return a * (a - 1.0) * std::pow(tau, a - 2.0); };
    m.bounded_log_derivative = (a == 1.0);
    return m;
}

GridMap GridMap::sigmoid(double s) {
    if (!(s > 0)) throw std::invalid_argument("sigmoid steepness must be positive");
    GridMap m;
    m.name = "sigmoid:s=" + compact(s);
    auto raw = [s](double tau) { return 1.0 / (1.0 + std::exp(-s * (tau - 0.5))); };
    const double lo = raw(0.0), hi = raw(1.0);
    const double span = hi - lo;
    m.Phi = [raw, lo, span](double tau) { return (raw(tau) - lo) / span; };
    m.phi = [raw, s, span](double tau) {
        const double y = raw(tau);
        return s * y * (1.0 - y) / span;
    };
    m.dphi = [raw, s, span](double tau) {
        const double y = raw(tau);
        return s * s * y * (1.0 - y) * (1.0 - 2.0 * y) / span;
    };
    return m;
}

GridMap GridMap::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string family = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    if (family == "identity" || family == "uniform") {
        if (!rest.empty()) throw std::invalid_argument("identity map takes no parameters");
        return identity();
    }
    if (family == "exp") return exp_ramp(parse_param(rest, family, "c"));
    if (family == "poly") return poly_stretch(parse_param(rest, family, "a"));
    if (family == "sigmoid") return sigmoid(parse_param(rest, family, "s"));
    throw std::invalid_argument("unknown grid map family: " + family);
}

void GridMap::validate(int samples) const {
    if (!Phi || !phi) throw std::invalid_argument("grid map is missing evaluators");
    if (std::abs(Phi(0.0)) > 1e-14 || std::abs(Phi(1.0) - 1.0) > 1e-14)
        throw std::invalid_argument("grid map endpoints must satisfy Phi(0)=0, Phi(1)=1");
    // Midpoint sampling: families singular only at an endpoint still realize
    // valid grids, since the realized steps are differences of Phi values.
    for (int i = 0; i < samples; ++i) {
        const double tau = (i + 0.5) / samples;
        if (!(phi(tau) > 0.0)) throw std::invalid_argument("grid map derivative must be positive on (0,1)");
    }
}

double Grid::max_abs_increment() const {
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    return worst;
}

double Grid::max_ratio_of_ratios_deviation() const {
    double worst = 0.0;
    for (std::size_t n = 1; n < r.size(); ++n) worst = std::max(worst, std::abs(r[n] / r[n - 1] - 1.0));
    return worst;
}

void Grid::write_csv(std::ostream& out) const {
    out << "n,t,h,r,v\n";
    char buf[128];
    for (std::size_t n = 0; n < t.size(); ++n) {
        out << n;
        std::snprintf(buf, sizeof buf, ",%.15e", t[n]);
        out << buf;
        if (n < h.size()) {
            std::snprintf(buf, sizeof buf, ",%.15e", h[n]);
            out << buf;
        } else {
            out << ",";
        }
        if (n < r.size()) {
            std::snprintf(buf, sizeof buf, ",%.15e,%.15e", r[n], v[n]);
            out << buf;
        } else {
            out << ",,";
        }
        out << "\n";
    }
}

std::string Grid::to_json() const {
    std::ostringstream out;
    char buf[64];
    auto emit = [&](const std::vector<double>& xs) {
        out << "[";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.15e", xs[i]);
            out << (i ? "," : "") << buf;
        }
        out << "]";
    };
    out << "{\"schema\":1,\"n\":" << h.size() << ",\"t\":";
    emit(t);
    out << ",\"h\":";
    emit(h);
    out << ",\"r\":";
    emit(r);
    out << ",\"v\":";
    emit(v);
    out << "}";
    return out.str();
}

namespace {

Grid from_times(std::vector<double> t) {
    Grid g;
    g.t = std::move(t);
    const std::size_t N = g.t.size() - 1;
    g.h.resize(N);
    for (std::size_t n = 0; n < N; ++n) {
        g.h[n] = g.t[n + 1] - g.t[n];
        if (!(g.h[n] > 0.0)) throw std::domain_error("non-monotone grid: step " + std::to_string(n) + " is not positive");
    }
    if (N >= 1) {
        g.r.resize(N - 1);
        g.v.resize(N - 1);
        for (std::size_t n = 0; n + 1 < N; ++n) {
            g.r[n] = g.h[n + 1] / g.h[n];
            g.v[n] = g.r[n] - 1.0;
        }
    }
    return g;
}

}  // namespace

Grid build_grid(const GridMap& map, int steps) {
    if (steps < 1) throw std::invalid_argument("grid needs at least one step");
    map.validate(std::min(10 * steps, 200000));
    std::vector<double> t(static_cast<std::size_t>(steps) + 1);
    for (int n = 0; n <= steps; ++n) t[static_cast<std::size_t>(n)] = map.Phi(static_cast<double>(n) / steps);
    return from_times(std::move(t));
}

Grid uniform_grid(int steps) { return build_grid(GridMap::identity(), steps); }

Grid constant_ratio_grid(int steps, double ratio) {
    if (steps < 1) throw std::invalid_argument("grid needs at least one step");
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw std::invalid_argument("constant step ratio must be positive");
    // h_n = h_0 ratio^n with h_0 chosen so the steps sum to 1.
    std::vector<double> t(static_cast<std::size_t>(steps) + 1);
    double sum = 0.0, p = 1.0;
    for (int n = 0; n < steps; ++n) {
        sum += p;
        p *= ratio;
    }
    const double h0 = 1.0 / sum;
    t[0] = 0.0;
    double h = h0;
    for (int n = 0; n < steps; ++n) {
        t[static_cast<std::size_t>(n) + 1] = t[static_cast<std::size_t>(n)] + h;
        h *= ratio;
    }
    t.back() = 1.0;
    return from_times(std::move(t));
}

std::vector<double> model_steps(const GridMap& map, int steps) {
    std::vector<double> h(static_cast<std::size_t>(steps));
    for (int n = 0; n < steps; ++n) h[static_cast<std::size_t>(n)] = map.phi((n + 0.5) / steps) / steps;
    return h;
}

RegularityEstimate regularity(const GridMap& map, int sampling) {
    if (sampling < 2) throw std::invalid_argument("regularity sampling too small");
    RegularityEstimate est;
    est.bounded = map.bounded_log_derivative;
    const double dtau = 1.0 / sampling;
    for (int i = 0; i <= sampling; ++i) {
        const double tau = static_cast<double>(i) / sampling;
        const double p = map.phi(tau);
        if (!(p > 0.0)) throw std::domain_error("nonpositive phi sample in regularity estimate");
        double dp;
        if (map.dphi) {
            dp = map.dphi(tau);
        } else {
            const double lo = std::max(0.0, tau - dtau), hi = std::min(1.0, tau + dtau);
            dp = (map.phi(hi) - map.phi(lo)) / (hi - lo);
        }
        const double val = std::abs(dp / p);
        if (!std::isfinite(val)) {
            est.value = std::numeric_limits<double>::infinity();
            est.tau_at = tau;
            break;
        }
        if (val > est.value) {
            est.value = val;
            est.tau_at = tau;
        }
    }
    est.t_at = map.Phi(est.tau_at);
    return est;
}

void ControllerConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("controller tolerance must be positive");
    if (p < 1) throw std::invalid_argument("controller order must be >= 1");
}

Grid controller_grid(const ControllerConfig& cfg,
                     const std::function<double(double)>& error_model,
                     double t_end) {
    cfg.validate();
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    const double underflow = 1e-12 * t_end;

    auto model = [&](double t) {
        const double m = error_model(t);
        if (!(m > 0.0) || !std::isfinite(m)) throw std::domain_error("error model must be positive and finite");
        return m;
    };

    // Ideal first step; error and ratio history seeded to the set point.
    double h = std::pow(cfg.epsilon / model(0.0), 1.0 / cfg.p);
    h = std::min(h, t_end);
    double err1 = cfg.epsilon, err2 = cfg.epsilon;  // l_{n-1}, l_{n-2}
    double r_prev = 1.0;

    // Step past t_end, then rescale the whole grid onto [0,1]: the uniform
    // rescaling preserves every step ratio, so no clipped-final-step artifact
    // enters r and v.
    std::vector<double> t{0.0};
    while (t.back() < t_end) {
        if (h < underflow) throw std::domain_error("controller step underflow: unusable error model");
        const double t_now = t.back();
        t.push_back(t_now + h);
        err2 = err1;
        err1 = std::pow(h, cfg.p) * model(std::min(t_now, t_end));
        const double ratio = std::pow(cfg.epsilon / err1, cfg.b1 / cfg.p) *
                             std::pow(cfg.epsilon / err2, cfg.b2 / cfg.p) *
                             std::pow(r_prev, -cfg.a1);
        r_prev = ratio;
        h *= ratio;
        if (t.size() > 100000000) throw std::domain_error("controller failed to reach t_end");
    }
    if (t.size() < 2) throw std::domain_error("controller produced no steps");
    const double span = t.back();
    for (double& x : t) x /= span;
    t.front() = 0.0;
    t.back() = 1.0;
    return from_times(std::move(t));
}

GridSpec GridSpec::parse(const std::string& text) {
    GridSpec spec;
    spec.text = text;
    if (text.rfind("geo:", 0) == 0) {
        spec.kind = Kind::ConstantRatio;
        spec.ratio = parse_param(text.substr(4), "geo", "r");
        if (!(spec.ratio > 0.0)) throw std::invalid_argument("constant step ratio must be positive");
        return spec;
    }
    spec.kind = Kind::Map;
    spec.map = GridMap::parse(text);
    return spec;
}

Grid GridSpec::realize(int steps) const {
    return kind == Kind::Map ? build_grid(map, steps) : constant_ratio_grid(steps, ratio);
}

}  // namespace zstab::grid
