#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace zstab::grid {

/// Smooth deformation map Phi: [0,1] -> [0,1] with derivative phi = Phi'.
///
/// Builtin families fill the analytic evaluators; dphi (= phi') may be null
/// for custom maps, in which case consumers fall back to central differences.
struct GridMap {
    std::string name = "identity";
    std::function<double(double)> Phi;
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
    /// False for families with unbounded phi'/phi on [0,1] (poly stretch a != 1).
    bool bounded_log_derivative = true;

    static GridMap identity();
    /// Phi(tau) = (e^{c tau} - 1)/(e^c - 1); phi'/phi == c.
    static GridMap exp_ramp(double c);
    /// Phi(tau) = tau^a, a > 0; phi'/phi = (a-1)/tau is unbounded at 0 for a != 1.
    static GridMap poly_stretch(double a);
    /// Normalized logistic blend with steepness s; |phi'/phi| <= s tanh(s/4).
    static GridMap sigmoid(double s);

    /// Parses "identity", "exp:c=2", "poly:a=2", "sigmoid:s=4".
    static GridMap parse(const std::string& text);

    /// Endpoint and positivity checks: |Phi(0)|, |Phi(1)-1| <= 1e-14 and
    /// phi > 0 on a (samples+1)-point grid. Throws on violation.
    void validate(int samples = 1000) const;
};

/// A realized grid on [0,1]: times t_0..t_N, steps h, ratios r, increments v.
/// All derived arrays are exact differences of the realized times.
struct Grid {
    std::vector<double> t;  // N+1 strictly increasing, t[0]=0, t[N]=1
    std::vector<double> h;  // N:    h[n] = t[n+1] - t[n]
    std::vector<double> r;  // N-1:  r[n] = h[n+1] / h[n]
    std::vector<double> v;  // N-1:  v[n] = r[n] - 1

    [[nodiscard]] int steps() const { return static_cast<int>(h.size()); }
    [[nodiscard]] double max_abs_increment() const;
    /// max_n |r_n / r_{n-1} - 1|, the second-order smoothness indicator.
    [[nodiscard]] double max_ratio_of_ratios_deviation() const;

    void write_csv(std::ostream& out) const;
    [[nodiscard]] std::string to_json() const;
};

/// Grid realized as t_n = Phi(n/N). Throws if the map is invalid or any
/// realized step is nonpositive.
Grid build_grid(const GridMap& map, int steps);

/// Uniform grid (identity map).
Grid uniform_grid(int steps);

/// Geometric grid with constant step ratio r, normalized to [0,1].
Grid constant_ratio_grid(int steps, double ratio);

/// Midpoint model step sizes phi(tau_{n+1/2})/N, exposed separately from the
/// realized steps for model-accuracy checks.
std::vector<double> model_steps(const GridMap& map, int steps);

/// Estimate of ||phi'/phi||_inf over [0,1], which equals ||mu_dot||_inf for
/// the step-size modulation function mu along the solution.
struct RegularityEstimate {
    double value = 0.0;
    double tau_at = 0.0;  // argmax in the tau variable
    double t_at = 0.0;    // same point mapped to t = Phi(tau)
    bool bounded = true;  // family-level flag; false marks a singular map
};

/// Samples |phi'/phi| on a (sampling+1)-point grid, using the analytic
/// derivative when the family provides one and central differences otherwise.
/// Throws on a nonpositive phi sample.
RegularityEstimate regularity(const GridMap& map, int sampling = 4096);

/// Step-size controller parameters: tolerance, method order, filter taps for
/// r_{n-1} = (eps/l_{n-1})^{b1/p} (eps/l_{n-2})^{b2/p} r_{n-2}^{-a1}.
struct ControllerConfig {
    double epsilon = 1e-4;
    int p = 2;
    double b1 = 1.0;  // deadbeat I controller by default
    double b2 = 0.0;
    double a1 = 0.0;

    void validate() const;
};

/// Generates a grid adaptively against the error model t -> ||y^(p+1)(t)||,
/// stepping h_n = r_{n-1} h_{n-1} with the filter recursion and normalizing
/// the result to [0,1]. Throws on step underflow (h < 1e-12 * t_end).
Grid controller_grid(const ControllerConfig& cfg,
                     const std::function<double(double)>& error_model,
                     double t_end = 1.0);

/// CLI-facing grid request: either a deformation map or a constant-ratio
/// family, realized per N. Parses the map syntax plus "geo:r=2.5".
struct GridSpec {
    enum class Kind { Map, ConstantRatio };
    Kind kind = Kind::Map;
    GridMap map = GridMap::identity();
    double ratio = 1.0;
    std::string text = "identity";

    static GridSpec parse(const std::string& text);
    [[nodiscard]] Grid realize(int steps) const;
};

}  // namespace zstab::grid
