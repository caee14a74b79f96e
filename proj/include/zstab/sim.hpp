#pragma once

#include "zstab/grid.hpp"
#include "zstab/method.hpp"
#include "zstab/rational.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace zstab::sim {

/// Summary of one homogeneous run: the solution y of the k-step recursion on
/// the grid and the extraneous sequence u_n = N (y_{n+1} - y_n).
struct RunResult {
    int N = 0;
    double sup_y = 0.0;
    double sup_u = 0.0;
    /// Fitted geometric rate of |u| per step: least squares on log|u_n| over
    /// the second half of the run, truncated where |u| falls below the
    /// rounding floor of the y differences (0 when the sequence is dead).
    double growth_rate = 0.0;
    double initial_norm = 0.0;
};

/// Full trajectories for equivalence and decay checks.
struct Trajectory {
    std::vector<double> y;  // N+1 values
    std::vector<double> u;  // N values
    RunResult summary;
};

/// Advances sum_j alpha_{j,n} y_{n+j} = 0 for y_{n+k}, recording u.
/// init supplies y_0..y_{k-1}; the grid must have at least k+1 points.
RunResult run_homogeneous(const method::MethodSpec& spec, const grid::Grid& g,
                          std::span<const double> init);
Trajectory simulate_homogeneous(const method::MethodSpec& spec, const grid::Grid& g,
                                std::span<const double> init);

/// Homogeneous recursion in exact rational arithmetic on a constant-ratio
/// stencil (small N): returns init followed by the advanced values.
std::vector<Rational> exact_homogeneous_run(const method::MethodSpec& spec, const Rational& ratio,
                                            std::vector<Rational> init, int steps);

/// Same dynamics through the deflated recursion sum_j gamma_{j,n} u_{n+j} = 0
/// followed by Euler integration y_{n+1} = y_n + u_n/N (the factored scheme).
Trajectory simulate_homogeneous_deflated(const method::MethodSpec& spec, const grid::Grid& g,
                                         std::span<const double> init);

/// Grid family indexed by step count, e.g. a deformation map or a constant
/// step ratio realized per N.
using GridSource = std::function<grid::Grid(int)>;

GridSource map_source(const grid::GridMap& map);
GridSource constant_ratio_source(double ratio);

enum class Verdict { Stable, Unstable };

std::string to_string(Verdict v);

struct SweepConfig {
    std::vector<int> Ns;          ///< increasing, at least 4 values
    double delta = 1.0;           ///< alternating-init amplitude
    int random_inits = 10;        ///< seeded random start vectors
    unsigned seed = 12345;
    double growth_tolerance = 0.05;  ///< sup ratio allowance per N-doubling
    int jobs = 1;                    ///< parallel grid evaluations
};

/// Per-N worst normalized run over the init policy, plus the verdict.
/// Growth detection uses the extraneous sequence (y can hide u-growth at
/// moderate N): STABLE iff sup_u/(N * initial_norm) grows by at most
/// 1 + growth_tolerance per step of the N sweep. Heuristic by nature; the
/// theory's notion is uniform boundedness as N grows.
struct SweepResult {
    std::vector<RunResult> runs;
    Verdict verdict = Verdict::Stable;
};

SweepResult boundedness_sweep(const method::MethodSpec& spec, const GridSource& grids,
                              const SweepConfig& cfg);

/// Quadrature convergence study for dy/dt = f(t) on [0,1] with exact starting
/// values from the supplied antiderivative; errors are |y_N - exact|.
struct ConvergenceResult {
    std::vector<int> Ns;
    std::vector<double> errors;
    double fitted_order = 0.0;  ///< log-log regression slope
};

ConvergenceResult quadrature_convergence(const method::MethodSpec& spec, const GridSource& grids,
                                         const std::function<double(double)>& f,
                                         const std::function<double(double)>& antiderivative,
                                         std::span<const int> Ns);

/// Single quadrature run; returns |y_N - antiderivative(1)| (+ reference shift).
double quadrature_error(const method::MethodSpec& spec, const grid::Grid& g,
                        const std::function<double(double)>& f,
                        const std::function<double(double)>& antiderivative);

void write_sweep_csv(const SweepResult& result, std::ostream& out);

}  // namespace zstab::sim
