#include "zstab/operators.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace zstab;
using namespace zstab::ops;
using method::MethodSpec;

TEST_CASE("constant-step A is Toeplitz with the table stencil") {
    const auto A = constant_step_A(MethodSpec::bdf(2), 5);
    CHECK(A.is_toeplitz());
    CHECK(A.stencil() == std::vector<double>{0.5, -2.0, 1.5});
    CHECK(A.get(0, 0) == 1.5);
    CHECK(A.get(1, 0) == -2.0);
    CHECK(A.get(4, 2) == 0.5);
    CHECK(A.get(0, 1) == 0.0);

    // The float grid assembly agrees entrywise to rounding.
    const auto A2 = assemble_A(MethodSpec::bdf(2), grid::uniform_grid(5));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(A2.get(i, j) == doctest::Approx(A.get(i, j)).epsilon(1e-12));
}

TEST_CASE("BDF1 assembly is bidiagonal") {
    const auto A = assemble_A(MethodSpec::bdf(1), grid::uniform_grid(6));
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(A.get(i, i) == 1.0);
        if (i > 0) CHECK(A.get(i, i - 1) == -1.0);
    }
}

TEST_CASE("full rows of A sum to zero on smooth grids") {
    for (int k = 1; k <= 6; ++k) {
        for (const auto& map : {grid::GridMap::exp_ramp(2.0), grid::GridMap::sigmoid(4.0)}) {
            const grid::Grid g = grid::build_grid(map, 60);
            const auto A = assemble_A(MethodSpec::bdf(k), g);
            for (std::size_t i = static_cast<std::size_t>(k); i < 60; ++i) {
                double sum = 0.0, scale = 0.0;
                for (std::size_t j = i - static_cast<std::size_t>(k); j <= i; ++j) {
                    sum += A.get(i, j);
                    scale = std::max(scale, std::abs(A.get(i, j)));
                }
                CHECK(std::abs(sum) <= 1e-13 * scale);
            }
        }
    }
}

TEST_CASE("extraneous operator rows") {
    const auto R = constant_step_R(MethodSpec::bdf(2), 6);
    CHECK(R.stencil() == std::vector<double>{-0.5, 1.5});
    const auto R3 = constant_step_R(MethodSpec::bdf(3), 6);
    CHECK(R3.stencil()[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(R3.stencil()[1] == doctest::Approx(-7.0 / 6).epsilon(1e-15));
    CHECK(R3.stencil()[2] == doctest::Approx(11.0 / 6).epsilon(1e-15));

    // Constant ratio r: full rows are (-r^2/2, (1+2r)/2).
    const double r = 1.3;
    const auto Rv = assemble_R(MethodSpec::bdf(2), grid::constant_ratio_grid(40, r));
    for (std::size_t i = 2; i < 40; ++i) {
        CHECK(Rv.get(i, i) == doctest::Approx((1 + 2 * r) / 2).epsilon(1e-12));
        CHECK(Rv.get(i, i - 1) == doctest::Approx(-r * r / 2).epsilon(1e-12));
    }
}

TEST_CASE("simple integrator and step diagonal") {
    const auto D = assemble_D(3);
    CHECK(D.get(0, 0) == 3.0);
    CHECK(D.get(1, 0) == -3.0);
    CHECK(D.get(2, 2) == 3.0);
    for (std::size_t n : {std::size_t(1), std::size_t(10), std::size_t(1000)})
        CHECK(inverse_inf_norm(assemble_D(n)) == 1.0);

    const auto H = assemble_H(grid::uniform_grid(8));
    for (double h : H.d) CHECK(h == doctest::Approx(1.0 / 8).epsilon(1e-14));
    const auto pt = phi_tilde(grid::uniform_grid(8));
    for (double p : pt.d) CHECK(p == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("factorization residual is rounding-level") {
    CHECK(factorization_residual(MethodSpec::bdf(2), grid::uniform_grid(50)) <= 1e-12);
    CHECK(factorization_residual(MethodSpec::bdf(3),
                                 grid::build_grid(grid::GridMap::exp_ramp(2.0), 200)) <= 1e-10);
    CHECK(factorization_residual(MethodSpec::bdf(1), grid::uniform_grid(50)) <= 1e-13);
}

TEST_CASE("factorization residual scales like rounding, not like N") {
    const auto map = grid::GridMap::exp_ramp(2.0);
    double prev = std::numeric_limits<double>::infinity();
    for (int N : {50, 200, 800}) {
        const double res = factorization_residual(MethodSpec::bdf(4), grid::build_grid(map, N));
        CHECK(res / N <= prev / N * 10);  // loose guard against blowup
        CHECK(res <= 1e-12 * N);
        prev = res;
    }
}

TEST_CASE("forward solve basics") {
    BandedLowerMatrix I = BandedLowerMatrix::toeplitz(4, std::vector<double>{1.0});
    const std::vector<double> rhs{1, 2, 3, 4};
    CHECK(forward_solve(I, rhs) == rhs);

    BandedLowerMatrix Z(2, 0);
    CHECK_THROWS_AS((void)forward_solve(Z, std::vector<double>{1.0, 1.0}), std::domain_error);
}

TEST_CASE("inverse norm routes agree") {
    const auto R = constant_step_R(MethodSpec::bdf(3), 80);
    const double a = inverse_inf_norm(R, InverseNormRoute::UnitSolves);
    const double b = inverse_inf_norm(R, InverseNormRoute::TransposeSolves);
    const double c = inverse_inf_norm(R, InverseNormRoute::ToeplitzRecursion);
    CHECK(a == doctest::Approx(b).epsilon(1e-13));
    CHECK(a == doctest::Approx(c).epsilon(1e-13));

    // A non-Toeplitz instance exercises the general routes.
    const auto Rv = assemble_R(MethodSpec::bdf(2), grid::build_grid(grid::GridMap::exp_ramp(1.0), 40));
    CHECK(inverse_inf_norm(Rv, InverseNormRoute::UnitSolves) ==
          doctest::Approx(inverse_inf_norm(Rv, InverseNormRoute::TransposeSolves)).epsilon(1e-13));
    CHECK_THROWS_AS((void)inverse_inf_norm(Rv, InverseNormRoute::ToeplitzRecursion),
                    std::invalid_argument);
}

TEST_CASE("inverse norm of the BDF2 extraneous operator approaches 1") {
    CHECK(inverse_inf_norm(constant_step_R(MethodSpec::bdf(2), 50)) >= 0.999);
    CHECK(inverse_inf_norm(constant_step_R(MethodSpec::bdf(2), 50)) <= 1.0);
}

TEST_CASE("lower log norm values") {
    CHECK(lower_log_norm_inf(constant_step_R(MethodSpec::bdf(2), 20)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lower_log_norm_inf(constant_step_R(MethodSpec::bdf(3), 20)) ==
          doctest::Approx(1.0 / 3).epsilon(1e-13));
    CHECK(lower_log_norm_inf(constant_step_R(MethodSpec::bdf(4), 20)) ==
          doctest::Approx(-7.0 / 6).epsilon(1e-13));

    // Exact-mode values from the rational stencils.
    auto exact = [](int k) {
        const auto gamma = method::deflate_row(method::bdf_constant_row<Rational>(MethodSpec::bdf(k))).gamma;
        return lower_log_norm_inf(std::span<const Rational>(gamma));
    };
    CHECK(exact(2) == Rational(1));
    CHECK(exact(3) == Rational(1) / 3);
    CHECK(exact(4) == Rational(-7) / 6);
}

TEST_CASE("bound chain: positive log norm bounds the inverse") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 30, b = 3;
        BandedLowerMatrix M(n, b);
        for (std::size_t i = 0; i < n; ++i) {
            double off = 0.0;
            const std::size_t lo = i >= b ? i - b : 0;
            for (std::size_t j = lo; j < i; ++j) {
                M.at(i, j) = dist(rng);
                off += std::abs(M.get(i, j));
            }
            M.at(i, i) = off + 0.1 + std::abs(dist(rng));  // diagonally dominant
        }
        const double m_inf = lower_log_norm_inf(M);
        REQUIRE(m_inf > 0.0);
        CHECK(inverse_inf_norm(M) <= 1.0 / m_inf + 1e-12);
    }
}

TEST_CASE("Toeplitz inverse is Toeplitz: unit-vector solves are column shifts") {
    const std::size_t n = 40;
    for (int k : {2, 3, 6}) {
        const auto R = constant_step_R(MethodSpec::bdf(k), n);
        std::vector<double> e(n, 0.0);
        e[0] = 1.0;
        const auto col0 = forward_solve(R, e);
        e[0] = 0.0;
        e[10] = 1.0;
        const auto col10 = forward_solve(R, e);
        for (std::size_t i = 10; i < n; ++i)
            CHECK(col10[i] == doctest::Approx(col0[i - 10]).epsilon(1e-13));
    }
}

TEST_CASE("triplet export") {
    const auto D = assemble_D(3);
    std::ostringstream out;
    D.write_triplets(out);
    const std::string text = out.str();
    CHECK(text.find("1 1 3.000000000000000e+00") != std::string::npos);
    CHECK(text.find("2 1 -3.000000000000000e+00") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("grid too short is rejected") {
    CHECK_THROWS_AS((void)assemble_A(MethodSpec::bdf(4), grid::uniform_grid(4)), std::invalid_argument);
}

TEST_CASE("inf norm is the max absolute row sum") {
    const auto A = constant_step_A(MethodSpec::bdf(2), 5);
    CHECK(inf_norm(A) == doctest::Approx(4.0).epsilon(1e-15));  // |1/2| + |-2| + |3/2|
    CHECK(inf_norm(assemble_D(10)) == doctest::Approx(20.0).epsilon(1e-15));
}

TEST_CASE("matrix solve with folded initial values equals the seeded recursion") {
    for (int k = 2; k <= 4; ++k) {
        const auto g = grid::uniform_grid(50);
        const auto A = assemble_A(MethodSpec::bdf(k), g);
        std::vector<double> init(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) init[static_cast<std::size_t>(j)] = (j % 2 == 0 ? 1.0 : -1.0);
        const auto y = forward_solve(A, initial_rhs(MethodSpec::bdf(k), g, init));

        // Seeded recursion with the same constant-step row.
        const auto row = method::bdf_constant_row<double>(MethodSpec::bdf(k));
        std::vector<double> hist = init;
        for (std::size_t n = 0; n < 50; ++n) {
            double acc = 0.0;
            for (int j = 0; j < k; ++j)
                acc -= row.alpha[static_cast<std::size_t>(j)] * hist[hist.size() - static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
            hist.push_back(acc / row.alpha[static_cast<std::size_t>(k)]);
            CHECK(y[n] == doctest::Approx(hist.back()).epsilon(1e-12));
        }
    }
}
