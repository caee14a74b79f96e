#include "zstab/method.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace zstab;
using method::MethodSpec;

namespace {

Rational rat(long num, long den = 1) { return Rational(num) / Rational(den); }

const std::vector<std::vector<Rational>> kTableAlpha = {
    {rat(-1), rat(1)},
    {rat(1, 2), rat(-2), rat(3, 2)},
    {rat(-1, 3), rat(3, 2), rat(-3), rat(11, 6)},
    {rat(1, 4), rat(-4, 3), rat(3), rat(-4), rat(25, 12)},
    {rat(-1, 5), rat(5, 4), rat(-10, 3), rat(5), rat(-5), rat(137, 60)},
    {rat(1, 6), rat(-6, 5), rat(15, 4), rat(-20, 3), rat(15, 2), rat(-6), rat(147, 60)},
};

const std::vector<std::vector<Rational>> kTableGamma = {
    {rat(1)},
    {rat(-1, 2), rat(3, 2)},
    {rat(1, 3), rat(-7, 6), rat(11, 6)},
    {rat(-1, 4), rat(13, 12), rat(-23, 12), rat(25, 12)},
    {rat(1, 5), rat(-21, 20), rat(137, 60), rat(-163, 60), rat(137, 60)},
    {rat(-1, 6), rat(31, 30), rat(-163, 60), rat(79, 20), rat(-71, 20), rat(147, 60)},
};

/// Reference gamma functions for the variable BDF3 row (beta_3 = 1), as
/// rational functions of r1 (newest ratio) and r2 (previous ratio).
std::vector<double> bdf3_gamma_reference(double r1, double r2) {
    const double g2 = (4 * r1 * r2 + r2 + 3 * r1 * r1 * r2 + 2 * r1 + 1) /
                      (r2 + r1 * r1 * r2 + 2 * r1 * r2 + r1 + 1);
    const double g1 = -(r1 * r1 *
                        (4 * r1 * r2 * r2 + r1 * r1 * r2 * r2 + 1 + 2 * r1 * r2 + 3 * r2 + 3 * r2 * r2)) /
                      ((r2 + r1 * r1 * r2 + 2 * r1 * r2 + r1 + 1) * (r2 + 1));
    const double g0 = ((r1 + 1) * r1 * r1 * r2 * r2 * r2) / ((r2 + 1) * (r1 * r2 + r2 + 1));
    return {g0, g1, g2};
}

}  // namespace

TEST_CASE("constant rows reproduce the standard table exactly in rational mode") {
    for (int k = 1; k <= 6; ++k) {
        const auto row = method::bdf_constant_row<Rational>(MethodSpec::bdf(k));
        CHECK(row.alpha == kTableAlpha[static_cast<std::size_t>(k - 1)]);
        CHECK(row.beta.back() == Rational(1));
        const auto gamma = method::deflate_row(row).gamma;
        CHECK(gamma == kTableGamma[static_cast<std::size_t>(k - 1)]);
        Rational gsum(0);
        for (const auto& g : gamma) gsum += g;
        CHECK(gsum == Rational(1));  // rho_R(1) = 1 at constant steps
    }
}

TEST_CASE("implicit Euler row") {
    const auto row = method::bdf_constant_row<double>(MethodSpec::bdf(1));
    CHECK(row.alpha == std::vector<double>{-1.0, 1.0});
    CHECK(row.beta == std::vector<double>{0.0, 1.0});
    CHECK(method::deflate_row(row).gamma == std::vector<double>{1.0});
}

TEST_CASE("variable rows reduce to constant rows at unit ratios") {
    for (int k = 1; k <= 6; ++k) {
        const std::vector<double> unit(static_cast<std::size_t>(k) - 1, 1.0);
        const auto var = method::bdf_variable_row<double>(MethodSpec::bdf(k), unit);
        const auto cst = method::bdf_constant_row<double>(MethodSpec::bdf(k));
        for (std::size_t j = 0; j < var.alpha.size(); ++j) CHECK(var.alpha[j] == cst.alpha[j]);
    }
}

TEST_CASE("BDF2 closed form (r^2, -(1+r)^2, 1+2r)/2") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.1, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double r = dist(rng);
        const auto row = method::bdf_variable_row<double>(MethodSpec::bdf(2), std::vector<double>{r});
        CHECK(row.alpha[0] == doctest::Approx(r * r / 2).epsilon(1e-14));
        CHECK(row.alpha[1] == doctest::Approx(-(1 + r) * (1 + r) / 2).epsilon(1e-14));
        CHECK(row.alpha[2] == doctest::Approx((1 + 2 * r) / 2).epsilon(1e-14));
        CHECK(row.beta[2] == doctest::Approx((1 + r) / 2).epsilon(1e-14));
    }
    // The worked r=2 case: alpha scaled by 2 gives (4, -9, 5).
    const auto row = method::bdf_variable_row<double>(MethodSpec::bdf(2), std::vector<double>{2.0});
    CHECK(row.alpha[0] * 2 == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(row.alpha[1] * 2 == doctest::Approx(-9.0).epsilon(1e-15));
    CHECK(row.alpha[2] * 2 == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("BDF3 deflated row matches the closed-form gamma functions") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.2, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double r1 = dist(rng);  // newest ratio
        const double r2 = dist(rng);
        const auto row =
            method::bdf_variable_row<double>(MethodSpec::bdf(3), std::vector<double>{r2, r1});
        const auto gamma = method::deflate_row(row).gamma;
        const auto ref = bdf3_gamma_reference(r1, r2);
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(gamma[j] == doctest::Approx(ref[j]).epsilon(1e-12));
    }
    // Unit ratios give the table c-row.
    const auto g = bdf3_gamma_reference(1.0, 1.0);
    CHECK(g[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(g[1] == doctest::Approx(-7.0 / 6).epsilon(1e-15));
    CHECK(g[2] == doctest::Approx(11.0 / 6).epsilon(1e-15));
}

TEST_CASE("row sums vanish for random ratio vectors") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    for (int k = 1; k <= 6; ++k) {
        for (int i = 0; i < 50; ++i) {
            std::vector<double> ratios(static_cast<std::size_t>(k) - 1);
            for (auto& r : ratios) r = dist(rng);
            const auto row = method::bdf_variable_row<double>(MethodSpec::bdf(k), ratios);
            double scale = 0.0;
            for (double a : row.alpha) scale = std::max(scale, std::abs(a));
            CHECK(std::abs(row.row_sum()) <= 1e-13 * scale);
        }
    }
    // Exact mode: the sum is identically zero.
    const std::vector<Rational> ratios{rat(5, 4), rat(7, 10)};
    const auto row = method::bdf_variable_row<Rational>(MethodSpec::bdf(3), ratios);
    CHECK(row.row_sum() == Rational(0));
}

TEST_CASE("deflation round-trip reconstructs the row") {
    // Exact mode: conv(deflate(row), (-1, 1)) is the identity.
    std::mt19937 irng(5);
    std::uniform_int_distribution<long> num(1, 40), den(1, 40);
    for (int k = 2; k <= 6; ++k) {
        std::vector<Rational> ratios(static_cast<std::size_t>(k) - 1);
        for (auto& r : ratios) r = rat(num(irng), den(irng));
        const auto row = method::bdf_variable_row<Rational>(MethodSpec::bdf(k), ratios);
        const auto back = method::convolve_backward_difference(method::deflate_row(row).gamma);
        CHECK(back == row.alpha);
    }
    // Float mode: the reconstruction agrees to rounding.
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> dist(0.3, 3.0);
    for (int k = 2; k <= 6; ++k) {
        std::vector<double> ratios(static_cast<std::size_t>(k) - 1);
        for (auto& r : ratios) r = dist(rng);
        const auto row = method::bdf_variable_row<double>(MethodSpec::bdf(k), ratios);
        const auto back = method::convolve_backward_difference(method::deflate_row(row).gamma);
        for (std::size_t j = 0; j < row.alpha.size(); ++j)
            CHECK(back[j] == doctest::Approx(row.alpha[j]).epsilon(1e-14));
    }
}

TEST_CASE("deflation worked examples") {
    method::CoefficientRow bdf2{2, {0.5, -2.0, 1.5}, {0, 0, 1}, {1.0}};
    CHECK(method::deflate_row(bdf2).gamma == std::vector<double>{-0.5, 1.5});

    method::CoefficientRow euler{1, {-1.0, 1.0}, {0, 1}, {}};
    CHECK(method::deflate_row(euler).gamma == std::vector<double>{1.0});

    method::ExactCoefficientRow bdf4{4,
                                     {rat(1, 4), rat(-4, 3), rat(3), rat(-4), rat(25, 12)},
                                     {rat(0), rat(0), rat(0), rat(0), rat(1)},
                                     {rat(1), rat(1), rat(1)}};
    CHECK(method::deflate_row(bdf4).gamma == kTableGamma[3]);
}

TEST_CASE("deflation rejects non-preconsistent rows") {
    method::CoefficientRow bad{2, {0.5, -2.0, 1.6}, {0, 0, 1}, {1.0}};
    CHECK_THROWS_AS((void)method::deflate_row(bad), std::domain_error);
}

TEST_CASE("exactness residual identifies correct and incorrect rows") {
    // Degree-0 preconsistency on the constant BDF2 stencil.
    const auto bdf2 = method::bdf_constant_row<double>(MethodSpec::bdf(2));
    const std::vector<double> nodes{0.0, 0.5, 1.0};
    CHECK(method::exactness_residual(bdf2, nodes) <= 1e-13);

    // A BDF3 row at mixed ratios is exact to rounding on [0,1] nodes.
    const std::vector<double> ratios{1.1, 0.9};
    const auto row = method::bdf_variable_row<double>(MethodSpec::bdf(3), ratios);
    const double h0 = 1.0 / (1.0 + 1.1 + 1.1 * 0.9);
    const std::vector<double> nodes3{0.0, h0, h0 + 1.1 * h0, h0 + 1.1 * h0 + 0.99 * h0};
    CHECK(method::exactness_residual(row, nodes3) <= 1e-12);

    // The BDF2 row is not exact for cubics: the same functional applied to
    // q(t) = t^3 on (0, 1/2, 1) leaves a nonzero defect.
    double lhs = 0.0;
    const double t[3] = {0.0, 0.5, 1.0};
    for (int j = 0; j < 3; ++j) lhs += bdf2.alpha[static_cast<std::size_t>(j)] * t[j] * t[j] * t[j];
    const double rhs = 0.5 * bdf2.beta[2] * 3.0;  // h * beta_2 * q'(1)
    CHECK(std::abs(lhs - rhs) > 1e-3);
}

TEST_CASE("exactness residual is exactly zero in rational mode") {
    const std::vector<Rational> ratios{rat(5, 4), rat(7, 10)};
    const auto row = method::bdf_variable_row<Rational>(MethodSpec::bdf(3), ratios);
    // Nodes with h0 = 1: 0, 1, 1 + 5/4, 1 + 5/4 + 7/8.
    const std::vector<Rational> nodes{rat(0), rat(1), rat(9, 4), rat(9, 4) + rat(7, 8)};
    CHECK(method::exactness_residual(row, nodes) == Rational(0));
}

TEST_CASE("exactness oracle covers every generated row up to k = 6") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(0.4, 2.2);
    for (int k = 1; k <= 6; ++k) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> ratios(static_cast<std::size_t>(k) - 1);
            for (auto& r : ratios) r = dist(rng);
            const auto row = method::bdf_variable_row<double>(MethodSpec::bdf(k), ratios);
            // Scale nodes into [0,1].
            std::vector<double> nodes(static_cast<std::size_t>(k) + 1, 0.0);
            double h = 1.0;
            for (int i = 0; i < k; ++i) {
                if (i > 0) h *= ratios[static_cast<std::size_t>(i - 1)];
                nodes[static_cast<std::size_t>(i) + 1] = nodes[static_cast<std::size_t>(i)] + h;
            }
            const double span = nodes.back();
            for (auto& t : nodes) t /= span;
            CHECK(method::exactness_residual(row, nodes) <= 1e-12);
        }
    }
}

TEST_CASE("node/ratio mismatch is rejected") {
    const auto row = method::bdf_variable_row<double>(MethodSpec::bdf(2), std::vector<double>{2.0});
    const std::vector<double> nodes{0.0, 0.5, 1.0};  // ratio 1, row says 2
    CHECK_THROWS_AS((void)method::exactness_residual(row, nodes), std::invalid_argument);
}

TEST_CASE("degenerate inputs are rejected at the boundary") {
    CHECK_THROWS_AS((void)method::bdf_constant_row<double>(MethodSpec::bdf(0)), std::invalid_argument);
    CHECK_THROWS_AS((void)method::bdf_constant_row<double>(MethodSpec::bdf(7)), std::invalid_argument);
    CHECK_THROWS_AS(
        (void)method::bdf_variable_row<double>(MethodSpec::bdf(2), std::vector<double>{-1.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)method::bdf_variable_row<double>(MethodSpec::bdf(2), std::vector<double>{0.0}),
        std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(
        (void)method::bdf_variable_row<double>(MethodSpec::bdf(2), std::vector<double>{inf}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)method::bdf_variable_row<double>(MethodSpec::bdf(3), std::vector<double>{1.0}),
        std::invalid_argument);
}
