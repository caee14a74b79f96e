#include "zstab/grid.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace zstab::grid;

TEST_CASE("identity map gives the uniform grid") {
    const Grid g = build_grid(GridMap::identity(), 4);
    CHECK(g.t == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    for (double r : g.r) CHECK(r == doctest::Approx(1.0).epsilon(1e-15));
    for (double v : g.v) CHECK(std::abs(v) <= 1e-15);
}

TEST_CASE("exp ramp realizes a geometric step sequence") {
    const double c = 2.0;
    const int N = 100;
    const Grid g = build_grid(GridMap::exp_ramp(c), N);
    const double expected_ratio = std::exp(c / N);
    for (double r : g.r) CHECK(r == doctest::Approx(expected_ratio).epsilon(1e-12));
    for (double v : g.v) CHECK(std::abs(v - c / N) <= 5.0 * c * c / (N * N));
    // Doubling N halves the max increment within 1%.
    const Grid g2 = build_grid(GridMap::exp_ramp(c), 2 * N);
    CHECK(g2.max_abs_increment() ==
          doctest::Approx(0.5 * g.max_abs_increment()).epsilon(0.01));
}

TEST_CASE("grid endpoints are exact for the builtin families") {
    for (const auto& map :
         {GridMap::identity(), GridMap::exp_ramp(2.0), GridMap::exp_ramp(-1.5), GridMap::sigmoid(4.0)}) {
        const Grid g = build_grid(map, 37);
        CHECK(g.t.front() == 0.0);
        CHECK(g.t.back() == 1.0);
        for (double h : g.h) CHECK(h > 0.0);
    }
}

TEST_CASE("regularity estimates") {
    CHECK(regularity(GridMap::identity()).value == 0.0);
    CHECK(regularity(GridMap::exp_ramp(2.0)).value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(regularity(GridMap::exp_ramp(-3.0)).value == doctest::Approx(3.0).epsilon(1e-10));

    // Sigmoid: analytic-derivative estimate vs a dense brute-force sampling.
    const GridMap sig = GridMap::sigmoid(4.0);
    const double dense = regularity(sig, 1000000).value;
    CHECK(regularity(sig, 4096).value == doctest::Approx(dense).epsilon(1e-6));
    // Closed form of the sup: s * tanh(s/4) at the endpoints.
    CHECK(dense == doctest::Approx(4.0 * std::tanh(1.0)).epsilon(1e-9));
}

TEST_CASE("regularity falls back to central differences without dphi") {
    GridMap map = GridMap::exp_ramp(2.0);
    map.dphi = nullptr;
    // One-sided differences at the endpoints limit the fallback to O(1/sampling).
    CHECK(regularity(map, 4096).value == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("poly stretch is flagged singular") {
    const GridMap poly = GridMap::poly_stretch(2.0);
    CHECK_FALSE(poly.bounded_log_derivative);
    // phi(0) = 0, so the sampled estimate must refuse.
    CHECK_THROWS_AS((void)regularity(poly), std::domain_error);
    // The realized grid itself is still a valid monotone partition.
    const Grid g = build_grid(poly, 16);
    CHECK(g.t.back() == 1.0);
    for (double h : g.h) CHECK(h > 0.0);
    CHECK(GridMap::poly_stretch(1.0).bounded_log_derivative);
}

TEST_CASE("increment model accuracy across smooth families") {
    for (const auto& map : {GridMap::exp_ramp(1.0), GridMap::exp_ramp(2.0), GridMap::sigmoid(4.0)}) {
        const double reg = regularity(map).value;
        for (int N : {100, 400}) {
            const Grid g = build_grid(map, N);
            CHECK(g.max_abs_increment() <= reg / N * (1.0 + 10.0 / N));
        }
    }
}

TEST_CASE("ratio-of-ratios deviation decays at second order") {
    const GridMap sig = GridMap::sigmoid(4.0);
    double prev = 0.0;
    for (int N : {100, 200, 400}) {
        const double dev = build_grid(sig, N).max_ratio_of_ratios_deviation();
        if (prev > 0.0) CHECK(prev / dev >= 3.5);
        prev = dev;
    }
    // Exp-ramp grids have exactly constant ratios.
    CHECK(build_grid(GridMap::exp_ramp(2.0), 100).max_ratio_of_ratios_deviation() <= 1e-13);
}

TEST_CASE("constant ratio grid") {
    const Grid g = constant_ratio_grid(50, 1.25);
    for (double r : g.r) CHECK(r == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(g.t.back() == 1.0);
    CHECK_THROWS_AS((void)constant_ratio_grid(10, 0.0), std::invalid_argument);
}

TEST_CASE("grid spec parsing") {
    CHECK(GridSpec::parse("exp:c=2").realize(10).r[0] == doctest::Approx(std::exp(0.2)));
    CHECK(GridSpec::parse("geo:r=2").realize(10).r[0] == doctest::Approx(2.0));
    CHECK_THROWS_AS((void)GridSpec::parse("spline:k=3"), std::invalid_argument);
    CHECK_THROWS_AS((void)GridSpec::parse("exp:q=2"), std::invalid_argument);
    CHECK_THROWS_AS((void)GridMap::parse("geo:r=2"), std::invalid_argument);
}

TEST_CASE("non-monotone map is rejected") {
    GridMap bad;
    bad.name = "fold";
    bad.Phi = [](double tau) { return tau * (1.5 - tau) / 0.5; };
    bad.phi = [](double) { return 1.0; };  // lie about the derivative
    CHECK_THROWS(build_grid(bad, 8));
}

TEST_CASE("controller: constant error model settles at unit ratio") {
    ControllerConfig cfg;
    cfg.epsilon = 1e-4;
    cfg.p = 2;
    const Grid g = controller_grid(cfg, [](double) { return 1.0; });
    REQUIRE(g.steps() >= 10);
    for (std::size_t n = 0; n + 2 < g.r.size(); ++n)  // last ratio is the clipped step
        CHECK(g.r[n] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("controller: deadbeat filter tracks the error modulation") {
    // ||y^{(p+1)}(t)|| = e^{-pt} with p=2 gives mu(t) ~ e^t: the log-step
    // slope against t should be 1.
    ControllerConfig cfg;
    cfg.epsilon = 1e-5;
    cfg.p = 2;
    cfg.b1 = 1.0;
    cfg.b2 = 0.0;
    cfg.a1 = 0.0;
    const Grid g = controller_grid(cfg, [](double t) { return std::exp(-2.0 * t); });
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t n = 0; n + 1 < g.h.size(); ++n) {
        const double t = g.t[n];
        if (t < 0.1 || t > 0.9) continue;
        sx += t;
        sy += std::log(g.h[n]);
        sxx += t * t;
        sxy += t * std::log(g.h[n]);
        ++m;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("controller: halving the tolerance scales N by 2^(1/p)") {
    for (int p : {1, 2, 3}) {
        ControllerConfig cfg;
        cfg.p = p;
        cfg.epsilon = 1e-6;
        auto model = [](double t) { return 1.0 + 0.5 * std::sin(3.0 * t); };
        const int n1 = controller_grid(cfg, model).steps();
        cfg.epsilon /= 2.0;
        const int n2 = controller_grid(cfg, model).steps();
        CHECK(static_cast<double>(n2) / n1 ==
              doctest::Approx(std::pow(2.0, 1.0 / p)).epsilon(0.10));
    }
}

TEST_CASE("controller: tighter tolerance lowers the increments") {
    ControllerConfig cfg;
    cfg.p = 2;
    cfg.epsilon = 1e-4;
    auto model = [](double t) { return std::exp(-2.0 * t); };
    const double v1 = controller_grid(cfg, model).max_abs_increment();
    cfg.epsilon = 1e-6;
    const double v2 = controller_grid(cfg, model).max_abs_increment();
    CHECK(v2 < v1);
}

TEST_CASE("controller rejects unusable inputs") {
    ControllerConfig cfg;
    CHECK_THROWS_AS((void)controller_grid(cfg, [](double) { return -1.0; }), std::domain_error);
    cfg.epsilon = -1.0;
    CHECK_THROWS_AS((void)controller_grid(cfg, [](double) { return 1.0; }), std::invalid_argument);
}

TEST_CASE("grid serialization") {
    const Grid g = build_grid(GridMap::identity(), 3);
    std::ostringstream csv;
    g.write_csv(csv);
    const std::string text = csv.str();
    CHECK(text.rfind("n,t,h,r,v\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    const std::string json = g.to_json();
    CHECK(json.find("\"schema\":1") != std::string::npos);
    CHECK(json.find("\"n\":3") != std::string::npos);
}

TEST_CASE("model steps approximate realized steps at second order") {
    const GridMap map = GridMap::exp_ramp(2.0);
    const int N = 200;
    const Grid g = build_grid(map, N);
    const auto model = model_steps(map, N);
    for (std::size_t n = 0; n < g.h.size(); ++n)
        CHECK(g.h[n] == doctest::Approx(model[n]).epsilon(1e-4));
}
