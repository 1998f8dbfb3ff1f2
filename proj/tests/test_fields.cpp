#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dnoise/errors.hpp"
#include "dnoise/fields.hpp"
#include "dnoise/rng.hpp"

using namespace dnoise;

namespace {
const Domain iv = Domain::interval(0.0, 1.0);
const Domain ball = Domain::unit_ball(2);
const KernelConfig kc;

CylFractionalSpec one_endpoint_bm() {
    CylFractionalSpec s;
    s.nu.nodes = {{0.0}};
    s.nu.weights = {1.0};
    s.basis = BasisKind::node_indicator;
    s.truncation = 1;
    s.hurst = 0.5;
    return s;
}

CylFractionalSpec two_endpoint_bm() {
    CylFractionalSpec s;
    s.nu = iv.boundary_quadrature(2);
    s.basis = BasisKind::node_indicator;
    s.truncation = 2;
    s.hurst = 0.5;
    return s;
}
}  // namespace

TEST_CASE("elliptic white variance on the interval is the affine energy") {
    WhiteNoiseSpec w;
    w.nu = iv.boundary_quadrature(2);
    w.basis = BasisKind::node_indicator;
    w.truncation = 2;
    for (double x : {0.1, 0.3, 0.5, 0.8})
        CHECK(analytic_variance_elliptic(iv, kc, w, {x}) ==
              doctest::Approx((1 - x) * (1 - x) + x * x).epsilon(1e-13));
}

TEST_CASE("elliptic white variance on the disk matches the closed series") {
    WhiteNoiseSpec w;
    w.nu = ball.boundary_quadrature(2048);
    w.basis = BasisKind::automatic;
    w.truncation = 601;
    const double r = 0.5;
    CHECK(analytic_variance_elliptic(ball, kc, w, {r, 0.0}) ==
          doctest::Approx(0.26525823848649223).epsilon(1e-10));
}

TEST_CASE("elliptic coefficients reproduce the variance through the basis") {
    WhiteNoiseSpec w;
    w.nu = ball.boundary_quadrature(512);
    w.basis = BasisKind::automatic;
    w.truncation = 129;
    const auto c = elliptic_coefficients(ball, kc, w, {0.5, 0.0});
    REQUIRE(c.size() == 129);
    double acc = 0.0;
    for (double v : c) acc += v * v;
    // 129 fourier modes at r=0.5: the truncated tail is sum_{|n|>64} r^{2|n|}/pi
    CHECK(acc == doctest::Approx(analytic_variance_elliptic(ball, kc, w, {0.5, 0.0}))
                     .epsilon(1e-10));
}

TEST_CASE("homogeneous elliptic variance is the spectral sum") {
    HomogeneousSpec h;
    h.boundary_dim = 1;
    h.atoms = {{{0.0}, 0.5},  {{0.4}, 0.35}, {{-0.4}, 0.35}, {{1.8}, 0.25},
               {{-1.8}, 0.25}, {{4.0}, 0.15}, {{-4.0}, 0.15}};
    KernelConfig c1;
    c1.lambda = 1.0;
    const Domain hs = Domain::half_space(1);
    CHECK(analytic_variance_elliptic(hs, c1, h, {0.5, 0.0}) ==
          doctest::Approx(0.49100389891441225).epsilon(1e-12));
}

TEST_CASE("signed-series elliptic variance squares the measure pairing") {
    SignedSeriesSpec s;
    s.measures = {{{{1.0, 0.0}}, {1.0}}};
    const Point x = {0.5, 0.0};
    const double f = green_normal_derivative(ball, kc, x, {1.0, 0.0});
    CHECK(analytic_variance_elliptic(ball, kc, s, x) == doctest::Approx(f * f).epsilon(1e-13));
}

TEST_CASE("parabolic variance reference values") {
    CHECK(analytic_variance_parabolic(iv, kc, one_endpoint_bm(), 0.1, {0.25}) ==
          doctest::Approx(4.8900858575353818).epsilon(1e-8));
    CHECK(analytic_variance_parabolic(iv, kc, one_endpoint_bm(), 0.1, {0.5}) ==
          doctest::Approx(0.81652163844552596).epsilon(1e-8));
    CHECK(analytic_variance_parabolic(iv, kc, two_endpoint_bm(), 0.1, {0.3}) ==
          doctest::Approx(3.4495151031301345).epsilon(1e-8));
    // a point mass at y=0 is the same integral
    SignedSeriesSpec s;
    s.measures = {{{{0.0}}, {1.0}}};
    s.hurst = 0.5;
    CHECK(analytic_variance_parabolic(iv, kc, s, 0.1, {0.25}) ==
          doctest::Approx(4.8900858575353818).epsilon(1e-8));
}

TEST_CASE("variance formulas reject unsupported families") {
    WhiteNoiseSpec w;
    w.nu = iv.boundary_quadrature(2);
    w.basis = BasisKind::node_indicator;
    w.truncation = 2;
    CHECK_THROWS_AS(analytic_variance_parabolic(iv, kc, w, 0.1, {0.3}), ConfigError);
    CylFractionalSpec frac = two_endpoint_bm();
    frac.hurst = 0.75;
    CHECK_THROWS_AS(analytic_variance_parabolic(iv, kc, frac, 0.1, {0.3}), ConfigError);
    PoissonSpec p;
    p.intensity.nodes = {{1.0, 0.0}};
    p.intensity.weights = {1.0};
    CHECK_THROWS_AS(analytic_variance_elliptic(ball, kc, p, {0.5, 0.0}), ConfigError);
}

TEST_CASE("campbell formula for the compound poisson family") {
    PoissonSpec p;
    p.intensity.nodes = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}};
    p.intensity.weights = {0.8, 0.5, 0.4};
    p.mark = MarkSpec{MarkSpec::Kind::constant, 0.7, 0.0, 0.0};
    const Point x = {0.5, 0.0};
    CHECK(campbell_second_moment(ball, kc, p, x) ==
          doctest::Approx(0.19179058706884877).epsilon(1e-12));
    CHECK(levy_moment_bound(ball, kc, p, x) >= campbell_second_moment(ball, kc, p, x));

    // monte carlo second moment stays under the dominating bound
    const double bound = levy_moment_bound(ball, kc, p, x);
    double acc = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto draw = sample_poisson_boundary(p, split_seed(17, i));
        const double u = elliptic_field(ball, kc, p, draw, x);
        acc += u * u;
    }
    CHECK(acc / n <= bound);
    CHECK(acc / n == doctest::Approx(0.19179058706884877).epsilon(0.15));
}

TEST_CASE("convolution grid resolves the kernel singularity at s = t") {
    const TimeGrid g = convolution_grid(0.1, 64, GridScheme::log_spaced);
    REQUIRE(g.nodes.size() == 64);
    CHECK(g.nodes.back() == doctest::Approx(0.1).epsilon(1e-14));
    // geometric in tau = t - s
    const double tau1 = 0.1 - g.nodes[61];
    const double tau2 = 0.1 - g.nodes[62];
    CHECK(tau1 / tau2 == doctest::Approx((0.1 - g.nodes[60]) / tau1).epsilon(1e-10));
}

TEST_CASE("step rules enforce their hurst ranges") {
    const TimeGrid g = convolution_grid(0.1, 16, GridScheme::log_spaced);
    CylFractionalSpec frac = one_endpoint_bm();
    frac.hurst = 0.75;
    CHECK_THROWS_AS(make_convolution_plan(iv, kc, frac, 0.1, {0.3}, g, StepRule::ito_midpoint),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        make_convolution_plan(iv, kc, one_endpoint_bm(), 0.1, {0.3}, g, StepRule::young_midpoint),
        std::invalid_argument);
    const auto plan =
        make_convolution_plan(iv, kc, one_endpoint_bm(), 0.1, {0.3}, g, StepRule::ito_midpoint);
    CHECK(plan.channels == 1);
    CHECK(plan.kernel_cache.rows() == 16);
}

TEST_CASE("mild solution is the plan-cache increment sum plus the semigroup term") {
    const CylFractionalSpec spec = one_endpoint_bm();
    const TimeGrid g = convolution_grid(0.1, 32, GridScheme::log_spaced);
    const auto plan = make_convolution_plan(iv, kc, spec, 0.1, {0.3}, g, StepRule::ito_left_point);
    NoiseRealization xi = sample_fbm_paths(0.5, g, 1, 77);
    const double got = mild_solution(iv, kc, spec, xi, nullptr, 0.1, {0.3}, &plan);
    double manual = 0.0, prev = 0.0;
    for (int j = 0; j < 32; ++j) {
        manual += plan.kernel_cache(j, 0) * (xi.paths(0, j) - prev);
        prev = xi.paths(0, j);
    }
    CHECK(got == doctest::Approx(manual).epsilon(1e-13));
}

TEST_CASE("deterministic initial data evolves by the eigenfunction decay") {
    const auto u0 = [](const Point& y) { return std::sin(M_PI * y[0]); };
    CHECK(heat_semigroup(iv, kc, 0.1, {0.3}, u0) ==
          doctest::Approx(0.30152697556919059).epsilon(1e-10));
    const CylFractionalSpec spec = two_endpoint_bm();
    const TimeGrid g = convolution_grid(0.1, 16, GridScheme::log_spaced);
    const auto plan = make_convolution_plan(iv, kc, spec, 0.1, {0.3}, g, StepRule::ito_left_point);
    NoiseRealization quiet;
    quiet.paths = Eigen::MatrixXd::Zero(2, 16);
    const std::function<double(const Point&)> u0f = u0;
    CHECK(mild_solution(iv, kc, spec, quiet, &u0f, 0.1, {0.3}, &plan) ==
          doctest::Approx(0.30152697556919059).epsilon(1e-10));
}

TEST_CASE("poisson mild solution sums kernel hits of the point measure") {
    PoissonSpec p;
    p.intensity.nodes = {{1.0, 0.0}, {0.0, 1.0}};
    p.intensity.weights = {0.8, 0.5};
    p.mark = MarkSpec{MarkSpec::Kind::constant, 0.7, 0.0, 0.0};
    NoiseRealization xi;
    xi.points = {{0.03, {1.0, 0.0}, 0.7}, {0.08, {0.0, 1.0}, 0.7}, {0.2, {1.0, 0.0}, 0.7}};
    const Point x = {0.4, 0.1};
    const double got = mild_solution(ball, kc, p, xi, nullptr, 0.1, x, nullptr);
    double manual = 0.0;
    for (const auto& pt : xi.points)
        if (pt.time < 0.1)
            manual += heat_kernel_normal_derivative(ball, kc, 0.1 - pt.time, x, pt.location) *
                      pt.mark;
    CHECK(got == doctest::Approx(manual).epsilon(1e-13));
}

TEST_CASE("fixed-time pairing with a realization snapshot") {
    const CylFractionalSpec spec = one_endpoint_bm();
    NoiseRealization unit;
    unit.coefficients = {1.0};
    CHECK(parabolic_field_v(iv, kc, spec, unit, 0.1, {0.3}) ==
          doctest::Approx(heat_kernel_normal_derivative(iv, kc, 0.1, {0.3}, {0.0}))
              .epsilon(1e-12));
    CHECK_THROWS_AS(parabolic_field_v(iv, kc, spec, unit, 0.0, {0.3}), std::domain_error);
}

TEST_CASE("fractional integral closed forms") {
    const double alpha = 0.3;
    CHECK(young_i_alpha([](double) { return 1.0; }, 1.0, alpha) ==
          doctest::Approx(1.0 / 0.7).epsilon(1e-9));
    CHECK(young_i_alpha([](double r) { return r; }, 1.0, alpha) ==
          doctest::Approx(0.84033613445378151).epsilon(1e-5));
}

TEST_CASE("holder functional of a linear path") {
    const TimeGrid g = TimeGrid::uniform(1.0, 256);
    std::vector<double> path(g.nodes.begin(), g.nodes.end());
    CHECK(young_lambda_alpha(g, path, 0.3) ==
          doctest::Approx(0.85839369133413978).epsilon(1e-9));
    const auto yb = young_bound([](double) { return 1.0; }, g, path, 0.3);
    CHECK(yb.integral_bound == doctest::Approx(yb.lambda_alpha * yb.i_alpha).epsilon(1e-13));
    // midpoint sum of f = 1 telescopes to the endpoint value
    CHECK(path_integral_midpoint([](double) { return 1.0; }, g, path) ==
          doctest::Approx(1.0).epsilon(1e-13));
}
