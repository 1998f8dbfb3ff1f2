#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <complex>

#include "dnoise/errors.hpp"
#include "dnoise/kernels.hpp"

using namespace dnoise;

namespace {
const Domain iv = Domain::interval(0.0, 1.0);
const Domain hl = Domain::half_line();
const Domain hs = Domain::half_space(1);
const Domain ball = Domain::unit_ball(2);
const KernelConfig cfg;
}  // namespace

TEST_CASE("interval heat kernel reference values") {
    CHECK(heat_kernel(iv, cfg, 0.1, {0.3}, {0.5}) ==
          doctest::Approx(0.60296818234553583).epsilon(1e-12));
    CHECK(heat_kernel(iv, cfg, 0.001, {0.5}, {0.52}) ==
          doctest::Approx(8.0717112935768093).epsilon(1e-12));
}

TEST_CASE("interval image and eigenseries routes agree across the switch") {
    for (double t : {0.04, 0.05, 0.06, 0.2})
        for (double x : {0.2, 0.5, 0.8}) {
            const double a = interval_heat_kernel_image(iv, t, {x}, {0.4});
            const double b = interval_heat_kernel_eigen(iv, 64, t, {x}, {0.4});
            CHECK(std::abs(a - b) < 1e-10);
        }
}

TEST_CASE("half-line kernel and its boundary derivative") {
    CHECK(heat_kernel(hl, cfg, 0.1, {0.5}, {1.7}) ==
          doctest::Approx(0.024369496649815487).epsilon(1e-12));
    CHECK(heat_kernel_normal_derivative(hl, cfg, 0.1, {0.7}, {0.0}) ==
          doctest::Approx(1.8343506910847776).epsilon(1e-12));
}

TEST_CASE("interval boundary derivative matches the sine series value") {
    CHECK(heat_kernel_normal_derivative(iv, cfg, 0.1, {0.3}, {0.0}) ==
          doctest::Approx(2.1259726233505488).epsilon(1e-10));
    // the kernel is odd across the boundary, so the one-sided difference
    // quotient is second-order accurate
    const double h = 1e-6;
    const double fd = heat_kernel(iv, cfg, 0.1, {0.3}, {h}) / h;
    CHECK(fd == doctest::Approx(heat_kernel_normal_derivative(iv, cfg, 0.1, {0.3}, {0.0}))
                    .epsilon(1e-6));
}

TEST_CASE("half-space derivative carries the printed sign") {
    const double v = heat_kernel_normal_derivative(hs, cfg, 0.1, {0.5, 0.2}, {0.0, -0.1});
    CHECK(v < 0.0);
    const double expected =
        -0.5 / 0.1 / (4.0 * M_PI * 0.1) * std::exp(-(0.25 + 0.09) / 0.4);
    CHECK(v == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("disk eigenseries reference values") {
    CHECK(heat_kernel(ball, cfg, 0.05, {0.3, 0.2}, {-0.5, 0.1}) ==
          doctest::Approx(0.061710211847577891).epsilon(1e-10));
    CHECK(heat_kernel(ball, cfg, 0.1, {0.3, 0.2}, {-0.4, 0.1}) ==
          doctest::Approx(0.2272296323117288).epsilon(1e-10));
    CHECK(heat_kernel_normal_derivative(ball, cfg, 0.05, {0.3, 0.2},
                                        {std::cos(0.3), std::sin(0.3)}) ==
          doctest::Approx(2.1535271248950298).epsilon(1e-9));
    CHECK_THROWS_AS(heat_kernel(ball, cfg, 1e-4, {0.3, 0.2}, {-0.5, 0.1}),
                    std::invalid_argument);
}

TEST_CASE("disk heat mass series") {
    CHECK(disk_heat_mass(0.1, 0.4) == doctest::Approx(0.69679683265191061).epsilon(1e-12));
    for (double t : {0.01, 0.1, 1.0})
        for (double r : {0.0, 0.5, 0.9}) CHECK(disk_heat_mass(t, r) <= 1.0 + 1e-10);
    const auto z0 = disk_bessel_zeros(0, 10.0);
    REQUIRE(z0.size() >= 3);
    CHECK(z0[0] == doctest::Approx(2.404825557695773).epsilon(1e-12));
    const auto z1 = disk_bessel_zeros(1, 10.0);
    CHECK(z1[0] == doctest::Approx(3.8317059702075125).epsilon(1e-12));
}

TEST_CASE("resolvent closed forms") {
    KernelConfig c1;
    c1.lambda = 1.0;
    CHECK(green_kernel(hl, c1, {1.0}, {2.0}) ==
          doctest::Approx(0.15904618640178919).epsilon(1e-13));
    CHECK(green_kernel(iv, c1, {0.3}, {0.7}) ==
          doctest::Approx(0.078907858180103854).epsilon(1e-13));
    CHECK(green_kernel(iv, cfg, {0.3}, {0.7}) == doctest::Approx(0.09).epsilon(1e-13));
    CHECK(green_kernel(ball, cfg, {0.2, 0.1}, {-0.3, 0.2}) ==
          doctest::Approx(0.1137985829454133).epsilon(1e-12));
    CHECK(green_normal_derivative(hl, c1, {1.0}, {0.0}) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
    CHECK(green_normal_derivative(ball, cfg, {0.3, 0.2}, {std::cos(1.0), std::sin(1.0)}) ==
          doctest::Approx(0.29508926286911635).epsilon(1e-12));
    // ball at the center: the boundary kernel is the constant 1/(2 pi)
    CHECK(green_normal_derivative(ball, cfg, {0.0, 0.0}, {1.0, 0.0}) ==
          doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-12));
    CHECK_THROWS_AS(green_kernel(hl, cfg, {1.0}, {2.0}), ConfigError);
}

TEST_CASE("resolvent quadrature route agrees with the closed forms") {
    KernelConfig c1;
    c1.lambda = 1.0;
    CHECK(green_kernel_quadrature(iv, c1, {0.3}, {0.7}) ==
          doctest::Approx(green_kernel(iv, c1, {0.3}, {0.7})).epsilon(1e-9));
    CHECK(green_normal_derivative_quadrature(hl, c1, {0.8}, {0.0}) ==
          doctest::Approx(green_normal_derivative(hl, c1, {0.8}, {0.0})).epsilon(1e-9));
}

TEST_CASE("half-space fourier derivative, m = 1") {
    const Point x = {0.5, 0.2};
    const auto v = halfspace_fourier_normal_derivative(1, 0.1, x, {0.7},
                                                       FourierVariant::as_printed);
    CHECK(std::abs(v) == doctest::Approx(2.2732677537485355).epsilon(1e-12));
    CHECK(v.real() == doctest::Approx(-2.25102609343617).epsilon(1e-12));
    CHECK(fourier_variant_discrepancy(1, 0.1, x, {0.4, 0.9}) < 1e-14);
    CHECK(fourier_variant_discrepancy(2, 0.1, {0.3, 0.0, 0.0}, {0.8}) > 1e-4);
}

TEST_CASE("gaussian envelope fit smoke") {
    ProbeSet probes;
    probes.t = {0.01, 0.1, 1.0};
    for (double v : {0.25, 0.5, 0.75}) {
        probes.x.push_back({v});
        probes.y.push_back({v});
    }
    DerivOrder order;
    const GaussianBoundFit fit = check_gaussian_bound(iv, cfg, order, probes);
    CHECK(fit.success);
    CHECK(fit.k1 > 0.0);
    CHECK(fit.k2 > 0.0);
}
