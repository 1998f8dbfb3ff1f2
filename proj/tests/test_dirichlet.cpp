#include <doctest.h>

#include <cmath>

#include "dnoise/dirichlet.hpp"

using namespace dnoise;

TEST_CASE("interval map is the affine interpolant at lambda zero") {
    const Domain dom = Domain::interval(0.0, 1.0);
    const KernelConfig cfg;
    const BoundaryData gamma = TwoPointData{1.0, 3.0};
    CHECK(dirichlet_map(dom, cfg, gamma, {0.5}) == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 1; i <= 9; ++i) {
        const double x = i / 10.0;
        CHECK(dirichlet_map(dom, cfg, gamma, {x}) ==
              doctest::Approx(1.0 + 2.0 * x).epsilon(1e-14));
    }
}

TEST_CASE("half-line map decays exponentially") {
    const Domain dom = Domain::half_line();
    KernelConfig cfg;
    cfg.lambda = 1.0;
    const BoundaryData gamma = ScalarData{2.0};
    CHECK(dirichlet_map(dom, cfg, gamma, {1.0}) ==
          doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
    for (int i = 1; i <= 10; ++i) {
        const double x = 0.3 * i;
        CHECK(dirichlet_map(dom, cfg, gamma, {x}) ==
              doctest::Approx(2.0 * std::exp(-x)).epsilon(1e-13));
    }
}

TEST_CASE("closed maps agree with the quadrature pairing") {
    const Domain iv = Domain::interval(0.0, 1.0);
    KernelConfig c1;
    c1.lambda = 1.0;
    const BoundaryData g2 = TwoPointData{0.5, -1.0};
    CHECK(dirichlet_map_quadrature(iv, c1, g2, {0.4}) ==
          doctest::Approx(dirichlet_map(iv, c1, g2, {0.4})).epsilon(1e-6));
    const Domain hl = Domain::half_line();
    const BoundaryData g3 = ScalarData{1.5};
    CHECK(dirichlet_map_quadrature(hl, c1, g3, {0.7}) ==
          doctest::Approx(dirichlet_map(hl, c1, g3, {0.7})).epsilon(1e-6));
}

TEST_CASE("ball constant data extends to the constant") {
    const Domain dom = Domain::unit_ball(2);
    const KernelConfig cfg;
    SampledData gamma;
    gamma.quad = dom.boundary_quadrature(512);
    gamma.values.assign(gamma.quad.nodes.size(), 1.0);
    for (const Point& x : {Point{0.0, 0.0}, Point{0.5, 0.2}, Point{-0.7, 0.1}})
        CHECK(dirichlet_map(dom, cfg, BoundaryData{gamma}, x) ==
              doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("weak residual vanishes for harmonic extensions") {
    const KernelConfig cfg;
    const Domain iv = Domain::interval(0.0, 1.0);
    const auto psis = test_functions(iv);
    REQUIRE(psis.size() == 5);
    for (const auto& psi : psis)
        CHECK(weak_residual(iv, cfg, TwoPointData{1.0, 3.0}, psi) < 1e-6);

    const Domain ball = Domain::unit_ball(2);
    SampledData gamma;
    gamma.quad = ball.boundary_quadrature(512);
    gamma.values.assign(gamma.quad.nodes.size(), 1.0);
    const auto bpsis = test_functions(ball);
    REQUIRE(bpsis.size() == 5);
    for (const auto& psi : bpsis) CHECK(weak_residual(ball, cfg, gamma, psi) < 1e-6);
}

TEST_CASE("distributional laplacian identities") {
    {
        const auto phi = default_phi(LaplacianCase::interval_psi1);
        const auto pc = distributional_laplacian_check(LaplacianCase::interval_psi1, phi);
        CHECK(pc.lhs == doctest::Approx(-2.0 * M_PI).epsilon(1e-9));
        CHECK(std::abs(pc.lhs - pc.rhs) < 1e-8);
    }
    {
        const auto phi = default_phi(LaplacianCase::interval_psi2);
        const auto pc = distributional_laplacian_check(LaplacianCase::interval_psi2, phi);
        CHECK(pc.lhs == doctest::Approx(-M_PI).epsilon(1e-9));
        CHECK(std::abs(pc.lhs - pc.rhs) < 1e-8);
    }
    {
        const auto phi = default_phi(LaplacianCase::halfline_exp);
        const auto pc = distributional_laplacian_check(LaplacianCase::halfline_exp, phi);
        CHECK(pc.lhs == doctest::Approx(1.25).epsilon(1e-9));
        CHECK(std::abs(pc.lhs - pc.rhs) < 1e-8);
    }
}
