#include <doctest.h>

#include <cmath>

#include "dnoise/noise.hpp"
#include "dnoise/rng.hpp"

using namespace dnoise;

TEST_CASE("fbm covariance matrix") {
    TimeGrid g;
    g.nodes = {1.0, 2.0};
    const auto R = fbm_covariance(0.75, g);
    CHECK(R(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(R(0, 1) == doctest::Approx(1.414213562373095).epsilon(1e-14));
    CHECK(R(1, 0) == R(0, 1));
}

TEST_CASE("fbm sampler hits the covariance within monte carlo error") {
    TimeGrid g;
    g.nodes = {1.0, 2.0, 3.0, 4.0};
    const FbmSampler s(0.75, g);
    CHECK(s.jitter() <= 1e-12);
    const int n = 20000;
    double m_c = 0.0, m2_c = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto p = s.draw(1, split_seed(42, i));
        const double v = (p(0, 1) - p(0, 0)) * (p(0, 3) - p(0, 2));
        m_c += v;
        m2_c += v * v;
    }
    m_c /= n;
    m2_c /= n;
    const double se = std::sqrt((m2_c - m_c * m_c) / n);
    // increments over [1,2] and [3,4]: long-range dependence keeps this positive
    CHECK(std::abs(m_c - 0.26964908660712584) < 4.0 * se);
    CHECK(m_c > 0.0);
}

TEST_CASE("hurst one-half short-circuits to independent increments") {
    TimeGrid g;
    g.nodes = {0.5, 1.0, 1.5};
    const FbmSampler s(0.5, g);
    const auto a = s.draw(2, 7);
    const auto b = s.draw(2, 7);
    CHECK((a - b).norm() == 0.0);
    const int n = 20000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto p = s.draw(1, split_seed(9, i));
        acc += p(0, 0) * p(0, 0);
    }
    CHECK(acc / n == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("white noise sample variance near one") {
    WhiteNoiseSpec spec;
    spec.nu = Domain::interval(0.0, 1.0).boundary_quadrature(2);
    spec.basis = BasisKind::node_indicator;
    spec.truncation = 2;
    const int n = 100000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto r = sample_elliptic_white(spec, split_seed(3, i));
        REQUIRE(r.coefficients.size() == 2);
        acc += r.coefficients[0] * r.coefficients[0];
    }
    CHECK(acc / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("poisson draw count matches its intensity") {
    PoissonSpec spec;
    spec.intensity.nodes = {{1.0, 0.0}, {0.0, 1.0}};
    spec.intensity.weights = {1.2, 0.8};
    CHECK(spec.total_mass() == doctest::Approx(2.0));
    const int n = 100000;
    double count = 0.0;
    for (int i = 0; i < n; ++i)
        count += static_cast<double>(sample_poisson_measure(spec, 1.0, split_seed(5, i)).points.size());
    CHECK(count / n == doctest::Approx(2.0).epsilon(0.02));
    // marks and locations come from the intensity atoms
    const auto r = sample_poisson_measure(spec, 1.0, 99);
    for (const auto& p : r.points) {
        CHECK(p.time > 0.0);
        CHECK(p.time <= 1.0);
        CHECK((p.location == Point{1.0, 0.0} || p.location == Point{0.0, 1.0}));
    }
}

TEST_CASE("homogeneous channels split symmetric atoms") {
    HomogeneousSpec spec;
    spec.boundary_dim = 1;
    spec.atoms = {{{0.0}, 0.5}, {{0.4}, 0.35}, {{-0.4}, 0.35}};
    spec.validate();
    CHECK(spec.channel_count() == 3);  // one real origin channel + cos/sin pair
    const auto ch = homogeneous_channels(spec);
    REQUIRE(ch.size() == 3);
    // cos/sin pair channels first, origin channels after
    CHECK(ch[0].coeff == doctest::Approx(std::sqrt(2.0 * 0.35)));
    CHECK(ch[0].is_sin != ch[1].is_sin);
    CHECK(ch[2].coeff == doctest::Approx(std::sqrt(0.5)));
    HomogeneousSpec bad = spec;
    bad.atoms.pop_back();
    CHECK_THROWS(bad.validate());
}

TEST_CASE("basis families are orthonormal under their measures") {
    const Domain ball = Domain::unit_ball(2);
    BoundaryQuadrature nu = ball.boundary_quadrature(512);
    const BasisKind basis = resolve_basis(ball, BasisKind::automatic, nu);
    CHECK(basis == BasisKind::fourier_circle);
    for (int k = 0; k < 5; ++k)
        for (int l = 0; l <= k; ++l) {
            double acc = 0.0;
            for (std::size_t i = 0; i < nu.nodes.size(); ++i)
                acc += nu.weights[i] * basis_eval(basis, nu, k, nu.nodes[i]) *
                       basis_eval(basis, nu, l, nu.nodes[i]);
            CHECK(acc == doctest::Approx(k == l ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
        }

    const Domain iv = Domain::interval(0.0, 1.0);
    BoundaryQuadrature two = iv.boundary_quadrature(2);
    CHECK(basis_dimension(BasisKind::node_indicator, two) == 2);
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            double acc = 0.0;
            for (std::size_t i = 0; i < two.nodes.size(); ++i)
                acc += two.weights[i] * basis_eval(BasisKind::node_indicator, two, k, two.nodes[i]) *
                       basis_eval(BasisKind::node_indicator, two, l, two.nodes[i]);
            CHECK(acc == doctest::Approx(k == l ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
        }
}

TEST_CASE("signed series bookkeeping") {
    DiscreteSignedMeasure m;
    m.atoms = {{0.0}, {1.0}};
    m.weights = {0.6, -0.4};
    CHECK(m.total_variation() == doctest::Approx(1.0));
    SignedSeriesSpec s;
    s.measures = {m, m};
    CHECK(s.sum_variation_sq() == doctest::Approx(2.0));
    CHECK(noise_family_id(BoundaryNoiseSpec{s}) == "signed-series");
}
