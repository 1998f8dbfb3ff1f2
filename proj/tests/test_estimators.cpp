#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "dnoise/estimators.hpp"

using namespace dnoise;

TEST_CASE("monte carlo second moment of a standard normal") {
    const auto sampler = [](Rng& rng) { return rng.normal(); };
    const auto est = mc_second_moment(sampler, 65536, 42, 1);
    CHECK(est.n == 65536);
    CHECK(std::abs(est.second_moment - 1.0) <= 4 * est.std_error);
    CHECK(est.std_error < 0.02);
}

TEST_CASE("worker count does not change the estimate") {
    const auto sampler = [](Rng& rng) { return rng.normal() + 0.1 * rng.uniform(); };
    const auto a = mc_second_moment(sampler, 10000, 7, 1);
    const auto b = mc_second_moment(sampler, 10000, 7, 3);
    CHECK(a.second_moment == b.second_moment);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("non-finite samples abort the estimate") {
    const auto sampler = [](Rng&) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_WITH_AS(mc_second_moment(sampler, 100, 1, 1),
                         doctest::Contains("non-finite"), std::runtime_error);
}

TEST_CASE("power-law fit recovers a clean exponent") {
    const std::vector<double> d = {0.5, 0.2, 0.1, 0.05, 0.02};
    std::vector<double> v;
    for (double x : d) v.push_back(3.0 / (x * x));
    const auto rep = fit_blowup(d, v);
    CHECK(rep.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(rep.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::exp(rep.intercept) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("log-square fit recovers the coefficient") {
    const std::vector<double> d = {0.5, 0.2, 0.1, 0.05, 0.02};
    std::vector<double> v;
    for (double x : d) {
        const double l = 1.0 + std::log(1.0 / x);
        v.push_back(3.0 * l * l);
    }
    const auto rep = fit_blowup(d, v, true);
    CHECK(rep.log_square_mode);
    CHECK(rep.log_square_coeff == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("fit rejects unusable grids") {
    CHECK_THROWS_AS(fit_blowup({0.5, 0.2, 0.1}, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_blowup({0.1, 0.2, 0.5, 0.7}, {1.0, 2.0, 3.0, 4.0}),
                    std::invalid_argument);
    // nonpositive values drop; fewer than 4 survivors is an error
    CHECK_THROWS_AS(fit_blowup({0.5, 0.2, 0.1, 0.05}, {1.0, -1.0, 2.0, 3.0}),
                    std::invalid_argument);
    const auto rep = fit_blowup({0.5, 0.2, 0.1, 0.05, 0.02}, {1.0, -1.0, 4.0, 9.0, 16.0});
    CHECK(rep.excluded == 1);
    CHECK(rep.distances.size() == 4);
}

TEST_CASE("bound check accepts stable ratios and flags drift") {
    const std::vector<double> d = {0.5, 0.2, 0.1, 0.05, 0.02};
    std::vector<double> rhs;
    for (double x : d) rhs.push_back(1.0 / (x * x));

    std::vector<double> stable;
    for (double x : d) stable.push_back(0.7 / (x * x));
    auto rep = check_bound(d, stable, rhs, "synthetic");
    CHECK(rep.bound_stable);
    CHECK(rep.bound_constant == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(rep.bound_id == "synthetic");
    REQUIRE(rep.ratios.size() == 5);
    CHECK(rep.ratios[3] == doctest::Approx(0.7).epsilon(1e-12));

    // ratio decaying toward the boundary still satisfies the bound
    std::vector<double> decaying;
    for (double x : d) decaying.push_back(0.7 * std::sqrt(x) / (x * x));
    CHECK(check_bound(d, decaying, rhs, "synthetic").bound_stable);

    // growth above 25% over the last three probes means the constant escapes
    std::vector<double> drifting;
    for (double x : d) drifting.push_back(0.7 / (x * x * std::sqrt(x)));
    CHECK_FALSE(check_bound(d, drifting, rhs, "synthetic").bound_stable);
}

TEST_CASE("heat tail bound closed form against quadrature") {
    const auto rep = check_heat_tail_bound(2, 3.0, 1.0, {0.8});
    CHECK(rep.ok);
    CHECK(rep.limit == doctest::Approx(36.0).epsilon(1e-14));
    CHECK(rep.worst_quad_error <= 1e-10);
    // int_0^1 s^-3 e^{-0.32/s} ds * 0.8^4
    CHECK(rep.max_scaled == doctest::Approx(35.809197221828896).epsilon(1e-10));
}

TEST_CASE("blow-up coverage lock enumerates every statement once") {
    const auto& lock = bound_coverage_lock();
    CHECK(lock.size() == 10);
    std::set<std::string> ids;
    bool fractional_is_pathwise = false;
    for (const auto& row : lock) {
        ids.insert(row.bound_id);
        if (row.bound_id == "fractional-young-interval")
            fractional_is_pathwise = row.check == CheckKind::pathwise_inequality;
    }
    CHECK(ids.size() == lock.size());
    CHECK(ids.count("elliptic-white-ball") == 1);
    CHECK(ids.count("parabolic-white-interval") == 1);
    CHECK(fractional_is_pathwise);
}
