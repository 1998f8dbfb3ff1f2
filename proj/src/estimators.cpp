#include "dnoise/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dnoise/quadrature.hpp"

namespace dnoise {

namespace {

constexpr int kBlocks = 256;

struct BlockSums {
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
};

}  // namespace

FieldEstimate mc_second_moment(const std::function<double(Rng&)>& sampler, std::size_t n,
                               std::uint64_t seed, int workers) {
    if (n < 100) throw std::invalid_argument("mc_second_moment: n >= 100 required");
    workers = std::clamp(workers, 1, kBlocks);

    std::vector<BlockSums> blocks(kBlocks);
    std::atomic<int> next{0};
    std::atomic<bool> bad{false};
    std::uint64_t bad_seed = 0;
    std::size_t bad_index = 0;
    std::mutex bad_mutex;

    auto run_block = [&](int b) {
        const std::size_t count = n / kBlocks + (static_cast<std::size_t>(b) < n % kBlocks ? 1 : 0);
        const std::uint64_t block_seed = split_seed(seed, static_cast<std::uint64_t>(b));
        Rng rng(block_seed);
        BlockSums acc;
        for (std::size_t i = 0; i < count; ++i) {
            const double x = sampler(rng);
            if (!std::isfinite(x)) {
                std::lock_guard<std::mutex> lock(bad_mutex);
                if (!bad.exchange(true)) {
                    bad_seed = block_seed;
                    bad_index = i;
                }
                return;
            }
            const double x2 = x * x;
            acc.s1 += x;
            acc.s2 += x2;
            acc.s4 += x2 * x2;
        }
        blocks[b] = acc;
    };

    auto worker_loop = [&] {
        for (;;) {
            const int b = next.fetch_add(1);
            if (b >= kBlocks || bad.load()) return;
            run_block(b);
        }
    };

    if (workers == 1) {
        worker_loop();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
        for (auto& th : pool) th.join();
    }

    if (bad.load()) {
        std::ostringstream msg;
        msg << "mc_second_moment: non-finite sample (block seed " << bad_seed << ", index "
            << bad_index << ")";
        throw std::runtime_error(msg.str());
    }

    BlockSums total;
    for (const BlockSums& b : blocks) {
        total.s1 += b.s1;
        total.s2 += b.s2;
        total.s4 += b.s4;
    }
    FieldEstimate est;
    est.n = n;
    est.mean = total.s1 / static_cast<double>(n);
    est.second_moment = total.s2 / static_cast<double>(n);
    const double m4 = total.s4 / static_cast<double>(n);
    est.std_error =
        std::sqrt(std::max(0.0, m4 - est.second_moment * est.second_moment) / static_cast<double>(n));
    return est;
}

RateReport fit_blowup(const std::vector<double>& distances, const std::vector<double>& values,
                      bool log_square_mode) {
    if (distances.size() != values.size())
        throw std::invalid_argument("fit_blowup: distances/values size mismatch");
    for (std::size_t i = 1; i < distances.size(); ++i)
        if (!(distances[i] < distances[i - 1]))
            throw std::invalid_argument("fit_blowup: distances must be strictly decreasing");

    RateReport rep;
    rep.log_square_mode = log_square_mode;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            std::cerr << "fit_blowup: dropping nonpositive value at dist " << distances[i] << "\n";
            ++rep.excluded;
            continue;
        }
        rep.distances.push_back(distances[i]);
        rep.values.push_back(values[i]);
    }
    if (rep.distances.size() < 4)
        throw std::invalid_argument("fit_blowup: fewer than 4 usable points");

    const std::size_t m = rep.distances.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double lx = std::log(rep.distances[i]);
        const double ly = std::log(rep.values[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = m * sxx - sx * sx;
    rep.slope = (m * sxy - sx * sy) / denom;
    rep.intercept = (sy - rep.slope * sx) / m;
    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / m;
    for (std::size_t i = 0; i < m; ++i) {
        const double lx = std::log(rep.distances[i]);
        const double ly = std::log(rep.values[i]);
        ss_res += (ly - rep.slope * lx - rep.intercept) * (ly - rep.slope * lx - rep.intercept);
        ss_tot += (ly - ymean) * (ly - ymean);
    }
    rep.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;

    if (log_square_mode) {
        double sb = 0, sbv = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double lg = std::max(0.0, std::log(1.0 / rep.distances[i]));
            const double b = (1.0 + lg) * (1.0 + lg);
            sb += b * b;
            sbv += b * rep.values[i];
        }
        rep.log_square_coeff = sbv / sb;
    }
    return rep;
}

RateReport check_bound(const std::vector<double>& distances, const std::vector<double>& values,
                       const std::vector<double>& bound_rhs, const std::string& bound_id,
                       bool log_square_mode) {
    if (bound_rhs.size() != distances.size())
        throw std::invalid_argument("check_bound: bound_rhs/distances size mismatch");
    RateReport rep = fit_blowup(distances, values, log_square_mode);
    rep.bound_id = bound_id;
    rep.ratios.resize(distances.size());
    rep.bound_constant = 0.0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (!(bound_rhs[i] > 0.0))
            throw std::invalid_argument("check_bound: bound rhs must be positive");
        rep.ratios[i] = values[i] / bound_rhs[i];
        rep.bound_constant = std::max(rep.bound_constant, rep.ratios[i]);
    }
    // distances are decreasing, so the last three probes sit closest to the
    // boundary; only a monotone >25% climb there flags divergence
    rep.bound_stable = std::isfinite(rep.bound_constant);
    if (distances.size() >= 3) {
        const std::size_t k = distances.size();
        const double ra = rep.ratios[k - 3], rb = rep.ratios[k - 2], rc = rep.ratios[k - 1];
        if (rc > rb && rb > ra && rc > 1.25 * ra) rep.bound_stable = false;
    }
    return rep;
}

HeatTailReport check_heat_tail_bound(int d, double k2, double t,
                                     const std::vector<double>& r_grid) {
    if (d < 1 || !(k2 > 0.0) || !(t > 0.0) || r_grid.empty())
        throw std::invalid_argument("check_heat_tail_bound: d >= 1, k2 > 0, t > 0, grid nonempty");
    HeatTailReport rep;
    double gamma_d = 1.0;
    for (int i = 2; i < d; ++i) gamma_d *= i;
    rep.limit = gamma_d * std::pow(2.0 * k2, d);

    const QuadRule& rule = gauss_legendre(16);
    for (double r : r_grid) {
        if (!(r > 0.0)) throw std::invalid_argument("check_heat_tail_bound: r > 0 required");
        const double z = r * r / (2.0 * k2 * t);
        const double closed = std::pow(2.0 * k2 / (r * r), d) * upper_gamma_int(d, z);

        const double lo = std::clamp(r * r / (2.0 * k2 * 42.0), t * 1e-10, t * 0.9);
        const int decades = std::max(1, (int)std::ceil(std::log10(t / lo)));
        const double quad = integrate_panels(
            [&](double s) { return std::pow(s, -d - 1) * std::exp(-r * r / (2.0 * k2 * s)); },
            log_edges(lo, t, 12 * decades), rule);

        const double scale = std::max(std::abs(closed), 1e-300);
        rep.worst_quad_error = std::max(rep.worst_quad_error, std::abs(quad - closed) / scale);
        rep.max_scaled = std::max(rep.max_scaled, closed * std::pow(r, 2 * d));
    }
    rep.ok = rep.max_scaled <= rep.limit * (1.0 + 1e-12);
    return rep;
}

const std::vector<BoundRegistryRow>& bound_coverage_lock() {
    static const std::vector<BoundRegistryRow> rows = {
        {"elliptic-white-ball", "elliptic-rate", "ball2", "white", CheckKind::ratio_stability,
         "boundary integral of |x-y|^(2-2d) against nu"},
        {"elliptic-white-interval-log", "elliptic-rate", "interval", "white",
         CheckKind::ratio_stability, "squared log bound (1 + log+ 1/dist)^2"},
        {"elliptic-signed-series", "elliptic-rate", "ball2", "signed-series",
         CheckKind::ratio_stability, "dist^(2-2d) from the total-variation envelope"},
        {"elliptic-homogeneous-spectral", "elliptic-rate", "halfspace1", "homogeneous",
         CheckKind::ratio_stability,
         "spectral split x0^-2 (|y|<=1) plus x0^-4 |y|^(-1/m) (|y|>1)"},
        {"elliptic-levy-two-term", "elliptic-rate", "ball2", "poisson", CheckKind::ratio_stability,
         "integral of |x-y|^(2-2d) rho^2 plus squared integral of |x-y|^(1-d) |rho|"},
        {"parabolic-white-interval", "parabolic-rate", "interval", "white",
         CheckKind::ratio_stability, "boundary integral of |x-y|^(-2d) against nu"},
        {"parabolic-signed-series", "parabolic-rate", "interval", "signed-series",
         CheckKind::ratio_stability, "dist^(-2d) from the total-variation envelope"},
        {"parabolic-homogeneous-spectral", "parabolic-rate", "halfspace1", "homogeneous",
         CheckKind::ratio_stability, "e^t times the spectral split bound"},
        {"parabolic-levy-two-term", "parabolic-rate", "halfspace1", "poisson",
         CheckKind::ratio_stability,
         "integral of |x-y|^(-2d) rho^2 plus squared integral of |x-y|^(-d-1) |rho|"},
        {"fractional-young-interval", "young-bound", "interval", "signed-series",
         CheckKind::pathwise_inequality, "pathwise product Lambda_alpha(W) I_alpha(f)"},
    };
    return rows;
}

}  // namespace dnoise
