#include "dnoise/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dnoise/dirichlet.hpp"
#include "dnoise/errors.hpp"
#include "dnoise/fields.hpp"
#include "dnoise/quadrature.hpp"

namespace dnoise {

namespace {

using nlohmann::json;

const std::vector<double> kDefaultDistances = {0.5,  0.2,   0.1,   0.05, 0.02,
                                               0.01, 0.005, 0.002, 0.001};

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string iso_now() {
    const std::time_t tt = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Domain make_domain(const std::string& id) {
    if (id == "interval") return Domain::interval(0.0, 1.0);
    if (id == "halfline") return Domain::half_line();
    if (id == "halfspace1") return Domain::half_space(1);
    if (id == "ball2") return Domain::unit_ball(2);
    throw ConfigError("unknown domain id '" + id + "'");
}

Point probe_anchor(const Domain& dom) {
    switch (dom.kind()) {
        case DomainKind::interval:
            return {dom.a()};
        case DomainKind::half_line:
            return {0.0};
        case DomainKind::half_space:
            return Point(dom.dimension(), 0.0);
        case DomainKind::unit_ball: {
            Point p(dom.dimension(), 0.0);
            p[0] = 1.0;
            return p;
        }
    }
    throw ConfigError("unknown domain kind");
}

// ball_nodes: arc discretization of nu. Blow-up probes must stay coarser
// than the node spacing or the discrete measure's self-ratio drifts, so the
// rate experiments use a much finer arc than the sampling experiments.
WhiteNoiseSpec make_white(const Domain& dom, int ball_nodes) {
    WhiteNoiseSpec w;
    if (dom.kind() == DomainKind::interval) {
        w.nu = dom.boundary_quadrature(2);
        w.basis = BasisKind::node_indicator;
        w.truncation = 2;
    } else if (dom.kind() == DomainKind::unit_ball && dom.dimension() == 2) {
        w.nu = dom.boundary_quadrature(ball_nodes);
        w.basis = BasisKind::automatic;
        w.truncation = 601;
    } else {
        throw ConfigError("white noise experiments run on interval or ball2");
    }
    return w;
}

SignedSeriesSpec make_signed(const Domain& dom, double hurst, bool single_measure) {
    SignedSeriesSpec s;
    s.hurst = hurst;
    if (dom.kind() == DomainKind::interval) {
        if (single_measure) {
            s.measures = {{{{0.0}}, {1.0}}};
        } else {
            s.measures = {{{{0.0}}, {1.0}},
                          {{{0.0}, {1.0}}, {0.6, -0.4}},
                          {{{1.0}}, {0.5}}};
        }
    } else if (dom.kind() == DomainKind::unit_ball && dom.dimension() == 2) {
        s.measures = {{{{1.0, 0.0}}, {1.0}},
                      {{{1.0, 0.0}, {-1.0, 0.0}}, {0.7, -0.5}},
                      {{{0.0, 1.0}, {0.0, -1.0}}, {0.6, 0.4}}};
    } else {
        throw ConfigError("signed-series experiments run on interval or ball2");
    }
    return s;
}

HomogeneousSpec make_homog() {
    HomogeneousSpec h;
    h.boundary_dim = 1;
    h.atoms = {{{0.0}, 0.5},  {{0.4}, 0.35}, {{-0.4}, 0.35}, {{1.8}, 0.25},
               {{-1.8}, 0.25}, {{4.0}, 0.15}, {{-4.0}, 0.15}};
    h.validate();
    return h;
}

PoissonSpec make_poisson(const Domain& dom) {
    PoissonSpec p;
    if (dom.kind() == DomainKind::unit_ball && dom.dimension() == 2) {
        p.intensity.nodes = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}};
        p.intensity.weights = {0.8, 0.5, 0.4};
        p.mark = MarkSpec{MarkSpec::Kind::constant, 0.7, 0.0, 0.0};
    } else if (dom.kind() == DomainKind::half_space && dom.dimension() == 2) {
        p.intensity.nodes = {{0.0, 0.0}, {0.0, 0.4}, {0.0, -0.4}, {0.0, 1.2}, {0.0, -1.2}};
        p.intensity.weights = {0.6, 0.3, 0.3, 0.2, 0.2};
        p.mark = MarkSpec{MarkSpec::Kind::power, 0.5, 0.3, 1.0};
    } else {
        throw ConfigError("poisson experiments run on ball2 or halfspace1");
    }
    return p;
}

BoundaryNoiseSpec build_noise_spec(const ExperimentConfig& cfg, const Domain& dom,
                                   bool parabolic) {
    if (cfg.noise == "white") {
        const int ball_nodes = cfg.experiment == "elliptic-consistency" ? 2048 : 16384;
        WhiteNoiseSpec w = make_white(dom, ball_nodes);
        if (parabolic) return CylFractionalSpec{w.nu, w.basis, w.truncation, 0.5};
        return w;
    }
    if (cfg.noise == "signed-series") {
        const bool single = cfg.experiment == "young-bound";
        const double h = parabolic ? cfg.hurst : 0.5;
        return make_signed(dom, h, single);
    }
    if (cfg.noise == "homogeneous") return make_homog();
    if (cfg.noise == "poisson") return make_poisson(dom);
    throw ConfigError("unknown noise id '" + cfg.noise + "'");
}

double point_dist(const Point& x, const Point& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
}

// Right-hand sides of the registered blow-up statements, evaluated per probe.
double bound_rhs_value(const std::string& bound_id, const Domain& dom,
                       const ExperimentConfig& cfg, const BoundaryNoiseSpec& spec, const Point& x,
                       double dist) {
    const int d = dom.dimension();
    if (bound_id == "elliptic-white-ball") {
        const auto& w = std::get<WhiteNoiseSpec>(spec);
        double acc = 0.0;
        for (std::size_t i = 0; i < w.nu.nodes.size(); ++i)
            acc += w.nu.weights[i] * std::pow(point_dist(x, w.nu.nodes[i]), 2 - 2 * d);
        return acc;
    }
    if (bound_id == "elliptic-white-interval-log") {
        const double lg = std::max(0.0, std::log(1.0 / dist));
        return (1.0 + lg) * (1.0 + lg);
    }
    if (bound_id == "elliptic-signed-series") return std::pow(dist, 2 - 2 * d);
    if (bound_id == "parabolic-signed-series") return std::pow(dist, -2 * d);
    if (bound_id == "elliptic-homogeneous-spectral" ||
        bound_id == "parabolic-homogeneous-spectral") {
        const auto& h = std::get<HomogeneousSpec>(spec);
        const double x0 = x[0];
        double acc = 0.0;
        for (const auto& a : h.atoms) {
            double fr = 0.0;
            for (double c : a.freq) fr += c * c;
            fr = std::sqrt(fr);
            if (fr <= 1.0)
                acc += a.weight / (x0 * x0);
            else
                acc += a.weight * std::pow(fr, -1.0 / h.boundary_dim) / (x0 * x0 * x0 * x0);
        }
        if (bound_id == "parabolic-homogeneous-spectral") acc *= std::exp(cfg.t);
        return acc;
    }
    if (bound_id == "elliptic-levy-two-term" || bound_id == "parabolic-levy-two-term") {
        const auto& p = std::get<PoissonSpec>(spec);
        const bool parabolic = bound_id[0] == 'p';
        const double sq_pow = parabolic ? -2.0 * d : 2.0 - 2.0 * d;
        const double lin_pow = parabolic ? -d - 1.0 : 1.0 - d;
        double sq = 0.0, lin = 0.0;
        for (std::size_t i = 0; i < p.intensity.nodes.size(); ++i) {
            const double r = point_dist(x, p.intensity.nodes[i]);
            const double rho = p.mark(p.intensity.nodes[i]);
            sq += p.intensity.weights[i] * std::pow(r, sq_pow) * rho * rho;
            lin += p.intensity.weights[i] * std::pow(r, lin_pow) * std::abs(rho);
        }
        return sq + lin * lin;
    }
    if (bound_id == "parabolic-white-interval") {
        const auto& c = std::get<CylFractionalSpec>(spec);
        double acc = 0.0;
        for (std::size_t i = 0; i < c.nu.nodes.size(); ++i)
            acc += c.nu.weights[i] * std::pow(point_dist(x, c.nu.nodes[i]), -2 * d);
        return acc;
    }
    if (bound_id == "fractional-young-interval") return std::pow(dist, -(d - 1 + cfg.alpha));
    throw ConfigError("no bound evaluator registered for '" + bound_id + "'");
}

struct CsvRow {
    std::string domain;
    double dist = 0.0, t = 0.0, value = 0.0, se = 0.0, rhs = 0.0, ratio = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

void write_csv(const std::string& path, const std::string& experiment,
               const std::vector<CsvRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "experiment,domain,dist,t,value,stderr,bound_rhs,ratio,N,seed\n";
    for (const CsvRow& r : rows)
        out << experiment << ',' << r.domain << ',' << fmt_g(r.dist) << ',' << fmt_g(r.t) << ','
            << fmt_g(r.value) << ',' << fmt_g(r.se) << ',' << fmt_g(r.rhs) << ','
            << fmt_g(r.ratio) << ',' << r.n << ',' << r.seed << "\n";
}

json rate_to_json(const RateReport& rep) {
    json j;
    j["slope"] = rep.slope;
    j["intercept"] = rep.intercept;
    j["r_squared"] = rep.r_squared;
    j["bound_constant"] = rep.bound_constant;
    j["bound_stable"] = rep.bound_stable;
    j["bound_id"] = rep.bound_id;
    j["log_square_mode"] = rep.log_square_mode;
    if (rep.log_square_mode) j["log_square_coeff"] = rep.log_square_coeff;
    return j;
}

std::string lookup_bound_id(const ExperimentConfig& cfg) {
    for (const auto& row : experiment_registry())
        if (row.experiment == cfg.experiment && row.domain_id == cfg.domain &&
            row.noise_id == cfg.noise)
            return row.bound_id;
    return "-";
}

struct RunPayload {
    std::vector<CsvRow> rows;
    json summary;
    bool pass = true;
    std::vector<std::string> failures;

    void fail(const std::string& msg) {
        pass = false;
        failures.push_back(msg);
    }
};

// ---- runners -----------------------------------------------------------

void run_rate(const ExperimentConfig& cfg, bool parabolic, RunPayload& out) {
    const Domain dom = make_domain(cfg.domain);
    KernelConfig kc;
    kc.lambda = cfg.lambda;
    const BoundaryNoiseSpec spec = build_noise_spec(cfg, dom, parabolic);
    const std::string bound_id = lookup_bound_id(cfg);
    const bool log_sq = bound_id == "elliptic-white-interval-log";
    const auto probes = dom.normal_probe_line(probe_anchor(dom), cfg.distances);

    std::vector<double> values(probes.size()), rhs(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (const auto* p = std::get_if<PoissonSpec>(&spec)) {
            values[i] = campbell_second_moment(
                dom, kc, *p, probes[i],
                parabolic ? std::optional<double>(cfg.t) : std::nullopt);
        } else {
            values[i] = parabolic ? analytic_variance_parabolic(dom, kc, spec, cfg.t, probes[i])
                                  : analytic_variance_elliptic(dom, kc, spec, probes[i]);
        }
        rhs[i] = bound_rhs_value(bound_id, dom, cfg, spec, probes[i], cfg.distances[i]);
        CsvRow row;
        row.domain = cfg.domain;
        row.dist = cfg.distances[i];
        row.t = parabolic ? cfg.t : 0.0;
        row.value = values[i];
        row.rhs = rhs[i];
        row.ratio = values[i] / rhs[i];
        row.n = 0;
        row.seed = cfg.mc.seed;
        out.rows.push_back(row);
    }

    const RateReport rep = check_bound(cfg.distances, values, rhs, bound_id, log_sq);
    out.summary["rate"] = rate_to_json(rep);
    if (!rep.bound_stable)
        out.fail("bound '" + bound_id + "' ratio grows monotonically toward the boundary");
}

void run_elliptic_consistency(const ExperimentConfig& cfg, RunPayload& out) {
    const Domain dom = make_domain(cfg.domain);
    KernelConfig kc;
    kc.lambda = cfg.lambda;
    const WhiteNoiseSpec w = make_white(dom, 2048);
    const auto probes = dom.normal_probe_line(probe_anchor(dom), cfg.distances);

    json jprobes = json::array();
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const double r = 1.0 - cfg.distances[i];
        const std::vector<double> coeff =
            elliptic_coefficients(dom, kc, BoundaryNoiseSpec{w}, probes[i]);
        const auto sampler = [&coeff](Rng& rng) {
            double acc = 0.0;
            for (double c : coeff) acc += c * rng.normal();
            return acc;
        };
        const FieldEstimate est = mc_second_moment(sampler, cfg.mc.n,
                                                   split_seed(cfg.mc.seed, i), cfg.mc.workers);
        const double closed = (1.0 + r * r) / (2.0 * M_PI * (1.0 - r * r));
        const double gap = std::abs(est.second_moment - closed);
        if (gap > 4.0 * est.std_error)
            out.fail("elliptic second moment off by " + fmt_g(gap / est.std_error) +
                     " stderr at r = " + fmt_g(r));
        CsvRow row;
        row.domain = cfg.domain;
        row.dist = cfg.distances[i];
        row.value = est.second_moment;
        row.se = est.std_error;
        row.rhs = closed;
        row.ratio = est.second_moment / closed;
        row.n = est.n;
        row.seed = cfg.mc.seed;
        out.rows.push_back(row);
        jprobes.push_back({{"r", r},
                           {"mc", est.second_moment},
                           {"stderr", est.std_error},
                           {"closed", closed},
                           {"sigmas", gap / est.std_error}});
    }
    out.summary["probes"] = jprobes;
}

void run_parabolic_consistency(const ExperimentConfig& cfg, RunPayload& out) {
    const Domain dom = make_domain(cfg.domain);
    KernelConfig kc;
    const BoundaryNoiseSpec spec = build_noise_spec(cfg, dom, true);
    const TimeGrid grid = convolution_grid(cfg.t, cfg.cells, GridScheme::log_spaced);
    std::vector<double> ds(grid.nodes.size());
    double prev = 0.0;
    for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
        ds[j] = std::sqrt(grid.nodes[j] - prev);
        prev = grid.nodes[j];
    }

    json jprobes = json::array();
    for (std::size_t i = 0; i < cfg.distances.size(); ++i) {
        const Point x = {cfg.distances[i]};
        const ConvolutionPlan plan =
            make_convolution_plan(dom, kc, spec, cfg.t, x, grid, StepRule::ito_midpoint);
        const int cells = static_cast<int>(grid.nodes.size());
        std::vector<double> cache(static_cast<std::size_t>(cells) * plan.channels);
        for (int k = 0; k < plan.channels; ++k)
            for (int j = 0; j < cells; ++j)
                cache[static_cast<std::size_t>(k) * cells + j] = plan.kernel_cache(j, k);

        const auto sampler = [&](Rng& rng) {
            double acc = 0.0;
            for (int k = 0; k < plan.channels; ++k) {
                const double* ck = cache.data() + static_cast<std::size_t>(k) * cells;
                for (int j = 0; j < cells; ++j) acc += ck[j] * ds[j] * rng.normal();
            }
            return acc;
        };
        const FieldEstimate est = mc_second_moment(sampler, cfg.mc.n,
                                                   split_seed(cfg.mc.seed, i), cfg.mc.workers);
        const double analytic = analytic_variance_parabolic(dom, kc, spec, cfg.t, x);
        const double gap = std::abs(est.second_moment - analytic);
        if (gap > 4.0 * est.std_error)
            out.fail("parabolic second moment off by " + fmt_g(gap / est.std_error) +
                     " stderr at x = " + fmt_g(x[0]));
        CsvRow row;
        row.domain = cfg.domain;
        row.dist = cfg.distances[i];
        row.t = cfg.t;
        row.value = est.second_moment;
        row.se = est.std_error;
        row.rhs = analytic;
        row.ratio = est.second_moment / analytic;
        row.n = est.n;
        row.seed = cfg.mc.seed;
        out.rows.push_back(row);
        jprobes.push_back({{"x", x[0]},
                           {"mc", est.second_moment},
                           {"stderr", est.std_error},
                           {"analytic", analytic},
                           {"sigmas", gap / est.std_error}});
    }
    out.summary["probes"] = jprobes;
    out.summary["cells"] = cfg.cells;
}

void run_young_bound(const ExperimentConfig& cfg, RunPayload& out) {
    const Domain dom = make_domain(cfg.domain);
    KernelConfig kc;
    const double t = cfg.t;
    const TimeGrid grid = TimeGrid::uniform(t, cfg.cells);
    const FbmSampler sampler(cfg.hurst, grid);
    const Point atom = {0.0};

    // exact-value control for the first term of the fractional integral
    const double i1 = young_i_alpha([](double) { return 1.0; }, 1.0, cfg.alpha);
    const double i1_exact = 1.0 / (1.0 - cfg.alpha);
    out.summary["i_alpha_const"] = i1;
    out.summary["i_alpha_const_exact"] = i1_exact;
    if (std::abs(i1 - i1_exact) > 1e-8)
        out.fail("I_alpha(1) off by " + fmt_g(std::abs(i1 - i1_exact)));

    Rng xrng(split_seed(cfg.mc.seed, 900001));
    int success = 0;
    double worst_ratio = 0.0;
    for (int i = 0; i < cfg.pairs; ++i) {
        const double xv = 0.05 + 0.45 * xrng.uniform();
        const Point x = {xv};
        const auto f = [&](double s) {
            return heat_kernel_normal_derivative(dom, kc, t - s, x, atom);
        };
        const Eigen::MatrixXd paths = sampler.draw(1, split_seed(cfg.mc.seed, i));
        std::vector<double> path(grid.nodes.size());
        for (std::size_t j = 0; j < path.size(); ++j) path[j] = paths(0, j);

        const double sum = path_integral_midpoint(f, grid, path);
        const YoungBound yb = young_bound(f, grid, path, cfg.alpha);
        const double cap = 1.05 * yb.integral_bound;
        const double ratio = cap > 0.0 ? std::abs(sum) / cap : 0.0;
        worst_ratio = std::max(worst_ratio, ratio);
        if (std::abs(sum) <= cap) ++success;

        CsvRow row;
        row.domain = cfg.domain;
        row.dist = xv;  // distance to the near endpoint
        row.t = t;
        row.value = std::abs(sum);
        row.rhs = cap;
        row.ratio = ratio;
        row.n = 1;
        row.seed = cfg.mc.seed;
        out.rows.push_back(row);
    }
    const int needed = static_cast<int>(std::ceil(0.99 * cfg.pairs));
    out.summary["pairs"] = cfg.pairs;
    out.summary["successes"] = success;
    out.summary["worst_ratio"] = worst_ratio;
    if (success < needed)
        out.fail("pathwise bound held in " + std::to_string(success) + "/" +
                 std::to_string(cfg.pairs) + " pairs (need " + std::to_string(needed) + ")");

    // diagnostic: observed growth of I_alpha(f_x) toward the boundary vs the
    // stated dist^{-(d-1+alpha)} envelope (reported, not gated). Probes stop
    // at 0.02: below that the kernel mass sits in a layer of width dist^2
    // under the horizon, thinner than the inner quadrature of I_alpha
    // resolves.
    std::vector<double> idists;
    for (double d : cfg.distances)
        if (d >= 0.02) idists.push_back(d);
    if (idists.size() >= 4) {
        std::vector<double> ivals(idists.size());
        const auto dprobes = dom.normal_probe_line(probe_anchor(dom), idists);
        for (std::size_t i = 0; i < dprobes.size(); ++i) {
            const Point& x = dprobes[i];
            ivals[i] = young_i_alpha(
                [&](double s) { return heat_kernel_normal_derivative(dom, kc, t - s, x, atom); },
                t, cfg.alpha);
        }
        const RateReport irep = fit_blowup(idists, ivals);
        out.summary["i_alpha_slope"] = irep.slope;
        out.summary["i_alpha_fit_min_dist"] = idists.back();
        out.summary["stated_exponent"] = -(dom.dimension() - 1 + cfg.alpha);
    }
}

void run_fbm_covariance(const ExperimentConfig& cfg, RunPayload& out) {
    const TimeGrid grid = TimeGrid::uniform(1.0, 5);
    const std::vector<double> hursts = {0.55, 0.75, 0.9};
    json jall = json::array();
    for (std::size_t hi = 0; hi < hursts.size(); ++hi) {
        const double h = hursts[hi];
        const Eigen::MatrixXd R = fbm_covariance(h, grid);
        const FbmSampler sampler(h, grid);
        const int m = static_cast<int>(grid.nodes.size());
        Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero(m, m), m2 = Eigen::MatrixXd::Zero(m, m);
        const std::uint64_t hseed = split_seed(cfg.mc.seed, 100 + hi);
        for (std::size_t s = 0; s < cfg.mc.n; ++s) {
            const Eigen::MatrixXd p = sampler.draw(1, split_seed(hseed, s));
            for (int i = 0; i < m; ++i)
                for (int j = i; j < m; ++j) {
                    const double v = p(0, i) * p(0, j);
                    m1(i, j) += v;
                    m2(i, j) += v * v;
                }
        }
        char dom_label[16];
        std::snprintf(dom_label, sizeof dom_label, "h=%.2f", h);
        double worst = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) {
                const double mean = m1(i, j) / static_cast<double>(cfg.mc.n);
                const double sec = m2(i, j) / static_cast<double>(cfg.mc.n);
                const double se =
                    std::sqrt(std::max(0.0, sec - mean * mean) / static_cast<double>(cfg.mc.n));
                const double gap = std::abs(mean - R(i, j));
                worst = std::max(worst, gap / se);
                if (gap > 4.0 * se)
                    out.fail("fbm covariance H=" + fmt_g(h) + " entry (" + std::to_string(i) +
                             "," + std::to_string(j) + ") off by " + fmt_g(gap / se) + " stderr");
                CsvRow row;
                row.domain = dom_label;
                row.dist = grid.nodes[i];
                row.t = grid.nodes[j];
                row.value = mean;
                row.se = se;
                row.rhs = R(i, j);
                row.ratio = mean / R(i, j);
                row.n = cfg.mc.n;
                row.seed = cfg.mc.seed;
                out.rows.push_back(row);
            }
        jall.push_back({{"hurst", h}, {"worst_sigmas", worst}});
    }
    out.summary["families"] = jall;
}

ProbeSet envelope_probes(const Domain& dom) {
    ProbeSet p;
    p.t = {1e-3, 3.16e-3, 0.01, 0.0316, 0.1, 0.316, 1.0};
    const std::vector<double> xs = dom.kind() == DomainKind::interval
                                       ? std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9}
                                       : std::vector<double>{0.1, 0.5, 1.0, 2.0, 4.0};
    for (double v : xs) {
        p.x.push_back({v});
        p.y.push_back({v});
    }
    return p;
}

void run_gaussian_bound_fit(const ExperimentConfig& cfg, RunPayload& out) {
    (void)cfg;
    const std::vector<std::pair<int, int>> orders = {{0, 0}, {0, 1}, {1, 0}};  // (dt, dx)
    json jcells = json::array();
    for (const std::string dom_id : {"interval", "halfline"}) {
        const Domain dom = dom_id == "interval" ? Domain::interval(0.0, 1.0) : Domain::half_line();
        const ProbeSet probes = envelope_probes(dom);
        KernelConfig kc;
        for (const auto& [dt, dx] : orders) {
            DerivOrder order;
            order.dt = dt;
            order.dx = {dx};
            const GaussianBoundFit fit = check_gaussian_bound(dom, kc, order, probes);
            if (!fit.success)
                out.fail("no finite envelope constants for " + dom_id + " order (dt=" +
                         std::to_string(dt) + ", dx=" + std::to_string(dx) + ")");
            CsvRow row;
            row.domain = dom_id;
            row.dist = dt;  // derivative order bookkeeping, see README
            row.t = dx;
            row.value = fit.k1;
            row.rhs = fit.k2;
            row.ratio = fit.success ? 1.0 : 0.0;
            row.seed = cfg.mc.seed;
            out.rows.push_back(row);
            jcells.push_back({{"domain", dom_id},
                              {"dt", dt},
                              {"dx", dx},
                              {"k1", fit.k1},
                              {"k2", fit.k2},
                              {"success", fit.success},
                              {"worst_t", fit.worst_t}});
        }
    }
    out.summary["cells"] = jcells;
}

void run_heat_tail(const ExperimentConfig& cfg, RunPayload& out) {
    const Domain dom = Domain::interval(0.0, 1.0);
    KernelConfig kc;
    DerivOrder order;
    order.dx = {1};
    const GaussianBoundFit fit = check_gaussian_bound(dom, kc, order, envelope_probes(dom));
    if (!fit.success) {
        out.fail("envelope fit for the first space derivative failed");
        return;
    }
    out.summary["k2"] = fit.k2;
    const std::vector<double> r_grid = {0.3, 0.6, 1.0, 1.5, 2.5};
    json jd = json::array();
    for (int d = 1; d <= 3; ++d) {
        const HeatTailReport rep = check_heat_tail_bound(d, fit.k2, cfg.t, r_grid);
        if (!rep.ok) out.fail("tail bound exceeded at d = " + std::to_string(d));
        if (rep.worst_quad_error > 1e-10)
            out.fail("closed form vs quadrature gap " + fmt_g(rep.worst_quad_error) + " at d = " +
                     std::to_string(d));
        CsvRow row;
        row.dist = d;
        row.t = cfg.t;
        row.value = rep.max_scaled;
        row.se = rep.worst_quad_error;
        row.rhs = rep.limit;
        row.ratio = rep.max_scaled / rep.limit;
        row.seed = cfg.mc.seed;
        out.rows.push_back(row);
        jd.push_back({{"d", d},
                      {"max_scaled", rep.max_scaled},
                      {"limit", rep.limit},
                      {"quad_error", rep.worst_quad_error},
                      {"ok", rep.ok}});
    }
    out.summary["dimensions"] = jd;
}

}  // namespace

ExperimentConfig default_config(const std::string& experiment, const std::string& domain,
                                const std::string& noise) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    cfg.domain = domain;
    cfg.noise = noise;
    if (experiment == "elliptic-rate" || experiment == "parabolic-rate") {
        if (cfg.domain.empty()) cfg.domain = experiment[0] == 'e' ? "ball2" : "interval";
        if (cfg.noise.empty()) cfg.noise = "white";
        cfg.distances = kDefaultDistances;
        cfg.t = 0.1;
    } else if (experiment == "elliptic-consistency") {
        if (cfg.domain.empty()) cfg.domain = "ball2";
        if (cfg.noise.empty()) cfg.noise = "white";
        cfg.distances = {0.5, 0.1, 0.01};
        cfg.mc.n = 20000;
    } else if (experiment == "parabolic-consistency") {
        if (cfg.domain.empty()) cfg.domain = "interval";
        if (cfg.noise.empty()) cfg.noise = "white";
        cfg.distances = {0.5, 0.25, 0.1};
        cfg.t = 0.1;
        cfg.cells = 512;
        cfg.mc.n = 100000;
    } else if (experiment == "young-bound") {
        if (cfg.domain.empty()) cfg.domain = "interval";
        if (cfg.noise.empty()) cfg.noise = "signed-series";
        cfg.t = 1.0;
        cfg.hurst = 0.75;
        cfg.alpha = 0.3;
        cfg.cells = 256;
        cfg.pairs = 100;
        cfg.distances = kDefaultDistances;
    } else if (experiment == "fbm-covariance") {
        cfg.mc.n = 100000;
    } else if (experiment == "gaussian-bound-fit") {
        // domain-free: runs its own interval + half-line grids
    } else if (experiment == "heat-tail") {
        cfg.t = 1.0;
    } else {
        throw ConfigError("unknown experiment '" + experiment + "'");
    }
    if (cfg.domain == "halfspace1" && cfg.lambda == 0.0) cfg.lambda = 1.0;
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: parse failure: ") + e.what());
    }
    static const std::set<std::string> top = {"experiment", "domain", "noise",  "lambda",
                                             "t",          "hurst",  "alpha",  "distances",
                                             "cells",      "pairs",  "mc",     "output"};
    for (const auto& item : j.items())
        if (!top.count(item.key())) throw ConfigError("config: unknown key '" + item.key() + "'");
    if (!j.contains("experiment")) throw ConfigError("config: missing key 'experiment'");

    ExperimentConfig cfg = default_config(j.at("experiment").get<std::string>(),
                                          j.value("domain", std::string()),
                                          j.value("noise", std::string()));
    try {
        if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<double>();
        if (j.contains("t")) cfg.t = j.at("t").get<double>();
        if (j.contains("hurst")) cfg.hurst = j.at("hurst").get<double>();
        if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
        if (j.contains("distances")) cfg.distances = j.at("distances").get<std::vector<double>>();
        if (j.contains("cells")) cfg.cells = j.at("cells").get<int>();
        if (j.contains("pairs")) cfg.pairs = j.at("pairs").get<int>();
        if (j.contains("mc")) {
            const json& m = j.at("mc");
            static const std::set<std::string> mckeys = {"n", "seed", "workers"};
            for (const auto& item : m.items())
                if (!mckeys.count(item.key()))
                    throw ConfigError("config: unknown key 'mc." + item.key() + "'");
            if (m.contains("n")) cfg.mc.n = m.at("n").get<std::size_t>();
            if (m.contains("seed")) cfg.mc.seed = m.at("seed").get<std::uint64_t>();
            if (m.contains("workers")) cfg.mc.workers = m.at("workers").get<int>();
        }
        if (j.contains("output")) {
            const json& o = j.at("output");
            static const std::set<std::string> okeys = {"csv", "json"};
            for (const auto& item : o.items())
                if (!okeys.count(item.key()))
                    throw ConfigError("config: unknown key 'output." + item.key() + "'");
            if (o.contains("csv")) cfg.csv_path = o.at("csv").get<std::string>();
            if (o.contains("json")) cfg.json_path = o.at("json").get<std::string>();
        }
    } catch (const json::type_error& e) {
        throw ConfigError(std::string("config: bad value type: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    bool found = false;
    for (const auto& row : experiment_registry())
        if (row.experiment == cfg.experiment && row.domain_id == cfg.domain &&
            row.noise_id == cfg.noise) {
            found = true;
            break;
        }
    if (!found) {
        std::ostringstream msg;
        msg << "unsupported (experiment, domain, noise) = (" << cfg.experiment << ", "
            << cfg.domain << ", " << cfg.noise << "); supported:\n";
        for (const auto& row : experiment_registry())
            msg << "  " << row.experiment << "  domain=" << (row.domain_id.empty() ? "-" : row.domain_id)
                << "  noise=" << (row.noise_id.empty() ? "-" : row.noise_id) << "\n";
        throw ConfigError(msg.str());
    }

    const bool needs_probes = cfg.experiment == "elliptic-rate" ||
                              cfg.experiment == "parabolic-rate" ||
                              cfg.experiment == "elliptic-consistency" ||
                              cfg.experiment == "parabolic-consistency" ||
                              cfg.experiment == "young-bound";
    if (needs_probes) {
        if (cfg.distances.empty()) throw ConfigError("config: empty probe grid");
        double reach = 1e300;
        if (cfg.domain == "interval") reach = 0.5;
        if (cfg.domain == "ball2") reach = 1.0;
        for (std::size_t i = 0; i < cfg.distances.size(); ++i) {
            if (!(cfg.distances[i] > 0.0) || cfg.distances[i] > reach)
                throw ConfigError("config: probe distance outside (0, reach]");
            if (i > 0 && !(cfg.distances[i] < cfg.distances[i - 1]))
                throw ConfigError("config: distances must be strictly decreasing");
        }
    }
    const bool is_rate =
        cfg.experiment == "elliptic-rate" || cfg.experiment == "parabolic-rate";
    if (is_rate && cfg.distances.size() < 4)
        throw ConfigError("config: rate fits need at least 4 probe distances");
    if (cfg.experiment == "parabolic-rate" || cfg.experiment == "parabolic-consistency" ||
        cfg.experiment == "young-bound")
        if (!(cfg.t > 0.0)) throw ConfigError("config: t > 0 required");
    if (cfg.experiment == "young-bound") {
        if (!(cfg.hurst > 0.5 && cfg.hurst < 1.0))
            throw ConfigError("config: young-bound needs hurst in (1/2, 1)");
        if (!(cfg.alpha > 1.0 - cfg.hurst && cfg.alpha < 0.5))
            throw ConfigError("config: young-bound needs alpha in (1 - hurst, 1/2)");
        if (cfg.pairs < 1) throw ConfigError("config: pairs >= 1");
    }
    if (cfg.experiment == "parabolic-consistency" && cfg.cells < 2)
        throw ConfigError("config: cells >= 2");
    const bool uses_mc = cfg.experiment == "elliptic-consistency" ||
                         cfg.experiment == "parabolic-consistency" ||
                         cfg.experiment == "fbm-covariance";
    if (uses_mc && cfg.mc.n < 100) throw ConfigError("config: mc.n >= 100");
    if ((cfg.domain == "halfspace1" || cfg.domain == "halfline") &&
        cfg.experiment == "elliptic-rate" && !(cfg.lambda > 0.0))
        throw ConfigError("config: lambda > 0 required on unbounded domains");
}

const std::vector<ExperimentRegistryRow>& experiment_registry() {
    static const std::vector<ExperimentRegistryRow> rows = [] {
        std::vector<ExperimentRegistryRow> r;
        for (const auto& b : bound_coverage_lock())
            r.push_back({b.experiment, b.domain_id, b.noise_id, b.bound_id, b.anchor});
        r.push_back({"elliptic-consistency", "ball2", "white", "-",
                     "closed disk variance (1+r^2) / (2 pi (1-r^2))"});
        r.push_back({"parabolic-consistency", "interval", "white", "-",
                     "time-integrated squared kernel derivative (Ito isometry)"});
        r.push_back({"fbm-covariance", "", "", "-",
                     "fractional covariance (s^2H + t^2H - |s-t|^2H) / 2"});
        r.push_back({"gaussian-bound-fit", "", "", "-",
                     "envelope K1 t^-(d+|a|+2n)/2 e^(-r^2 / K2 t)"});
        r.push_back({"heat-tail", "", "", "-",
                     "tail integral bounded by C |x-y|^(-2d)"});
        return r;
    }();
    return rows;
}

std::vector<std::string> registry_gaps() {
    std::vector<std::string> gaps;
    for (const auto& b : bound_coverage_lock()) {
        bool found = false;
        for (const auto& r : experiment_registry())
            if (r.experiment == b.experiment && r.domain_id == b.domain_id &&
                r.noise_id == b.noise_id && r.bound_id == b.bound_id) {
                found = true;
                break;
            }
        if (!found) gaps.push_back(b.bound_id);
    }
    return gaps;
}

void list_experiments(std::ostream& os) {
    os << std::left << std::setw(24) << "experiment" << std::setw(12) << "domain" << std::setw(16)
       << "noise" << std::setw(32) << "bound" << "anchor\n";
    for (const auto& r : experiment_registry())
        os << std::left << std::setw(24) << r.experiment << std::setw(12)
           << (r.domain_id.empty() ? "-" : r.domain_id) << std::setw(16)
           << (r.noise_id.empty() ? "-" : r.noise_id) << std::setw(32) << r.bound_id << r.anchor
           << "\n";
    const auto gaps = registry_gaps();
    if (gaps.empty()) {
        os << "coverage lock: " << bound_coverage_lock().size()
           << " statements, all registered\n";
    } else {
        os << "coverage lock: MISSING";
        for (const auto& g : gaps) os << " " << g;
        os << "\n";
    }
}

RunResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (!registry_gaps().empty())
        throw ConfigError("coverage lock incomplete; run list-experiments for details");

    RunPayload payload;
    payload.summary["experiment"] = cfg.experiment;
    payload.summary["domain"] = cfg.domain;
    payload.summary["noise"] = cfg.noise;
    payload.summary["seed"] = cfg.mc.seed;
    payload.summary["n"] = cfg.mc.n;
    payload.summary["workers"] = cfg.mc.workers;
    payload.summary["version"] = "0.1.0";

    if (cfg.experiment == "elliptic-rate") {
        run_rate(cfg, false, payload);
    } else if (cfg.experiment == "parabolic-rate") {
        run_rate(cfg, true, payload);
    } else if (cfg.experiment == "elliptic-consistency") {
        run_elliptic_consistency(cfg, payload);
    } else if (cfg.experiment == "parabolic-consistency") {
        run_parabolic_consistency(cfg, payload);
    } else if (cfg.experiment == "young-bound") {
        run_young_bound(cfg, payload);
    } else if (cfg.experiment == "fbm-covariance") {
        run_fbm_covariance(cfg, payload);
    } else if (cfg.experiment == "gaussian-bound-fit") {
        run_gaussian_bound_fit(cfg, payload);
    } else if (cfg.experiment == "heat-tail") {
        run_heat_tail(cfg, payload);
    } else {
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    }

    std::string base = cfg.experiment;
    if (!cfg.domain.empty()) base += "-" + cfg.domain;
    if (!cfg.noise.empty()) base += "-" + cfg.noise;
    RunResult result;
    result.csv_path = cfg.csv_path.empty() ? cfg.out_dir + "/" + base + ".csv" : cfg.csv_path;
    result.json_path = cfg.json_path.empty() ? cfg.out_dir + "/" + base + ".json" : cfg.json_path;
    for (const std::string& p : {result.csv_path, result.json_path}) {
        const auto parent = std::filesystem::path(p).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
    }

    write_csv(result.csv_path, cfg.experiment, payload.rows);
    payload.summary["pass"] = payload.pass;
    payload.summary["failures"] = payload.failures;
    payload.summary["timestamp"] = iso_now();
    payload.summary["csv"] = result.csv_path;
    std::ofstream jout(result.json_path, std::ios::binary);
    if (!jout) throw std::runtime_error("cannot write " + result.json_path);
    jout << payload.summary.dump(2) << "\n";

    result.pass = payload.pass;
    result.failures = payload.failures;
    return result;
}

namespace {

std::vector<double> linspace_edges(double lo, double hi, int panels) {
    std::vector<double> e(panels + 1);
    for (int i = 0; i <= panels; ++i)
        e[i] = lo + (hi - lo) * static_cast<double>(i) / panels;
    return e;
}

}  // namespace

bool kernel_selftest(std::ostream& os) {
    KernelConfig kc;
    bool all_ok = true;
    const auto report = [&](const char* name, bool ok, double worst) {
        all_ok = all_ok && ok;
        os << (ok ? "[ok]   " : "[FAIL] ") << name << "  worst=" << fmt_g(worst) << "\n";
    };

    const Domain iv = Domain::interval(0.0, 1.0);
    const Domain hl = Domain::half_line();
    const Domain hs = Domain::half_space(1);
    const Domain ball = Domain::unit_ball(2);

    {
        double worst = 0.0;
        for (double t : {0.05, 0.1, 0.3})
            for (double x : {0.15, 0.5, 0.85})
                for (double y : {0.15, 0.5, 0.85})
                    worst = std::max(worst,
                                     std::abs(interval_heat_kernel_image(iv, t, {x}, {y}) -
                                              interval_heat_kernel_eigen(iv, 64, t, {x}, {y})));
        report("interval image route vs eigenseries", worst <= 1e-10, worst);
    }
    {
        double worst = 0.0;
        const auto sym = [&](const Domain& dom, double t, const Point& x, const Point& y) {
            worst = std::max(worst, std::abs(heat_kernel(dom, kc, t, x, y) -
                                             heat_kernel(dom, kc, t, y, x)));
        };
        sym(iv, 0.07, {0.3}, {0.8});
        sym(hl, 0.1, {0.5}, {1.7});
        sym(hs, 0.1, {0.5, 0.2}, {1.2, -0.3});
        sym(ball, 0.05, {0.3, 0.2}, {-0.5, 0.1});
        report("kernel symmetry in (x, y)", worst <= 1e-10, worst);
    }
    {
        const QuadRule& q = gauss_legendre(200);
        const auto ck = [&](double t, double s, double x, double y) {
            const double lhs = heat_kernel(iv, kc, t + s, {x}, {y});
            const double rhs = integrate(
                [&](double z) {
                    return heat_kernel(iv, kc, t, {x}, {z}) * heat_kernel(iv, kc, s, {z}, {y});
                },
                0.0, 1.0, q);
            return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        };
        const double worst = std::max(ck(0.03, 0.03, 0.3, 0.6), ck(0.1, 0.4, 0.25, 0.7));
        report("interval Chapman-Kolmogorov", worst <= 1e-6, worst);
    }
    {
        const QuadRule& g16 = gauss_legendre(16);
        const auto edges = linspace_edges(0.0, 40.0, 80);
        const double t = 0.1, s = 0.1, x = 0.7, y = 1.3;
        const double lhs = heat_kernel(hl, kc, t + s, {x}, {y});
        const double rhs = integrate_panels(
            [&](double z) {
                return heat_kernel(hl, kc, t, {x}, {z}) * heat_kernel(hl, kc, s, {z}, {y});
            },
            edges, g16);
        const double worst = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        report("half-line Chapman-Kolmogorov", worst <= 1e-6, worst);
    }
    {
        const QuadRule& g16 = gauss_legendre(16);
        const auto z0e = linspace_edges(0.0, 14.0, 56);
        const auto z1e = linspace_edges(-12.0, 14.0, 52);
        const double t = 0.08, s = 0.08;
        const Point x = {0.5, 0.2}, y = {1.0, -0.4};
        const double lhs = heat_kernel(hs, kc, t + s, x, y);
        const double rhs = integrate_panels(
            [&](double z0) {
                return integrate_panels(
                    [&](double z1) {
                        const Point z = {z0, z1};
                        return heat_kernel(hs, kc, t, x, z) * heat_kernel(hs, kc, s, z, y);
                    },
                    z1e, g16);
            },
            z0e, g16);
        const double worst = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        report("half-space Chapman-Kolmogorov", worst <= 1e-6, worst);
    }
    {
        const InteriorQuadrature iq = interior_quadrature(ball, 24);
        const double t = 0.1, s = 0.1;
        double worst = 0.0;
        const auto ck = [&](const Point& x, const Point& y) {
            const double lhs = heat_kernel(ball, kc, t + s, x, y);
            double rhs = 0.0;
            for (std::size_t i = 0; i < iq.nodes.size(); ++i)
                rhs += iq.weights[i] * heat_kernel(ball, kc, t, x, iq.nodes[i]) *
                       heat_kernel(ball, kc, s, iq.nodes[i], y);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
        };
        ck({0.3, 0.2}, {-0.4, 0.1});
        ck({0.0, 0.55}, {0.3, -0.3});
        report("disk Chapman-Kolmogorov", worst <= 1e-6, worst);
    }
    {
        const QuadRule& q = gauss_legendre(200);
        const QuadRule& g16 = gauss_legendre(16);
        double worst = 0.0;
        for (double t : {0.01, 0.1})
            for (double x : {0.2, 0.5, 0.9})
                worst = std::max(
                    worst, integrate([&](double z) { return heat_kernel(iv, kc, t, {x}, {z}); },
                                     0.0, 1.0, q));
        const auto hl_edges = linspace_edges(0.0, 40.0, 80);
        for (double t : {0.05, 0.5})
            for (double x : {0.3, 2.0})
                worst = std::max(worst,
                                 integrate_panels(
                                     [&](double z) { return heat_kernel(hl, kc, t, {x}, {z}); },
                                     hl_edges, g16));
        const auto z0e = linspace_edges(0.0, 14.0, 28);
        const auto z1e = linspace_edges(-12.0, 14.0, 26);
        const Point xs = {0.5, 0.2};
        worst = std::max(worst, integrate_panels(
                                    [&](double z0) {
                                        return integrate_panels(
                                            [&](double z1) {
                                                return heat_kernel(hs, kc, 0.1, xs, {z0, z1});
                                            },
                                            z1e, g16);
                                    },
                                    z0e, g16));
        for (double t : {0.005, 0.05, 0.5})
            for (double r : {0.0, 0.3, 0.7, 0.95})
                worst = std::max(worst, disk_heat_mass(t, r));
        report("sub-Markov total mass <= 1", worst <= 1.0 + 1e-8, worst);
    }
    {
        // boundary derivative vs one-sided Richardson difference into the domain
        const double h = 1e-4;
        double worst = 0.0;
        const auto fd = [&](const Domain& dom, double t, const Point& x,
                            const std::function<Point(double)>& inward, double closed) {
            const double est = (4.0 * heat_kernel(dom, kc, t, x, inward(h)) -
                                heat_kernel(dom, kc, t, x, inward(2.0 * h))) /
                               (2.0 * h);
            worst = std::max(worst, std::abs(est - closed) / std::max(1.0, std::abs(closed)));
        };
        fd(iv, 0.1, {0.3}, [](double u) { return Point{u}; },
           heat_kernel_normal_derivative(iv, kc, 0.1, {0.3}, {0.0}));
        fd(iv, 0.1, {0.3}, [](double u) { return Point{1.0 - u}; },
           heat_kernel_normal_derivative(iv, kc, 0.1, {0.3}, {1.0}));
        fd(hl, 0.1, {0.7}, [](double u) { return Point{u}; },
           heat_kernel_normal_derivative(hl, kc, 0.1, {0.7}, {0.0}));
        fd(hs, 0.1, {0.5, 0.2}, [](double u) { return Point{u, -0.1}; },
           -heat_kernel_normal_derivative(hs, kc, 0.1, {0.5, 0.2}, {0.0, -0.1}));
        const Point yb = {std::cos(0.3), std::sin(0.3)};
        fd(ball, 0.05, {0.2, 0.1},
           [&](double u) { return Point{(1.0 - u) * yb[0], (1.0 - u) * yb[1]}; },
           heat_kernel_normal_derivative(ball, kc, 0.05, {0.2, 0.1}, yb));
        report("boundary derivative vs finite difference", worst <= 2e-6, worst);
    }
    {
        double worst = 0.0;
        const auto gk = [&](const Domain& dom, double lambda, const Point& x, const Point& y) {
            KernelConfig c;
            c.lambda = lambda;
            const double a = green_kernel(dom, c, x, y);
            const double b = green_kernel_quadrature(dom, c, x, y);
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-12));
        };
        gk(iv, 1.0, {0.3}, {0.7});
        gk(hl, 1.0, {0.5}, {1.5});
        gk(hs, 1.0, {0.4, 0.1}, {1.0, 0.5});
        gk(ball, 0.0, {0.2, 0.1}, {-0.3, 0.2});
        report("resolvent closed form vs time quadrature", worst <= 1e-8, worst);
    }
    {
        double worst = 0.0;
        const auto gn = [&](const Domain& dom, double lambda, const Point& x, const Point& y) {
            KernelConfig c;
            c.lambda = lambda;
            const double a = green_normal_derivative(dom, c, x, y);
            const double b = green_normal_derivative_quadrature(dom, c, x, y);
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-12));
        };
        gn(iv, 1.0, {0.3}, {0.0});
        gn(hl, 1.0, {0.8}, {0.0});
        gn(ball, 0.0, {0.2, 0.1}, {std::cos(2.0), std::sin(2.0)});
        report("resolvent boundary derivative vs time quadrature", worst <= 1e-8, worst);
    }

    os << "[info] half-space Fourier variants, m=2 (identical at m=1): discrepancy "
       << fmt_g(fourier_variant_discrepancy(2, 0.05, {0.3, 0.0, 0.0}, {0.5, 0.5})) << " at t=0.05, "
       << fmt_g(fourier_variant_discrepancy(2, 0.2, {0.3, 0.0, 0.0}, {0.5, 0.5})) << " at t=0.2\n";
    os << "[info] half-space tangential truncation tail, R=20 T=1: "
       << fmt_g(hs.halfspace_truncation_tail(20.0, 1.0)) << "\n";
    os << (all_ok ? "kernel selftest: PASS\n" : "kernel selftest: FAIL\n");
    return all_ok;
}

}  // namespace dnoise
