// Acceptance gate: one line per criterion, exit 0 iff every line is a PASS.
// Experiment runs land in acceptance_out/runA; the determinism criterion
// replays every recorded config into runB and compares bytes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dnoise/dirichlet.hpp"
#include "dnoise/harness.hpp"

using namespace dnoise;
namespace fs = std::filesystem;

namespace {

int g_passed = 0;
int g_total = 0;
std::vector<ExperimentConfig> g_replay;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion(const std::string& name, const std::function<void(std::string&)>& body) {
    ++g_total;
    std::string why;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(why);
    } catch (const std::exception& e) {
        if (!why.empty()) why += "; ";
        why += std::string("exception: ") + e.what();
    }
    const double dt = seconds_since(t0);
    if (why.empty()) {
        ++g_passed;
        std::printf("[PASS] %s (%.2fs)\n", name.c_str(), dt);
    } else {
        if (why.size() > 600) why = why.substr(0, 600) + "...";
        std::printf("[FAIL] %s (%.2fs): %s\n", name.c_str(), dt, why.c_str());
    }
    std::fflush(stdout);
}

void require(std::string& why, bool ok, const std::string& msg) {
    if (ok) return;
    if (!why.empty()) why += "; ";
    why += msg;
}

ExperimentConfig run_a(std::string& why, ExperimentConfig cfg) {
    cfg.out_dir = "acceptance_out/runA";
    const RunResult res = run_experiment(cfg);
    if (!res.pass) {
        std::string detail = cfg.experiment;
        if (!cfg.domain.empty()) detail += "/" + cfg.domain + "/" + cfg.noise;
        for (const auto& f : res.failures) detail += "; " + f;
        require(why, false, detail);
    }
    g_replay.push_back(cfg);
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    fs::remove_all("acceptance_out");

    criterion("01 kernel-selftest", [](std::string& why) {
        const auto t0 = std::chrono::steady_clock::now();
        std::ostringstream os;
        const bool ok = kernel_selftest(os);
        const double dt = seconds_since(t0);
        require(why, ok, "selftest reported a failing check:\n" + os.str());
        require(why, dt < 10.0, "selftest exceeded 10s");
    });

    criterion("02 gaussian-envelope-fit", [](std::string& why) {
        run_a(why, default_config("gaussian-bound-fit"));
    });

    criterion("03 dirichlet-maps", [](std::string& why) {
        const KernelConfig kc0;
        const Domain iv = Domain::interval(0.0, 1.0);
        for (int i = 1; i <= 10; ++i) {
            const double x = i / 11.0;
            const double got = dirichlet_map(iv, kc0, TwoPointData{1.0, 3.0}, {x});
            require(why, std::abs(got - (1.0 + 2.0 * x)) <= 1e-12,
                    "interval affine map off at x=" + std::to_string(x));
        }
        const Domain hl = Domain::half_line();
        KernelConfig kc1;
        kc1.lambda = 1.0;
        for (int i = 1; i <= 10; ++i) {
            const double x = 0.3 * i;
            const double got = dirichlet_map(hl, kc1, ScalarData{2.0}, {x});
            require(why, std::abs(got - 2.0 * std::exp(-x)) <= 1e-12,
                    "half-line map off at x=" + std::to_string(x));
        }

        const Domain ball = Domain::unit_ball(2);
        SampledData ones;
        ones.quad = ball.boundary_quadrature(512);
        ones.values.assign(ones.quad.nodes.size(), 1.0);
        for (const Point& x : {Point{0.0, 0.0}, Point{0.5, 0.2}, Point{-0.7, 0.1}})
            require(why, std::abs(dirichlet_map(ball, kc0, ones, x) - 1.0) <= 1e-10,
                    "ball map of constant data is not 1");

        const auto iv_psis = test_functions(iv);
        const TwoPointData iv_gammas[5] = {
            {1.0, 3.0}, {0.5, -1.0}, {2.0, 0.0}, {-1.0, 1.0}, {0.0, 1.0}};
        for (int k = 0; k < 5; ++k) {
            const double r = weak_residual(iv, kc0, iv_gammas[k], iv_psis[k]);
            require(why, r < 1e-6, "interval weak residual " + std::to_string(r));
        }

        const auto ball_psis = test_functions(ball);
        const std::function<double(double)> traces[5] = {
            [](double) { return 1.0; },
            [](double th) { return std::cos(th); },
            [](double th) { return std::sin(th); },
            [](double th) { return 2.0 + std::cos(2.0 * th); },
            [](double th) { return 1.0 + 0.5 * std::sin(3.0 * th); }};
        for (int k = 0; k < 5; ++k) {
            SampledData g;
            g.quad = ones.quad;
            g.values.reserve(g.quad.nodes.size());
            for (const Point& y : g.quad.nodes)
                g.values.push_back(traces[k](std::atan2(y[1], y[0])));
            const double r = weak_residual(ball, kc0, g, ball_psis[k]);
            require(why, r < 1e-6, "ball weak residual " + std::to_string(r));
        }
    });

    criterion("04 distributional-laplacian", [](std::string& why) {
        const struct {
            LaplacianCase c;
            double oracle;
        } cases[3] = {{LaplacianCase::interval_psi1, -2.0 * M_PI},
                      {LaplacianCase::interval_psi2, -M_PI},
                      {LaplacianCase::halfline_exp, 1.25}};
        for (const auto& cs : cases) {
            const auto pc = distributional_laplacian_check(cs.c, default_phi(cs.c));
            require(why, std::abs(pc.lhs - pc.rhs) < 1e-8, "lhs/rhs mismatch");
            require(why, std::abs(pc.lhs - cs.oracle) < 1e-8,
                    "pairing value off its oracle " + std::to_string(cs.oracle));
        }
    });

    criterion("05 elliptic-ito-consistency", [](std::string& why) {
        const auto t0 = std::chrono::steady_clock::now();
        run_a(why, default_config("elliptic-consistency"));
        require(why, seconds_since(t0) < 60.0, "exceeded 60s");
    });

    criterion("06 parabolic-ito-isometry", [](std::string& why) {
        const auto t0 = std::chrono::steady_clock::now();
        auto cfg = default_config("parabolic-consistency");
        cfg.mc.workers = 8;
        run_a(why, cfg);
        require(why, seconds_since(t0) < 300.0, "exceeded 5min");
    });

    criterion("07 blowup-rate-suite", [](std::string& why) {
        const auto gaps = registry_gaps();
        for (const auto& g : gaps) require(why, false, "unregistered bound: " + g);
        for (const auto& row : bound_coverage_lock()) {
            if (row.check != CheckKind::ratio_stability) continue;
            run_a(why, default_config(row.experiment, row.domain_id, row.noise_id));
        }
    });

    criterion("08 heat-tail-bound", [](std::string& why) {
        run_a(why, default_config("heat-tail"));
    });

    criterion("09 fbm-covariance", [](std::string& why) {
        run_a(why, default_config("fbm-covariance"));
    });

    criterion("10 young-pathwise-bound", [](std::string& why) {
        run_a(why, default_config("young-bound"));
    });

    criterion("11 determinism-replay", [](std::string& why) {
        require(why, !g_replay.empty(), "nothing recorded to replay");
        for (ExperimentConfig cfg : g_replay) {
            cfg.out_dir = "acceptance_out/runB";
            cfg.csv_path.clear();
            cfg.json_path.clear();
            const RunResult res = run_experiment(cfg);
            const fs::path b = res.csv_path;
            const fs::path a = fs::path("acceptance_out/runA") / b.filename();
            if (slurp(a.string()) != slurp(b.string()) || fs::file_size(a) == 0)
                require(why, false, "csv mismatch for " + b.filename().string());
        }
    });

    std::printf("%d/%d acceptance criteria passed\n", g_passed, g_total);
    return g_passed == g_total ? 0 : 1;
}
