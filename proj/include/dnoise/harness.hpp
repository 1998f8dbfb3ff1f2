#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dnoise/estimators.hpp"

namespace dnoise {

struct McConfig {
    std::size_t n = 20000;
    std::uint64_t seed = 20240901;
    int workers = 1;
};

// One experiment run. domain/noise are registry ids ("interval", "halfline",
// "halfspace1", "ball2"; "white", "signed-series", "homogeneous", "poisson"),
// empty for domain-free experiments.
struct ExperimentConfig {
    std::string experiment;
    std::string domain;
    std::string noise;
    double lambda = 0.0;  // resolvent shift; must be > 0 on unbounded domains
    double t = 0.1;       // parabolic horizon
    double hurst = 0.5;
    double alpha = 0.3;
    std::vector<double> distances;  // probe grid, strictly decreasing
    int cells = 512;                // convolution / path grid cells
    int pairs = 100;                // sampled pairs for the pathwise check
    McConfig mc;
    std::string out_dir = "out";
    std::string csv_path;  // derived from the names when empty
    std::string json_path;
};

ExperimentConfig default_config(const std::string& experiment, const std::string& domain = "",
                                const std::string& noise = "");
ExperimentConfig load_config(const std::string& path);  // strict keys, ConfigError on unknown
void validate_config(const ExperimentConfig& cfg);

struct ExperimentRegistryRow {
    std::string experiment;
    std::string domain_id;  // empty = domain-free
    std::string noise_id;
    std::string bound_id;  // "-" when the run verifies no blow-up statement
    std::string anchor;
};

// Every runnable (experiment, domain, noise) triple. Rows with a bound_id
// mirror bound_coverage_lock(); registry_gaps() lists lock rows missing from
// the registry (must be empty).
const std::vector<ExperimentRegistryRow>& experiment_registry();
std::vector<std::string> registry_gaps();
void list_experiments(std::ostream& os);

struct RunResult {
    bool pass = false;
    std::string csv_path;
    std::string json_path;
    std::vector<std::string> failures;
};

// Executes the experiment, writes the CSV (fixed columns: experiment, domain,
// dist, t, value, stderr, bound_rhs, ratio, N, seed; no timestamps, so equal
// seeds give byte-identical files) and the JSON summary (verdicts, fit
// reports, environment, timestamp).
RunResult run_experiment(const ExperimentConfig& cfg);

// Kernel invariants: image vs eigenseries, symmetry, Chapman-Kolmogorov,
// sub-Markov mass, finite-difference normal derivatives, resolvent closed
// forms vs quadrature, plus informational Fourier-variant and boundary
// truncation reports. Prints one line per check.
bool kernel_selftest(std::ostream& os);

}  // namespace dnoise
