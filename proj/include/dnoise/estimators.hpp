#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dnoise/rng.hpp"

namespace dnoise {

struct FieldEstimate {
    double mean = 0.0;
    double second_moment = 0.0;
    double std_error = 0.0;  // stderr of the second moment via the fourth moment
    std::size_t n = 0;
};

// Deterministic parallel Monte Carlo. The index space is cut into 256 fixed
// blocks, block b drawing from split_seed(seed, b); workers claim blocks but
// the merge happens in block order, so any worker count gives bit-identical
// results. A non-finite sample aborts with the offending block seed.
FieldEstimate mc_second_moment(const std::function<double(Rng&)>& sampler, std::size_t n,
                               std::uint64_t seed, int workers = 1);

// Least-squares power-law fit and bound-ratio verdict over a probe grid.
// distances must be strictly decreasing; nonpositive values are dropped with
// a warning (at least 4 must survive). log_square_mode additionally fits
// value = C (1 + log+ 1/dist)^2 through the origin and stores C.
struct RateReport {
    std::vector<double> distances;
    std::vector<double> values;
    std::vector<double> ratios;  // value / bound rhs, filled by check_bound
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    double log_square_coeff = 0.0;
    bool log_square_mode = false;
    double bound_constant = 0.0;  // max ratio over the probes
    bool bound_stable = false;
    std::string bound_id;
    int excluded = 0;
};

RateReport fit_blowup(const std::vector<double>& distances, const std::vector<double>& values,
                      bool log_square_mode = false);

// bound_rhs holds the statement's right side evaluated at each probe. The
// bound "holds" when the max ratio is finite and not monotonically growing by
// more than 25% over the three smallest distances (the constant is an
// existence statement, so only drift toward the boundary falsifies it).
RateReport check_bound(const std::vector<double>& distances, const std::vector<double>& values,
                       const std::vector<double>& bound_rhs, const std::string& bound_id,
                       bool log_square_mode = false);

// int_0^t s^{-d-1} e^{-r^2/(2 K2 s)} ds: closed form (2K2/r^2)^d Gamma(d, z)
// with z = r^2/(2 K2 t), checked against direct quadrature, and the uniform
// tail bound sup_r LHS r^{2d} <= Gamma(d) (2 K2)^d.
struct HeatTailReport {
    double max_scaled = 0.0;        // sup over r_grid of LHS * r^{2d}
    double limit = 0.0;             // Gamma(d) (2 K2)^d
    double worst_quad_error = 0.0;  // max relative closed-vs-quadrature gap
    bool ok = false;
};

HeatTailReport check_heat_tail_bound(int d, double k2, double t, const std::vector<double>& r_grid);

// Registry of every blow-up statement the suite must exercise. The harness
// enumerates this table; an experiment matrix that misses a row fails.
enum class CheckKind { ratio_stability, pathwise_inequality };

struct BoundRegistryRow {
    std::string bound_id;
    std::string experiment;
    std::string domain_id;
    std::string noise_id;
    CheckKind check = CheckKind::ratio_stability;
    std::string anchor;  // shape of the right-hand side being verified
};

const std::vector<BoundRegistryRow>& bound_coverage_lock();

}  // namespace dnoise
