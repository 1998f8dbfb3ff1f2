#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dnoise/domain.hpp"

namespace dnoise {

// Orthonormal families in L^2(nu) used to expand cylindrical noises.
//   automatic:          resolved per domain (Fourier on the circle, node
//                       indicators on counting boundaries)
//   fourier_circle:     1/sqrt(2pi), cos(k th)/sqrt(pi), sin(k th)/sqrt(pi)
//   node_indicator:     e_k = 1{y = node_k} / sqrt(w_k)
enum class BasisKind { automatic, fourier_circle, node_indicator };

// Gaussian white noise on L^2(nu); nu given by its boundary discretization.
struct WhiteNoiseSpec {
    BoundaryQuadrature nu;
    BasisKind basis = BasisKind::automatic;
    int truncation = 0;  // number of basis elements kept
};

// Cylindrical fractional Wiener process: one fBM(hurst) per basis element.
struct CylFractionalSpec {
    BoundaryQuadrature nu;
    BasisKind basis = BasisKind::automatic;
    int truncation = 0;
    double hurst = 0.5;
};

struct DiscreteSignedMeasure {
    std::vector<Point> atoms;
    std::vector<double> weights;  // signed
    double total_variation() const;
};

// xi = sum_k beta_k(t) nu_k with independent fBM(hurst) factors; requires
// sum_k ||nu_k||_Var^2 < inf (always true for a finite list, recorded anyway).
struct SignedSeriesSpec {
    std::vector<DiscreteSignedMeasure> measures;
    double hurst = 0.5;
    double sum_variation_sq() const;
};

// Spatially homogeneous Wiener noise on the half-space boundary R^m with a
// symmetric discrete spectral measure: atoms must come in +/-y pairs (or sit
// at the origin).
struct SpectralAtom {
    std::vector<double> freq;
    double weight = 0.0;
};

struct HomogeneousSpec {
    std::vector<SpectralAtom> atoms;
    int boundary_dim = 1;  // m
    void validate() const;  // symmetry + positive weights
    // independent real channels: one pair (cos, sin) per +/- atom pair, one
    // real channel per origin atom
    int channel_count() const;
};

// Deterministic mark function rho(y) for the compound Poisson family.
struct MarkSpec {
    enum class Kind { constant, power };  // power: c0 + c1 |y|^p
    Kind kind = Kind::constant;
    double c0 = 1.0, c1 = 0.0, p = 0.0;
    double operator()(const Point& y) const;
};

// Poisson random measure with discrete boundary intensity mu (atoms/weights)
// and space-time intensity dt x mu on the parabolic side.
struct PoissonSpec {
    BoundaryQuadrature intensity;
    MarkSpec mark;
    double total_mass() const;
};

using BoundaryNoiseSpec =
    std::variant<WhiteNoiseSpec, CylFractionalSpec, SignedSeriesSpec, HomogeneousSpec, PoissonSpec>;

std::string noise_family_id(const BoundaryNoiseSpec& spec);

// Independent real channels for the homogeneous family: one (cos, sin) pair
// per +/- atom pair with coefficient sqrt(2w), one real channel per origin
// atom with coefficient sqrt(w). Ordering is deterministic.
struct HomogeneousChannel {
    std::vector<double> freq;
    double coeff = 0.0;
    bool is_sin = false;
};
std::vector<HomogeneousChannel> homogeneous_channels(const HomogeneousSpec& spec);

struct PoissonPoint {
    double time = 0.0;  // 0 for spatial-only draws
    Point location;
    double mark = 1.0;
};

// One sample of a boundary noise. Which members are populated depends on the
// family: Gaussian coefficient families fill `coefficients`, path families
// fill `paths` (one row per channel, one column per grid node), the Poisson
// family fills `points`.
struct NoiseRealization {
    std::vector<double> coefficients;
    Eigen::MatrixXd paths;
    std::vector<PoissonPoint> points;
    std::uint64_t seed = 0;
};

// fBM covariance R(s,t) = (s^{2H} + t^{2H} - |s-t|^{2H}) / 2 on the grid nodes.
Eigen::MatrixXd fbm_covariance(double hurst, const TimeGrid& grid);

// Dense-Cholesky path sampler; the factor is computed once per (hurst, grid).
// hurst = 1/2 short-circuits to independent increments. A failed factorization
// is retried with diagonal jitter <= 1e-12, then reported.
class FbmSampler {
  public:
    FbmSampler(double hurst, const TimeGrid& grid);
    // k independent paths, row-per-path, column-per-node
    Eigen::MatrixXd draw(int k, std::uint64_t seed) const;
    double jitter() const { return jitter_; }

  private:
    double hurst_;
    TimeGrid grid_;
    Eigen::MatrixXd chol_;  // lower factor (empty for hurst = 1/2)
    double jitter_ = 0.0;
};

// --- samplers (pure functions of spec + seed) ---------------------------

// K i.i.d. standard normal coefficients (white noise, elliptic pairing).
NoiseRealization sample_elliptic_white(const WhiteNoiseSpec& spec, std::uint64_t seed);

// Elliptic-side draw for any family: white/cylindrical -> coefficients,
// signed series -> one coefficient per measure, homogeneous -> one per
// channel, Poisson -> spatial point draw.
NoiseRealization sample_elliptic(const BoundaryNoiseSpec& spec, std::uint64_t seed);

NoiseRealization sample_fbm_paths(double hurst, const TimeGrid& grid, int k, std::uint64_t seed);

// Space-time Poisson draw on (0, horizon] x boundary: point count is
// Poisson(horizon * total_mass), locations i.i.d. from the normalized
// intensity, marks rho(location).
NoiseRealization sample_poisson_measure(const PoissonSpec& spec, double horizon,
                                        std::uint64_t seed);

// Spatial-only Poisson draw (elliptic side), count ~ Poisson(total_mass).
NoiseRealization sample_poisson_boundary(const PoissonSpec& spec, std::uint64_t seed);

// Brownian channel paths for the homogeneous family on the given grid.
NoiseRealization sample_homogeneous_paths(const HomogeneousSpec& spec, const TimeGrid& grid,
                                          std::uint64_t seed);

// basis bookkeeping ------------------------------------------------------
BasisKind resolve_basis(const Domain& dom, BasisKind requested, const BoundaryQuadrature& nu);
int basis_dimension(BasisKind basis, const BoundaryQuadrature& nu);  // max usable elements
double basis_eval(BasisKind basis, const BoundaryQuadrature& nu, int k, const Point& y);

}  // namespace dnoise
