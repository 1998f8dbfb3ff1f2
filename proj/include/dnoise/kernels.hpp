#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "dnoise/domain.hpp"

namespace dnoise {

// Panel layout for the Laplace-transform quadrature
//   G_lambda(x,y) = int_0^inf e^{-lambda t} G(t,x,y) dt
// on a log-spaced grid. An explicit edge grid overrides the automatic one.
struct LaplaceQuadrature {
    int panels_per_decade = 8;
    int gl_order = 16;
    std::optional<TimeGrid> grid;
};

struct KernelConfig {
    double lambda = 0.0;
    int series_terms = 64;         // interval eigenseries length
    double eigen_switch = 0.05;    // interval: eigenseries for t >= eigen_switch * L^2
    LaplaceQuadrature laplace;
};

// Transition density of Brownian motion killed at the boundary.
// Interval: method of images for small t, sine eigenseries (series_terms
// terms) for t >= eigen_switch * L^2; the two agree to ~1e-12 at the switch.
// Half-line / half-space: single reflection of the Gaussian.
// Ball d=2: Bessel eigenseries over zeros j_{n,k} <= j_max; requires
// t >= 45 / j_max^2 (about 3.2e-3), else std::invalid_argument.
double heat_kernel(const Domain& dom, const KernelConfig& cfg, double t,
                   const Point& x, const Point& y);

// Explicit interval routes, exposed for cross-validation.
double interval_heat_kernel_image(const Domain& dom, double t, const Point& x, const Point& y);
double interval_heat_kernel_eigen(const Domain& dom, int terms, double t, const Point& x, const Point& y);

// dG/dn(t, x, y) in the boundary variable y, normal pointing into the domain.
// Closed forms: half-line (x/t) Gamma_1(t,x); interval endpoint series; ball
// d=2 Bessel series. The half-space value carries a leading minus sign,
//   -(x_0/t) Gamma_{m+1}(t, x - y),
// matching the source convention for that domain; all quantitative uses are
// squares or moduli.
double heat_kernel_normal_derivative(const Domain& dom, const KernelConfig& cfg, double t,
                                     const Point& x, const Point& y_boundary);

// Resolvent kernel and its inward normal derivative in y. Closed forms:
//   half-line lambda>0:  (2 sqrt(lambda))^{-1} (e^{-sqrt(l)|x-y|} - e^{-sqrt(l)(x+y)}),
//                        dG/dn = e^{-sqrt(lambda) x};
//   interval:            sinh product form (affine weights at lambda = 0);
//   ball lambda=0:       log form, dG/dn = Poisson kernel
//                        Gamma(d/2)/(2 pi^{d/2}) (1-|x|^2)/|x-y|^d;
//   half-space m=1:      Bessel-K form.
// Everything else goes through the Laplace quadrature. lambda must be > 0 on
// unbounded domains (ConfigError otherwise).
double green_kernel(const Domain& dom, const KernelConfig& cfg, const Point& x, const Point& y);
double green_normal_derivative(const Domain& dom, const KernelConfig& cfg,
                               const Point& x, const Point& y_boundary);

// Quadrature routes used to validate the closed forms. For the ball the
// (0, t_min) window below the eigenseries floor is closed with the free-space
// integral; the neglected boundary correction is O(E_1((d_x+d_y)^2/(4 t_min))),
// so callers should keep dist(x) + dist(y) >= 0.75.
double green_kernel_quadrature(const Domain& dom, const KernelConfig& cfg,
                               const Point& x, const Point& y);
double green_normal_derivative_quadrature(const Domain& dom, const KernelConfig& cfg,
                                          const Point& x, const Point& y_boundary);

// Spatial Fourier transform (tangential variable) of dG/dn on the half-space:
//   -(x_0 / (2 sqrt(pi) t^{3/2})) e^{-x_0^2/(4t)} e^{i<x_tan, eta>} e^{-decay}
// as_printed:         decay = ((2t)^m / 2) |eta|^2   (source form)
// gaussian_transform: decay = t |eta|^2              (direct transform)
// The two coincide for m = 1.
enum class FourierVariant { as_printed, gaussian_transform };
std::complex<double> halfspace_fourier_normal_derivative(int m, double t, const Point& x,
                                                         const std::vector<double>& eta,
                                                         FourierVariant variant);
double fourier_variant_discrepancy(int m, double t, const Point& x,
                                   const std::vector<double>& eta_tail);

// Derivative order for the Gaussian-envelope fit: dt applications of d/dt and
// dx[i] applications of d/dx_i. Supported: dt <= 1, sum(dx) <= 2, and
// dt + sum(dx) <= 2 (ball: dt only).
struct DerivOrder {
    int dt = 0;
    std::vector<int> dx;
};

struct ProbeSet {
    std::vector<double> t;
    std::vector<Point> x;
    std::vector<Point> y;  // full tensor product t * x * y
};

// Fits (K1, K2) in  |d^n_t d^alpha_x G| <= K1 t^{-(d+|alpha|+2n)/2} e^{-|x-y|^2/(K2 t)}
// by scanning K2 over a fixed grid and taking the smallest max-ratio K1.
// success requires a finite K1 for some scanned K2.
struct GaussianBoundFit {
    double k1 = 0.0;
    double k2 = 0.0;
    bool success = false;
    double worst_t = 0.0;
    Point worst_x, worst_y;
};

GaussianBoundFit check_gaussian_bound(const Domain& dom, const KernelConfig& cfg,
                                      const DerivOrder& order, const ProbeSet& probes);

// Total heat mass int_O G(t,x,.) dy for the disk, reduced to the radial n = 0
// series (the angular integral kills every other mode):
//   sum_k 2 e^{-j_{0k}^2 t} J_0(j_{0k} r) / (j_{0k} J_1(j_{0k})).
double disk_heat_mass(double t, double r);

// Bessel zeros j_{n,k} <= j_max for the disk eigenseries (exposed for tests).
std::vector<double> disk_bessel_zeros(int n, double j_max);

}  // namespace dnoise
