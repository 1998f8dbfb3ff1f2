#pragma once

#include <complex>
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "dnoise/dirichlet.hpp"
#include "dnoise/kernels.hpp"
#include "dnoise/noise.hpp"

namespace dnoise {

// Time stepping for the stochastic convolution. Ito rules require hurst = 1/2
// (the sum is unbiased at any in-cell evaluation point; midpoint has
// second-order instead of first-order cell error in the second moment).
// young_midpoint is the Riemann-Stieltjes sum for hurst > 1/2 paths.
enum class StepRule { ito_left_point, ito_midpoint, young_midpoint };

// Backward-log grid on (0,t]: cells geometric in tau = t-s so the integrable
// kernel singularity at s -> t is resolved; uniform scheme falls back to
// TimeGrid::uniform.
TimeGrid convolution_grid(double t, int cells, GridScheme scheme, double tau_min_factor = 1e-3);

struct ConvolutionPlan {
    double t = 0.0;
    Point x;
    TimeGrid grid;  // right cell edges, last node == t
    StepRule rule = StepRule::ito_left_point;
    int channels = 0;
    Eigen::MatrixXd kernel_cache;  // (cells, channels), pairing at the rule's eval time
};

ConvolutionPlan make_convolution_plan(const Domain& dom, const KernelConfig& cfg,
                                      const BoundaryNoiseSpec& spec, double t, const Point& x,
                                      const TimeGrid& grid, StepRule rule);

// (e^{tA} u0)(x) by interior quadrature of the heat kernel.
double heat_semigroup(const Domain& dom, const KernelConfig& cfg, double t, const Point& x,
                      const std::function<double(const Point&)>& u0, int quad_n = 200);

// u_{xi,u0}(t,x) = (e^{tA} u0)(x) + sum_cells <dG/dn(t-s_j, x, .), dxi_j>.
// Path families read increments from realization.paths on the plan grid; the
// Poisson family sums kernel evaluations over its points (plan unused).
double mild_solution(const Domain& dom, const KernelConfig& cfg, const BoundaryNoiseSpec& spec,
                     const NoiseRealization& xi, const std::function<double(const Point&)>* u0,
                     double t, const Point& x, const ConvolutionPlan* plan);

// v_gamma(t,x) = <gamma, dG/dn(t,x,.)>: the elliptic pairing recipes with the
// heat kernel normal derivative at one fixed time. gamma is a realization
// snapshot (coefficients for the Gaussian families, points for Poisson).
double parabolic_field_v(const Domain& dom, const KernelConfig& cfg, const BoundaryNoiseSpec& spec,
                         const NoiseRealization& gamma, double t, const Point& x);

// Elliptic pairing coefficients c_k(x) = <dG_lambda/dn(x,.), basis_k>; the
// field value for a realization is the dot product with its coefficients.
std::vector<double> elliptic_coefficients(const Domain& dom, const KernelConfig& cfg,
                                          const BoundaryNoiseSpec& spec, const Point& x);
double elliptic_field(const Domain& dom, const KernelConfig& cfg, const BoundaryNoiseSpec& spec,
                      const NoiseRealization& xi, const Point& x);

// Exact second moments of the Gaussian fields (complete basis, not truncated):
//   white/cylindrical: int (dG/dn)^2 dnu            (elliptic)
//                      int_0^t int (dG/dn)^2 dnu ds (parabolic, hurst = 1/2)
//   signed series:     sum_k (int dG/dn dnu_k)^2 and its time integral
//   homogeneous:       spectral sums of |F dG/dn|^2
// ConfigError for the Poisson family (use campbell_second_moment) and for
// fractional hurst > 1/2 (no closed second moment; use young_bound).
double analytic_variance_elliptic(const Domain& dom, const KernelConfig& cfg,
                                  const BoundaryNoiseSpec& spec, const Point& x);
double analytic_variance_parabolic(const Domain& dom, const KernelConfig& cfg,
                                   const BoundaryNoiseSpec& spec, double t, const Point& x);

// E (int f dPi)^2 = int f^2 dm + (int f dm)^2 for the Poisson family
// (m = mu elliptic, dt x mu parabolic up to horizon t).
double campbell_second_moment(const Domain& dom, const KernelConfig& cfg, const PoissonSpec& spec,
                              const Point& x, std::optional<double> t = std::nullopt);

// 2 [ int f^2 dm + (int |f| dm)^2 ]: dominates the Campbell moment, shape of
// the Levy-family bound.
double levy_moment_bound(const Domain& dom, const KernelConfig& cfg, const PoissonSpec& spec,
                         const Point& x, std::optional<double> t = std::nullopt);

// Fourier transform of dG_lambda/dn on the half-space (m = 1 closed form
// -e^{i<x_tan,eta>} e^{-x_0 sqrt(lambda + |eta|^2)}; printed variant for
// m >= 2 via Laplace quadrature).
std::complex<double> halfspace_fourier_green(int m, const KernelConfig& cfg, const Point& x,
                                             const std::vector<double>& eta,
                                             FourierVariant variant = FourierVariant::as_printed);

// --- fractional (Young) machinery ---------------------------------------

// I_alpha(f) = int_0^t ( |f(r)| r^{-alpha} + alpha int_0^r |f(r)-f(q)| (r-q)^{-alpha-1} dq ) dr.
// The first term is integrated exactly-for-constants via v = r^{1-alpha};
// I_alpha(1) = t^{1-alpha}/(1-alpha).
double young_i_alpha(const std::function<double(double)>& f, double t, double alpha);

// Lambda_alpha(W) on a piecewise-linear path (W(0) = 0 prepended):
//   (Gamma(1-alpha) Gamma(alpha))^{-1} sup_{s<t} | (W(s)-W(t))(t-s)^{alpha-1}
//       + (1-alpha) int_s^t (W(s)-W(r)) (r-s)^{alpha-2} dr |
// with per-cell closed-form integrals; O(n^2) sweep over grid pairs.
double young_lambda_alpha(const TimeGrid& grid, const std::vector<double>& path, double alpha);

struct YoungBound {
    double integral_bound = 0.0;  // lambda_alpha * i_alpha
    double lambda_alpha = 0.0;
    double i_alpha = 0.0;
};

YoungBound young_bound(const std::function<double(double)>& f, const TimeGrid& grid,
                       const std::vector<double>& path, double alpha);

// midpoint Riemann-Stieltjes sum sum_j f(mid_j) (W(s_j) - W(s_{j-1}))
double path_integral_midpoint(const std::function<double(double)>& f, const TimeGrid& grid,
                              const std::vector<double>& path);

}  // namespace dnoise
