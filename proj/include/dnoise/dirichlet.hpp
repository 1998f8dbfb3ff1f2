#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "dnoise/domain.hpp"
#include "dnoise/kernels.hpp"

namespace dnoise {

// Deterministic boundary data. Noise realizations are paired with the kernels
// in the fields module; the harmonic/resolvent extension of a fixed gamma
// lives here.
struct TwoPointData {
    double at_a = 0.0;
    double at_b = 0.0;
};  // interval endpoints

struct ScalarData {
    double value = 0.0;
};  // half-line origin

struct SampledData {
    BoundaryQuadrature quad;
    std::vector<double> values;
};  // ball: gamma sampled at quadrature nodes

using BoundaryData = std::variant<TwoPointData, ScalarData, SampledData>;

// Dirichlet map D(gamma)(x) = int_bnd gamma(y) dG/dn(x,y) sigma(dy).
//   interval:  gamma_a (b-x)/L + gamma_b (x-a)/L at lambda = 0, sinh weights
//              for lambda > 0
//   half-line: gamma e^{-sqrt(lambda) x}, lambda > 0
//   ball:      Poisson integral, normalization calibrated against the
//              quadrature mass so that D(1) = 1 (lambda = 0 only)
double dirichlet_map(const Domain& dom, const KernelConfig& cfg, const BoundaryData& gamma,
                     const Point& x);

// Same pairing through the Laplace-transform quadrature of dG/dn
// (interval/half-line); validates the closed forms.
double dirichlet_map_quadrature(const Domain& dom, const KernelConfig& cfg,
                                const BoundaryData& gamma, const Point& x);

// Smooth test function vanishing on the boundary, with analytic Laplacian and
// inward normal derivative.
struct TestFunction {
    std::string name;
    std::function<double(const Point&)> value;
    std::function<double(const Point&)> laplacian;
    std::function<double(const Point&)> normal_derivative;  // at boundary points
};

// Built-in library: 5 functions each for interval, half-line, ball d=2.
std::vector<TestFunction> test_functions(const Domain& dom);

struct InteriorQuadrature {
    std::vector<Point> nodes;
    std::vector<double> weights;
};

// interval: Gauss-Legendre(n); half-line: panels on [0, 40]; ball d=2:
// radial Gauss-Legendre x angular trapezoid.
InteriorQuadrature interior_quadrature(const Domain& dom, int n);

// | (u, lap psi) + (gamma, dpsi/dn)_bnd - lambda (u, psi) |  with
// u = dirichlet_map(gamma). Zero (to quadrature accuracy) iff u solves the
// boundary problem weakly. Throws std::invalid_argument if psi fails to
// vanish on the boundary.
double weak_residual(const Domain& dom, const KernelConfig& cfg, const BoundaryData& gamma,
                     const TestFunction& psi);

// Distributional boundary-Laplacian identities on tau-test functions.
//   interval_psi1: int_0^1 phi'' dx           vs  -phi'(0) + phi'(1)
//   interval_psi2: int_0^1 x phi'' dx         vs  phi'(1)
//   halfline_exp:  phi'(0) + int e^{-x} phi   vs  the same pairing through an
//                  independent substitution quadrature (u = e^{-x})
enum class LaplacianCase { interval_psi1, interval_psi2, halfline_exp };

struct TestFunction1D {
    std::function<double(double)> value, deriv, deriv2;
};

TestFunction1D default_phi(LaplacianCase c);

struct PairingCheck {
    double lhs = 0.0, rhs = 0.0;
};

PairingCheck distributional_laplacian_check(LaplacianCase c, const TestFunction1D& phi);

}  // namespace dnoise
