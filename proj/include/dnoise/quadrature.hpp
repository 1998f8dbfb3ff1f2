#pragma once

#include <functional>
#include <vector>

namespace dnoise {

// Gauss-Legendre rule on [-1,1]; nodes ascending.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached; thread-safe. n in [1, 512].
const QuadRule& gauss_legendre(int n);

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadRule& rule);

// One rule application per consecutive pair of edges.
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, const QuadRule& rule);

// edges[0] = lo, edges[n] = hi, geometric spacing; n >= 1, lo > 0
std::vector<double> log_edges(double lo, double hi, int n);

// upper incomplete gamma for integer order:
//   Gamma(n, z) = (n-1)! e^{-z} sum_{k<n} z^k / k!
double upper_gamma_int(int n, double z);

// E_1(x) = int_x^inf e^{-u}/u du, x > 0
double exp_integral_e1(double x);

}  // namespace dnoise
