#include "dnoise/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dnoise {

namespace {

QuadRule build_gauss_legendre(int n) {
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    // Newton on P_n from the Chebyshev-angle initial guess; symmetric pairs.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const QuadRule& gauss_legendre(int n) {
    if (n < 1 || n > 512) throw std::invalid_argument("gauss_legendre: n out of range");
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadRule& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, const QuadRule& rule) {
    if (edges.size() < 2) throw std::invalid_argument("integrate_panels: need >= 2 edges");
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k)
        acc += integrate(f, edges[k], edges[k + 1], rule);
    return acc;
}

std::vector<double> log_edges(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 1)
        throw std::invalid_argument("log_edges: need 0 < lo < hi, n >= 1");
    std::vector<double> e(n + 1);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i <= n; ++i)
        e[i] = std::exp(llo + (lhi - llo) * i / n);
    e.front() = lo;
    e.back() = hi;
    return e;
}

double upper_gamma_int(int n, double z) {
    if (n < 1) throw std::invalid_argument("upper_gamma_int: n >= 1 required");
    if (z < 0.0) throw std::invalid_argument("upper_gamma_int: z >= 0 required");
    double fact = 1.0, term = 1.0, sum = 1.0;  // sum_{k<n} z^k/k!, fact = (n-1)!
    for (int k = 1; k < n; ++k) {
        fact *= k;
        term *= z / k;
        sum += term;
    }
    return fact * std::exp(-z) * sum;
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("exp_integral_e1: x > 0 required");
    return -std::expint(-x);
}

}  // namespace dnoise
