#include "dnoise/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dnoise/errors.hpp"
#include "dnoise/quadrature.hpp"

namespace dnoise {

TimeGrid TimeGrid::uniform(double horizon, int n) {
    if (!(horizon > 0.0) || n < 1)
        throw std::invalid_argument("TimeGrid::uniform: horizon > 0, n >= 1 required");
    TimeGrid g;
    g.scheme = GridScheme::uniform;
    g.nodes.resize(n);
    for (int i = 0; i < n; ++i) g.nodes[i] = horizon * (i + 1) / n;
    g.nodes.back() = horizon;
    return g;
}

TimeGrid TimeGrid::log_spaced(double t_min, double horizon, int n) {
    if (!(t_min > 0.0) || !(horizon > t_min) || n < 2)
        throw std::invalid_argument("TimeGrid::log_spaced: need 0 < t_min < horizon, n >= 2");
    TimeGrid g;
    g.scheme = GridScheme::log_spaced;
    g.nodes = log_edges(t_min, horizon, n - 1);
    return g;
}

void TimeGrid::validate() const {
    if (nodes.empty()) throw std::invalid_argument("TimeGrid: empty");
    double prev = 0.0;
    for (double t : nodes) {
        if (!(t > prev)) throw std::invalid_argument("TimeGrid: nodes must be strictly increasing and positive");
        prev = t;
    }
}

double BoundaryQuadrature::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

void BoundaryQuadrature::validate() const {
    if (nodes.size() != weights.size())
        throw std::invalid_argument("BoundaryQuadrature: nodes/weights size mismatch");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("BoundaryQuadrature: weights must be positive");
}

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("Domain::interval: a < b required");
    Domain d;
    d.kind_ = DomainKind::interval;
    d.dim_ = 1;
    d.a_ = a;
    d.b_ = b;
    return d;
}

Domain Domain::half_line() {
    Domain d;
    d.kind_ = DomainKind::half_line;
    d.dim_ = 1;
    return d;
}

Domain Domain::half_space(int m) {
    if (m < 1) throw std::invalid_argument("Domain::half_space: m >= 1 required");
    Domain d;
    d.kind_ = DomainKind::half_space;
    d.dim_ = m + 1;
    return d;
}

Domain Domain::unit_ball(int d) {
    if (d < 1) throw std::invalid_argument("Domain::unit_ball: d >= 1 required");
    Domain dom;
    dom.kind_ = DomainKind::unit_ball;
    dom.dim_ = d;
    return dom;
}

double Domain::a() const {
    if (kind_ != DomainKind::interval) throw std::invalid_argument("Domain::a: interval only");
    return a_;
}

double Domain::b() const {
    if (kind_ != DomainKind::interval) throw std::invalid_argument("Domain::b: interval only");
    return b_;
}

std::string Domain::id() const {
    switch (kind_) {
        case DomainKind::interval: return "interval";
        case DomainKind::half_line: return "halfline";
        case DomainKind::half_space: return "halfspace" + std::to_string(dim_ - 1);
        case DomainKind::unit_ball: return "ball" + std::to_string(dim_);
    }
    return "?";
}

void Domain::check_dim(const Point& x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("Domain: point has dimension " + std::to_string(x.size()) +
                                    ", expected " + std::to_string(dim_));
}

bool Domain::contains(const Point& x) const {
    check_dim(x);
    switch (kind_) {
        case DomainKind::interval: return x[0] > a_ && x[0] < b_;
        case DomainKind::half_line: return x[0] > 0.0;
        case DomainKind::half_space: return x[0] > 0.0;
        case DomainKind::unit_ball: {
            double r2 = 0.0;
            for (double c : x) r2 += c * c;
            return r2 < 1.0;
        }
    }
    return false;
}

double Domain::dist_to_boundary(const Point& x) const {
    if (!contains(x)) throw std::domain_error("dist_to_boundary: point not in the open domain");
    switch (kind_) {
        case DomainKind::interval: return std::min(x[0] - a_, b_ - x[0]);
        case DomainKind::half_line: return x[0];
        case DomainKind::half_space: return x[0];
        case DomainKind::unit_ball: {
            double r2 = 0.0;
            for (double c : x) r2 += c * c;
            return 1.0 - std::sqrt(r2);
        }
    }
    return 0.0;
}

BoundaryQuadrature Domain::boundary_quadrature(int n, std::optional<double> truncation_radius) const {
    if (n < 1) throw std::invalid_argument("boundary_quadrature: n >= 1 required");
    BoundaryQuadrature q;
    switch (kind_) {
        case DomainKind::interval:
            q.nodes = {{a_}, {b_}};
            q.weights = {1.0, 1.0};
            break;
        case DomainKind::half_line:
            q.nodes = {{0.0}};
            q.weights = {1.0};
            break;
        case DomainKind::half_space: {
            const int m = dim_ - 1;
            const double R = truncation_radius.value_or(20.0);
            if (!(R > 0.0)) throw ConfigError("boundary_quadrature: truncation radius must be positive");
            // nodes carry the full ambient coordinates (leading 0) so they
            // can be fed to the kernels directly
            if (m == 1) {
                const QuadRule& rule = gauss_legendre(n);
                for (int i = 0; i < n; ++i) {
                    q.nodes.push_back({0.0, R * rule.nodes[i]});
                    q.weights.push_back(R * rule.weights[i]);
                }
            } else if (m == 2) {
                const int p = std::max(2, static_cast<int>(std::lround(std::sqrt(double(n)))));
                const QuadRule& rule = gauss_legendre(p);
                for (int i = 0; i < p; ++i)
                    for (int j = 0; j < p; ++j) {
                        q.nodes.push_back({0.0, R * rule.nodes[i], R * rule.nodes[j]});
                        q.weights.push_back(R * R * rule.weights[i] * rule.weights[j]);
                    }
            } else {
                throw ConfigError("boundary_quadrature: half-space supported for m in {1,2}");
            }
            break;
        }
        case DomainKind::unit_ball: {
            if (dim_ == 1) {
                q.nodes = {{-1.0}, {1.0}};
                q.weights = {1.0, 1.0};
            } else if (dim_ == 2) {
                // trapezoid on the circle: spectrally accurate for smooth
                // periodic integrands; node 0 sits at (1,0)
                for (int i = 0; i < n; ++i) {
                    const double th = 2.0 * M_PI * i / n;
                    q.nodes.push_back({std::cos(th), std::sin(th)});
                    q.weights.push_back(2.0 * M_PI / n);
                }
            } else if (dim_ == 3) {
                const int p = std::max(2, static_cast<int>(std::lround(std::sqrt(n / 2.0))));
                const QuadRule& rule = gauss_legendre(p);  // u = cos(polar)
                const int nth = 2 * p;
                for (int i = 0; i < p; ++i) {
                    const double u = rule.nodes[i];
                    const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
                    for (int j = 0; j < nth; ++j) {
                        const double th = 2.0 * M_PI * j / nth;
                        q.nodes.push_back({su * std::cos(th), su * std::sin(th), u});
                        q.weights.push_back(rule.weights[i] * 2.0 * M_PI / nth);
                    }
                }
            } else {
                throw ConfigError("boundary_quadrature: ball supported for d in {1,2,3}");
            }
            break;
        }
    }
    q.validate();
    return q;
}

std::vector<Point> Domain::normal_probe_line(const Point& anchor,
                                             const std::vector<double>& dists) const {
    check_dim(anchor);
    const double tol = 1e-12;
    std::vector<Point> out;
    out.reserve(dists.size());
    switch (kind_) {
        case DomainKind::interval: {
            const bool at_a = std::abs(anchor[0] - a_) <= tol;
            const bool at_b = std::abs(anchor[0] - b_) <= tol;
            if (!at_a && !at_b) throw std::invalid_argument("normal_probe_line: anchor not on boundary");
            const double reach = 0.5 * (b_ - a_);
            for (double s : dists) {
                if (!(s > 0.0)) throw std::invalid_argument("normal_probe_line: distances must be positive");
                if (s > reach + tol)
                    throw std::domain_error("normal_probe_line: distance exceeds inward reach");
                out.push_back({at_a ? a_ + s : b_ - s});
            }
            break;
        }
        case DomainKind::half_line: {
            if (std::abs(anchor[0]) > tol) throw std::invalid_argument("normal_probe_line: anchor not on boundary");
            for (double s : dists) {
                if (!(s > 0.0)) throw std::invalid_argument("normal_probe_line: distances must be positive");
                out.push_back({s});
            }
            break;
        }
        case DomainKind::half_space: {
            if (std::abs(anchor[0]) > tol) throw std::invalid_argument("normal_probe_line: anchor not on boundary");
            for (double s : dists) {
                if (!(s > 0.0)) throw std::invalid_argument("normal_probe_line: distances must be positive");
                Point p = anchor;
                p[0] = s;
                out.push_back(p);
            }
            break;
        }
        case DomainKind::unit_ball: {
            double r2 = 0.0;
            for (double c : anchor) r2 += c * c;
            const double r = std::sqrt(r2);
            if (std::abs(r - 1.0) > tol) throw std::invalid_argument("normal_probe_line: anchor not on boundary");
            for (double s : dists) {
                if (!(s > 0.0)) throw std::invalid_argument("normal_probe_line: distances must be positive");
                if (s > 1.0 + tol)
                    throw std::domain_error("normal_probe_line: distance exceeds inward reach");
                Point p(anchor);
                for (double& c : p) c *= (1.0 - s) / r;
                out.push_back(p);
            }
            break;
        }
    }
    return out;
}

double Domain::halfspace_truncation_tail(double radius, double t_max) {
    if (!(radius > 0.0) || !(t_max > 0.0))
        throw std::invalid_argument("halfspace_truncation_tail: positive radius and t_max required");
    // mass of a centered heat kernel outside [-R,R] at its widest time
    return std::erfc(radius / (2.0 * std::sqrt(t_max)));
}

}  // namespace dnoise
