#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dnoise {

using Point = std::vector<double>;

enum class DomainKind { interval, half_line, half_space, unit_ball };

enum class GridScheme { uniform, log_spaced };

// Strictly increasing, strictly positive time nodes. When used as a stepping
// grid the nodes are the right edges of the cells and s = 0 is implicit.
struct TimeGrid {
    std::vector<double> nodes;
    GridScheme scheme = GridScheme::uniform;

    static TimeGrid uniform(double horizon, int n);
    static TimeGrid log_spaced(double t_min, double horizon, int n);
    void validate() const;
};

// Discretization of a measure on the (possibly truncated) boundary: nodes on
// the boundary, weights > 0. Counting-measure boundaries (interval endpoints,
// half-line origin) carry unit weights.
struct BoundaryQuadrature {
    std::vector<Point> nodes;
    std::vector<double> weights;

    double weight_sum() const;
    void validate() const;
};

// The four canonical domains:
//   interval (a,b), half-line (0,inf), half-space (0,inf) x R^m,
//   open unit ball |x| < 1 in R^d.
class Domain {
  public:
    static Domain interval(double a, double b);
    static Domain half_line();
    static Domain half_space(int m);
    static Domain unit_ball(int d);

    DomainKind kind() const { return kind_; }
    int dimension() const { return dim_; }
    bool bounded() const {
        return kind_ == DomainKind::interval || kind_ == DomainKind::unit_ball;
    }
    double a() const;
    double b() const;
    std::string id() const;  // "interval", "halfline", "halfspace<m>", "ball<d>"

    bool contains(const Point& x) const;  // strict interior
    double dist_to_boundary(const Point& x) const;

    // Truncated boundaries (half-space) integrate over [-R, R]^m,
    // R = truncation_radius (default 20).
    BoundaryQuadrature boundary_quadrature(
        int n, std::optional<double> truncation_radius = std::nullopt) const;

    // Points at the given distances inward from a boundary anchor along the
    // inward normal. Each distance must satisfy dist_to_boundary(p) == dist,
    // hence must not exceed the inward reach ((b-a)/2 for the interval, 1 for
    // the ball).
    std::vector<Point> normal_probe_line(const Point& anchor,
                                         const std::vector<double>& dists) const;

    // Crude bound on the boundary-integral mass ignored by truncating the
    // half-space boundary at radius R, for kernels with Gaussian tails of
    // scale t_max (reported alongside truncated-quadrature results).
    static double halfspace_truncation_tail(double radius, double t_max);

  private:
    Domain() = default;
    void check_dim(const Point& x) const;

    DomainKind kind_ = DomainKind::interval;
    int dim_ = 1;
    double a_ = 0.0, b_ = 1.0;  // interval only
};

}  // namespace dnoise
