#include "dnoise/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "dnoise/errors.hpp"
#include "dnoise/quadrature.hpp"

namespace dnoise {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kDiskJCap = 120.0;         // largest Bessel zero tabulated
constexpr double kSeriesCut = 46.0;         // keep modes with j^2 t <= this

double sq(double v) { return v * v; }

double dist2(const Point& x, const Point& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += sq(x[i] - y[i]);
    return s;
}

// one-coordinate Gaussian factor gamma(t,z) = (4 pi t)^{-1/2} e^{-z^2/4t}
double g1(double t, double z) {
    return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * M_PI * t);
}
double g1_z(double t, double z) { return -z / (2.0 * t) * g1(t, z); }
double g1_zz(double t, double z) {
    return (z * z / (4.0 * t * t) - 0.5 / t) * g1(t, z);
}
double g1_t(double t, double z) { return g1_zz(t, z); }  // 1-d heat equation
double g1_tz(double t, double z) {
    return g1(t, z) * z * (0.75 / (t * t) - z * z / (8.0 * t * t * t));
}

double g1_deriv(int k, double t, double z) {
    switch (k) {
        case 0: return g1(t, z);
        case 1: return g1_z(t, z);
        case 2: return g1_zz(t, z);
    }
    throw std::invalid_argument("g1_deriv: order out of range");
}
double g1_deriv_t(int k, double t, double z) {
    switch (k) {
        case 0: return g1_t(t, z);
        case 1: return g1_tz(t, z);
    }
    throw std::invalid_argument("g1_deriv_t: order out of range");
}

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("heat kernel: t > 0 required");
}

void require_interior(const Domain& dom, const Point& p, const char* who) {
    if (!dom.contains(p)) throw std::domain_error(std::string(who) + ": point not in the open domain");
}

int interval_image_count(double t, double len) {
    // truncate when e^{-(2 N L)^2 / 4t} <= e^{-45}
    return static_cast<int>(std::ceil(std::sqrt(180.0 * t) / (2.0 * len))) + 2;
}

// ---- disk (unit ball, d = 2) eigenseries -------------------------------

std::vector<double> scan_bessel_zeros(int n, double j_max) {
    std::vector<double> zeros;
    const double lo = n + 0.05;  // j_{n,1} > n
    if (lo >= j_max) return zeros;
    double x_prev = lo;
    double f_prev = std::cyl_bessel_j(double(n), x_prev);
    const double step = 0.45;  // consecutive zeros are > pi - eps apart
    for (double x = lo + step; x_prev < j_max; x += step) {
        const double f = std::cyl_bessel_j(double(n), x);
        if ((f_prev < 0.0) != (f < 0.0)) {
            double a = x_prev, b = x, fa = f_prev;
            for (int it = 0; it < 64; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = std::cyl_bessel_j(double(n), m);
                if ((fa < 0.0) != (fm < 0.0)) b = m;
                else { a = m; fa = fm; }
            }
            const double z = 0.5 * (a + b);
            if (z <= j_max) zeros.push_back(z);
            else break;
        }
        x_prev = x;
        f_prev = f;
    }
    return zeros;
}

struct DiskMode {
    double j;
    int n;
    double jn1;  // J_{n+1}(j) = -J_n'(j)
};

class DiskTable {
  public:
    static DiskTable& instance() {
        static DiskTable t;
        return t;
    }

    void ensure(double j_max) {
        j_max = std::min(j_max, kDiskJCap);
        std::lock_guard<std::mutex> lock(mtx_);
        if (j_max <= built_) return;
        modes_.clear();
        for (int n = 0;; ++n) {
            auto zeros = scan_bessel_zeros(n, j_max);
            if (zeros.empty()) break;
            for (double j : zeros)
                modes_.push_back({j, n, std::cyl_bessel_j(double(n + 1), j)});
        }
        std::sort(modes_.begin(), modes_.end(),
                  [](const DiskMode& a, const DiskMode& b) { return a.j < b.j; });
        built_ = j_max;
    }

    const std::vector<DiskMode>& modes() const { return modes_; }

  private:
    std::mutex mtx_;
    std::vector<DiskMode> modes_;
    double built_ = 0.0;
};

double disk_time_floor() { return 45.0 / (kDiskJCap * kDiskJCap); }

void disk_require_time(double t) {
    if (t < disk_time_floor())
        throw std::invalid_argument("disk heat kernel: t below eigenseries floor (t >= 45/j_max^2)");
}

struct PolarPair {
    double rx, ry, dth;
};

PolarPair disk_polar(const Point& x, const Point& y) {
    PolarPair p;
    p.rx = std::hypot(x[0], x[1]);
    p.ry = std::hypot(y[0], y[1]);
    const double thx = std::atan2(x[1], x[0]);
    const double thy = std::atan2(y[1], y[0]);
    p.dth = thx - thy;
    return p;
}

// G = sum_k pi^{-1} J_0 J_0 / J_1^2 e^{-j^2 t}
//   + sum_{n>=1,k} 2 pi^{-1} J_n J_n / J_{n+1}^2 cos(n dth) e^{-j^2 t}
double disk_heat_kernel(double t, const PolarPair& p, int dt_order) {
    disk_require_time(t);
    const double j_cut = std::sqrt(kSeriesCut / t);
    DiskTable::instance().ensure(j_cut);
    double acc = 0.0;
    for (const DiskMode& m : DiskTable::instance().modes()) {
        if (m.j > j_cut) break;
        const double e = std::exp(-m.j * m.j * t);
        double term = std::cyl_bessel_j(double(m.n), m.j * p.rx) *
                      std::cyl_bessel_j(double(m.n), m.j * p.ry) / (m.jn1 * m.jn1) * e / M_PI;
        if (m.n > 0) term *= 2.0 * std::cos(m.n * p.dth);
        if (dt_order == 1) term *= -m.j * m.j;
        acc += term;
    }
    return acc;
}

// inward normal derivative in y at |y| = 1: J_n(j r_y) -> j J_{n+1}(j)
double disk_heat_normal(double t, const PolarPair& p) {
    disk_require_time(t);
    const double j_cut = std::sqrt((kSeriesCut + 4.0) / t);
    DiskTable::instance().ensure(j_cut);
    double acc = 0.0;
    for (const DiskMode& m : DiskTable::instance().modes()) {
        if (m.j > j_cut) break;
        const double e = std::exp(-m.j * m.j * t);
        double term = std::cyl_bessel_j(double(m.n), m.j * p.rx) * m.j / m.jn1 * e / M_PI;
        if (m.n > 0) term *= 2.0 * std::cos(m.n * p.dth);
        acc += term;
    }
    return acc;
}

// ---- interval ----------------------------------------------------------

double interval_image(double t, double len, double u, double v) {
    // u = x - a, v = y - a; images at u - v + 2nL and u + v + 2nL
    const int N = interval_image_count(t, len);
    double acc = 0.0;
    for (int n = -N; n <= N; ++n) {
        acc += g1(t, u - v + 2.0 * n * len) - g1(t, u + v + 2.0 * n * len);
    }
    return acc;
}

double interval_eigen(double t, double len, double u, double v, int terms) {
    double acc = 0.0;
    for (int k = 1; k <= terms; ++k) {
        const double w = k * M_PI / len;
        acc += std::sin(w * u) * std::sin(w * v) * std::exp(-w * w * t);
    }
    return 2.0 / len * acc;
}

// dG/dn at the left endpoint; for the right endpoint pass u -> L - u
double interval_normal_image(double t, double len, double u) {
    const int N = interval_image_count(t, len);
    double acc = 0.0;
    for (int n = -N; n <= N; ++n) {
        const double z = u + 2.0 * n * len;
        acc += z / t * g1(t, z);
    }
    return acc;
}

double interval_normal_eigen(double t, double len, double u, int terms) {
    double acc = 0.0;
    for (int k = 1; k <= terms; ++k) {
        const double w = k * M_PI / len;
        acc += k * std::sin(w * u) * std::exp(-w * w * t);
    }
    return 2.0 * M_PI / (len * len) * acc;
}

// ---- Laplace quadrature helpers ----------------------------------------

double laplace_t_hi(const Domain& dom, const KernelConfig& cfg) {
    double hi = std::numeric_limits<double>::infinity();
    if (cfg.lambda > 0.0) hi = 37.0 / cfg.lambda;
    if (dom.kind() == DomainKind::interval) {
        const double len = dom.b() - dom.a();
        hi = std::min(hi, 3.75 * len * len);  // e^{-pi^2 t / L^2} < 1e-16
    } else if (dom.kind() == DomainKind::unit_ball) {
        hi = std::min(hi, 6.4);  // 37 / j_{0,1}^2
    }
    if (!std::isfinite(hi))
        throw ConfigError("green kernel: lambda > 0 required on an unbounded domain");
    return hi;
}

double laplace_panels(const std::function<double(double)>& f, const LaplaceQuadrature& lq,
                      double t_lo, double t_hi) {
    if (lq.grid) {
        lq.grid->validate();
        return integrate_panels(f, lq.grid->nodes, gauss_legendre(lq.gl_order));
    }
    if (t_lo >= t_hi) t_lo = t_hi * 1e-6;
    const int decades = std::max(1, (int)std::ceil(std::log10(t_hi / t_lo)));
    const auto edges = log_edges(t_lo, t_hi, std::max(4, lq.panels_per_decade * decades));
    return integrate_panels(f, edges, gauss_legendre(lq.gl_order));
}

void require_boundary_point(const Domain& dom, const Point& y) {
    if (static_cast<int>(y.size()) != dom.dimension())
        throw std::invalid_argument("kernel: boundary point has wrong dimension");
    switch (dom.kind()) {
        case DomainKind::interval:
            if (std::abs(y[0] - dom.a()) > kBoundaryTol && std::abs(y[0] - dom.b()) > kBoundaryTol)
                throw std::domain_error("kernel: y not on the interval boundary");
            break;
        case DomainKind::half_line:
        case DomainKind::half_space:
            if (std::abs(y[0]) > kBoundaryTol)
                throw std::domain_error("kernel: y not on the boundary hyperplane");
            break;
        case DomainKind::unit_ball: {
            double r2 = 0.0;
            for (double c : y) r2 += c * c;
            if (std::abs(std::sqrt(r2) - 1.0) > kBoundaryTol)
                throw std::domain_error("kernel: y not on the unit sphere");
            break;
        }
    }
}

}  // namespace

double interval_heat_kernel_image(const Domain& dom, double t, const Point& x, const Point& y) {
    require_time(t);
    const double len = dom.b() - dom.a();
    return interval_image(t, len, x[0] - dom.a(), y[0] - dom.a());
}

double interval_heat_kernel_eigen(const Domain& dom, int terms, double t, const Point& x, const Point& y) {
    require_time(t);
    const double len = dom.b() - dom.a();
    return interval_eigen(t, len, x[0] - dom.a(), y[0] - dom.a(), terms);
}

double heat_kernel(const Domain& dom, const KernelConfig& cfg, double t,
                   const Point& x, const Point& y) {
    require_time(t);
    require_interior(dom, x, "heat_kernel");
    require_interior(dom, y, "heat_kernel");
    switch (dom.kind()) {
        case DomainKind::interval: {
            const double len = dom.b() - dom.a();
            if (t >= cfg.eigen_switch * len * len)
                return interval_eigen(t, len, x[0] - dom.a(), y[0] - dom.a(), cfg.series_terms);
            return interval_image(t, len, x[0] - dom.a(), y[0] - dom.a());
        }
        case DomainKind::half_line:
            return g1(t, x[0] - y[0]) - g1(t, x[0] + y[0]);
        case DomainKind::half_space: {
            const int d = dom.dimension();
            double direct = 0.0, mirror = 0.0;
            for (int i = 0; i < d; ++i) direct += sq(x[i] - y[i]);
            mirror = direct - sq(x[0] - y[0]) + sq(x[0] + y[0]);
            const double norm = std::pow(4.0 * M_PI * t, -0.5 * d);
            return norm * (std::exp(-direct / (4.0 * t)) - std::exp(-mirror / (4.0 * t)));
        }
        case DomainKind::unit_ball: {
            if (dom.dimension() == 1) {
                const Domain iv = Domain::interval(-1.0, 1.0);
                return heat_kernel(iv, cfg, t, x, y);
            }
            if (dom.dimension() != 2)
                throw ConfigError("heat_kernel: ball supported for d in {1,2}");
            return disk_heat_kernel(t, disk_polar(x, y), 0);
        }
    }
    throw std::logic_error("heat_kernel: unreachable");
}

double heat_kernel_normal_derivative(const Domain& dom, const KernelConfig& cfg, double t,
                                     const Point& x, const Point& y) {
    require_time(t);
    require_interior(dom, x, "heat_kernel_normal_derivative");
    require_boundary_point(dom, y);
    switch (dom.kind()) {
        case DomainKind::interval: {
            const double len = dom.b() - dom.a();
            const double u = std::abs(y[0] - dom.a()) <= kBoundaryTol ? x[0] - dom.a()
                                                                      : dom.b() - x[0];
            if (t >= cfg.eigen_switch * len * len)
                return interval_normal_eigen(t, len, u, cfg.series_terms);
            return interval_normal_image(t, len, u);
        }
        case DomainKind::half_line:
            return x[0] / t * g1(t, x[0]);
        case DomainKind::half_space: {
            // source convention for this domain: -(x_0/t) Gamma_{m+1}(t, x-y)
            const int d = dom.dimension();
            const double norm = std::pow(4.0 * M_PI * t, -0.5 * d);
            return -x[0] / t * norm * std::exp(-dist2(x, y) / (4.0 * t));
        }
        case DomainKind::unit_ball: {
            if (dom.dimension() == 1) {
                const Domain iv = Domain::interval(-1.0, 1.0);
                return heat_kernel_normal_derivative(iv, cfg, t, x, y);
            }
            if (dom.dimension() != 2)
                throw ConfigError("heat_kernel_normal_derivative: ball supported for d in {1,2}");
            return disk_heat_normal(t, disk_polar(x, y));
        }
    }
    throw std::logic_error("heat_kernel_normal_derivative: unreachable");
}

double green_kernel(const Domain& dom, const KernelConfig& cfg, const Point& x, const Point& y) {
    require_interior(dom, x, "green_kernel");
    require_interior(dom, y, "green_kernel");
    const double l = cfg.lambda;
    if (l < 0.0) throw ConfigError("green_kernel: lambda >= 0 required");
    switch (dom.kind()) {
        case DomainKind::interval: {
            const double a = dom.a(), len = dom.b() - dom.a();
            const double u = std::min(x[0], y[0]) - a, v = dom.b() - std::max(x[0], y[0]);
            if (l == 0.0) return u * v / len;
            const double s = std::sqrt(l);
            // sinh(su) sinh(sv) / (s sinh(sL)), written overflow-safe
            return std::exp(-s * std::abs(x[0] - y[0])) * (1.0 - std::exp(-2.0 * s * u)) *
                   (1.0 - std::exp(-2.0 * s * v)) /
                   (2.0 * s * (1.0 - std::exp(-2.0 * s * len)));
        }
        case DomainKind::half_line: {
            if (l <= 0.0) throw ConfigError("green_kernel: lambda > 0 required on the half-line");
            const double s = std::sqrt(l);
            return (std::exp(-s * std::abs(x[0] - y[0])) - std::exp(-s * (x[0] + y[0]))) /
                   (2.0 * s);
        }
        case DomainKind::half_space: {
            if (l <= 0.0) throw ConfigError("green_kernel: lambda > 0 required on the half-space");
            if (dom.dimension() == 2) {
                const double s = std::sqrt(l);
                Point xb = x;
                xb[0] = -xb[0];
                return (std::cyl_bessel_k(0.0, s * std::sqrt(dist2(x, y))) -
                        std::cyl_bessel_k(0.0, s * std::sqrt(dist2(xb, y)))) /
                       (2.0 * M_PI);
            }
            return green_kernel_quadrature(dom, cfg, x, y);
        }
        case DomainKind::unit_ball: {
            if (dom.dimension() == 1)
                return green_kernel(Domain::interval(-1.0, 1.0), cfg, x, y);
            if (l != 0.0)
                throw ConfigError("green_kernel: ball supported for lambda = 0 only");
            if (dom.dimension() != 2)
                throw ConfigError("green_kernel: ball supported for d in {1,2}");
            const double ry2 = y[0] * y[0] + y[1] * y[1];
            const double rx = std::hypot(x[0], x[1]);
            if (ry2 == 0.0) return -std::log(rx) / (2.0 * M_PI);
            Point ystar = {y[0] / ry2, y[1] / ry2};
            const double num = std::sqrt(dist2(x, ystar)) * std::sqrt(ry2);
            return std::log(num / std::sqrt(dist2(x, y))) / (2.0 * M_PI);
        }
    }
    throw std::logic_error("green_kernel: unreachable");
}

double green_normal_derivative(const Domain& dom, const KernelConfig& cfg,
                               const Point& x, const Point& y) {
    require_interior(dom, x, "green_normal_derivative");
    require_boundary_point(dom, y);
    const double l = cfg.lambda;
    if (l < 0.0) throw ConfigError("green_normal_derivative: lambda >= 0 required");
    switch (dom.kind()) {
        case DomainKind::interval: {
            const double a = dom.a(), len = dom.b() - dom.a();
            const double u = std::abs(y[0] - a) <= kBoundaryTol ? dom.b() - x[0] : x[0] - a;
            if (l == 0.0) return u / len;  // harmonic weight
            const double s = std::sqrt(l);
            // sinh(s u) / sinh(s L), overflow-safe
            return std::exp(-s * (len - u)) * (1.0 - std::exp(-2.0 * s * u)) /
                   (1.0 - std::exp(-2.0 * s * len));
        }
        case DomainKind::half_line:
            if (l <= 0.0)
                throw ConfigError("green_normal_derivative: lambda > 0 required on the half-line");
            return std::exp(-std::sqrt(l) * x[0]);
        case DomainKind::half_space: {
            if (l <= 0.0)
                throw ConfigError("green_normal_derivative: lambda > 0 required on the half-space");
            if (dom.dimension() == 2) {
                const double s = std::sqrt(l);
                const double r = std::sqrt(dist2(x, y));
                return -x[0] * s / (M_PI * r) * std::cyl_bessel_k(1.0, s * r);
            }
            return green_normal_derivative_quadrature(dom, cfg, x, y);
        }
        case DomainKind::unit_ball: {
            if (dom.dimension() == 1)
                return green_normal_derivative(Domain::interval(-1.0, 1.0), cfg, x, y);
            if (l != 0.0)
                throw ConfigError("green_normal_derivative: ball supported for lambda = 0 only");
            // Poisson kernel C_d (1-|x|^2)/|x-y|^d, C_d = Gamma(d/2) / (2 pi^{d/2})
            const int d = dom.dimension();
            double rx2 = 0.0;
            for (double c : x) rx2 += c * c;
            const double cd = std::tgamma(0.5 * d) / (2.0 * std::pow(M_PI, 0.5 * d));
            return cd * (1.0 - rx2) / std::pow(std::sqrt(dist2(x, y)), double(d));
        }
    }
    throw std::logic_error("green_normal_derivative: unreachable");
}

double green_kernel_quadrature(const Domain& dom, const KernelConfig& cfg,
                               const Point& x, const Point& y) {
    require_interior(dom, x, "green_kernel_quadrature");
    require_interior(dom, y, "green_kernel_quadrature");
    const double r2 = dist2(x, y);
    const double t_hi = laplace_t_hi(dom, cfg);
    double t_lo = std::max(r2 / 180.0, 1e-12);
    double head = 0.0;
    if (dom.kind() == DomainKind::unit_ball && dom.dimension() == 2) {
        // window below the eigenseries floor: free-space part in closed form,
        // boundary correction certified small for interior pairs
        const double floor_t = disk_time_floor() * 1.05;
        if (t_lo < floor_t) {
            head = exp_integral_e1(r2 / (4.0 * floor_t)) / (4.0 * M_PI);
            t_lo = floor_t;
        }
    }
    const auto f = [&](double t) {
        return std::exp(-cfg.lambda * t) * heat_kernel(dom, cfg, t, x, y);
    };
    return head + laplace_panels(f, cfg.laplace, t_lo, t_hi);
}

double green_normal_derivative_quadrature(const Domain& dom, const KernelConfig& cfg,
                                          const Point& x, const Point& y) {
    require_interior(dom, x, "green_normal_derivative_quadrature");
    require_boundary_point(dom, y);
    const double r2 = dist2(x, y);
    const double t_hi = laplace_t_hi(dom, cfg);
    double t_lo = std::max(r2 / 180.0, 1e-12);
    if (dom.kind() == DomainKind::unit_ball && dom.dimension() == 2)
        t_lo = std::max(t_lo, disk_time_floor() * 1.05);
    const auto f = [&](double t) {
        return std::exp(-cfg.lambda * t) * heat_kernel_normal_derivative(dom, cfg, t, x, y);
    };
    return laplace_panels(f, cfg.laplace, t_lo, t_hi);
}

std::complex<double> halfspace_fourier_normal_derivative(int m, double t, const Point& x,
                                                         const std::vector<double>& eta,
                                                         FourierVariant variant) {
    require_time(t);
    if (m < 1) throw std::invalid_argument("halfspace_fourier_normal_derivative: m >= 1");
    if (static_cast<int>(x.size()) != m + 1 || static_cast<int>(eta.size()) != m)
        throw std::invalid_argument("halfspace_fourier_normal_derivative: dimension mismatch");
    if (!(x[0] > 0.0)) throw std::domain_error("halfspace_fourier_normal_derivative: x_0 > 0");
    double eta2 = 0.0, phase = 0.0;
    for (int i = 0; i < m; ++i) {
        eta2 += sq(eta[i]);
        phase += x[i + 1] * eta[i];
    }
    const double decay = variant == FourierVariant::as_printed
                             ? 0.5 * std::pow(2.0 * t, double(m)) * eta2
                             : t * eta2;
    const double amp = -x[0] / (2.0 * std::sqrt(M_PI) * std::pow(t, 1.5)) *
                       std::exp(-sq(x[0]) / (4.0 * t) - decay);
    return {amp * std::cos(phase), amp * std::sin(phase)};
}

double fourier_variant_discrepancy(int m, double t, const Point& x,
                                   const std::vector<double>& eta_tail) {
    double worst = 0.0;
    for (double e : eta_tail) {
        std::vector<double> eta(m, 0.0);
        eta[0] = e;
        const auto a = halfspace_fourier_normal_derivative(m, t, x, eta, FourierVariant::as_printed);
        const auto b =
            halfspace_fourier_normal_derivative(m, t, x, eta, FourierVariant::gaussian_transform);
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

namespace {

// derivative of one image term Pi_i gamma^{(k_i)}(t, z_i) * sign_i^{k_i}
double image_term_deriv(double t, const std::vector<double>& z, const std::vector<int>& k,
                        const std::vector<int>& sgn, int dt) {
    const std::size_t d = z.size();
    std::vector<double> f(d);
    for (std::size_t i = 0; i < d; ++i) {
        f[i] = g1_deriv(k[i], t, z[i]);
        for (int a = 0; a < k[i]; ++a) f[i] *= sgn[i];
    }
    if (dt == 0) {
        double p = 1.0;
        for (double v : f) p *= v;
        return p;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double v = g1_deriv_t(k[i], t, z[i]);
        for (int a = 0; a < k[i]; ++a) v *= sgn[i];
        double p = v;
        for (std::size_t j = 0; j < d; ++j)
            if (j != i) p *= f[j];
        acc += p;
    }
    return acc;
}

double kernel_derivative(const Domain& dom, const KernelConfig& cfg, const DerivOrder& ord,
                         double t, const Point& x, const Point& y) {
    int total_dx = 0;
    for (int k : ord.dx) total_dx += k;
    if (ord.dt < 0 || ord.dt > 1 || total_dx > 2 || ord.dt + total_dx > 2)
        throw std::invalid_argument("check_gaussian_bound: unsupported derivative order");
    switch (dom.kind()) {
        case DomainKind::interval: {
            const double len = dom.b() - dom.a();
            const int kx = ord.dx.empty() ? 0 : ord.dx[0];
            const int N = interval_image_count(t, len);
            double acc = 0.0;
            for (int n = -N; n <= N; ++n) {
                acc += image_term_deriv(t, {x[0] - y[0] + 2.0 * n * len}, {kx}, {1}, ord.dt);
                acc -= image_term_deriv(
                    t, {x[0] + y[0] - 2.0 * dom.a() + 2.0 * n * len}, {kx}, {1}, ord.dt);
            }
            return acc;
        }
        case DomainKind::half_line: {
            const int kx = ord.dx.empty() ? 0 : ord.dx[0];
            return image_term_deriv(t, {x[0] - y[0]}, {kx}, {1}, ord.dt) -
                   image_term_deriv(t, {x[0] + y[0]}, {kx}, {1}, ord.dt);
        }
        case DomainKind::half_space: {
            const int d = dom.dimension();
            std::vector<int> k(d, 0);
            for (std::size_t i = 0; i < ord.dx.size() && i < std::size_t(d); ++i) k[i] = ord.dx[i];
            std::vector<double> zd(d), zm(d);
            std::vector<int> sd(d, 1), sm(d, 1);
            for (int i = 0; i < d; ++i) {
                zd[i] = x[i] - y[i];
                zm[i] = (i == 0 ? -x[0] - y[0] : x[i] - y[i]);
            }
            sm[0] = -1;  // d z'_0 / d x_0
            return image_term_deriv(t, zd, k, sd, ord.dt) -
                   image_term_deriv(t, zm, k, sm, ord.dt);
        }
        case DomainKind::unit_ball: {
            if (total_dx > 0)
                throw ConfigError("check_gaussian_bound: ball supports time derivatives only");
            if (dom.dimension() != 2)
                throw ConfigError("check_gaussian_bound: ball supported for d = 2");
            return disk_heat_kernel(t, disk_polar(x, y), ord.dt);
        }
    }
    throw std::logic_error("kernel_derivative: unreachable");
}

}  // namespace

GaussianBoundFit check_gaussian_bound(const Domain& dom, const KernelConfig& cfg,
                                      const DerivOrder& order, const ProbeSet& probes) {
    if (probes.t.empty() || probes.x.empty() || probes.y.empty())
        throw std::invalid_argument("check_gaussian_bound: empty probe set");
    int total_dx = 0;
    for (int k : order.dx) total_dx += k;
    const double p = 0.5 * (dom.dimension() + total_dx + 2 * order.dt);
    static const double k2_scan[] = {4.0, 4.5, 5.0, 6.0, 8.0, 10.0, 12.0, 16.0, 24.0, 32.0};

    GaussianBoundFit best;
    best.k1 = std::numeric_limits<double>::infinity();
    for (double k2 : k2_scan) {
        double k1 = 0.0, worst_t = 0.0;
        Point wx, wy;
        bool finite = true;
        for (double t : probes.t) {
            for (const Point& x : probes.x) {
                for (const Point& y : probes.y) {
                    const double v = std::abs(kernel_derivative(dom, cfg, order, t, x, y));
                    const double ratio = v * std::pow(t, p) * std::exp(dist2(x, y) / (k2 * t));
                    if (!std::isfinite(ratio)) {
                        finite = false;
                        break;
                    }
                    if (ratio > k1) {
                        k1 = ratio;
                        worst_t = t;
                        wx = x;
                        wy = y;
                    }
                }
                if (!finite) break;
            }
            if (!finite) break;
        }
        if (finite && k1 < best.k1) {
            best.k1 = k1;
            best.k2 = k2;
            best.success = true;
            best.worst_t = worst_t;
            best.worst_x = wx;
            best.worst_y = wy;
        }
    }
    return best;
}

double disk_heat_mass(double t, double r) {
    require_time(t);
    disk_require_time(t);
    if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("disk_heat_mass: r in [0,1) required");
    const double j_cut = std::sqrt(kSeriesCut / t);
    DiskTable::instance().ensure(j_cut);
    double acc = 0.0;
    for (const DiskMode& m : DiskTable::instance().modes()) {
        if (m.j > j_cut) break;
        if (m.n != 0) continue;
        acc += 2.0 * std::exp(-m.j * m.j * t) * std::cyl_bessel_j(0.0, m.j * r) / (m.j * m.jn1);
    }
    return acc;
}

std::vector<double> disk_bessel_zeros(int n, double j_max) {
    if (n < 0 || !(j_max > 0.0)) throw std::invalid_argument("disk_bessel_zeros: bad arguments");
    return scan_bessel_zeros(n, j_max);
}

}  // namespace dnoise
