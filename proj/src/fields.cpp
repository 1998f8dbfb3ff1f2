#include "dnoise/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "dnoise/errors.hpp"
#include "dnoise/quadrature.hpp"

namespace dnoise {

namespace {

double norm2v(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

double point_dist2(const Point& x, const Point& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return s;
}

// hurst of the path family driving the convolution; white noise has no paths
double family_hurst(const BoundaryNoiseSpec& spec) {
    if (const auto* c = std::get_if<CylFractionalSpec>(&spec)) return c->hurst;
    if (const auto* s = std::get_if<SignedSeriesSpec>(&spec)) return s->hurst;
    if (std::holds_alternative<HomogeneousSpec>(spec)) return 0.5;
    if (std::holds_alternative<WhiteNoiseSpec>(spec))
        throw ConfigError(
            "convolution: the white-noise family is elliptic-only; use cyl-fractional with "
            "hurst = 1/2 for a time-dependent drive");
    throw ConfigError("convolution: the Poisson family does not use a stepping plan");
}

void check_rule(StepRule rule, double hurst) {
    const bool ito = rule == StepRule::ito_left_point || rule == StepRule::ito_midpoint;
    if (hurst == 0.5 && !ito)
        throw std::invalid_argument("plan rule incompatible with hurst: hurst = 1/2 needs an Ito rule");
    if (hurst > 0.5 && ito)
        throw std::invalid_argument(
            "plan rule incompatible with hurst: hurst > 1/2 needs young_midpoint");
}

// per-channel boundary pairing f_k(tau) = <dG/dn(tau, x, .), channel_k>
struct Pairing {
    int channels = 0;
    std::function<void(double tau, std::vector<double>& out)> eval;
};

Pairing build_pairing(const Domain& dom, const KernelConfig& cfg, const BoundaryNoiseSpec& spec,
                      const Point& x) {
    Pairing p;
    if (const auto* c = std::get_if<CylFractionalSpec>(&spec)) {
        const BasisKind basis = resolve_basis(dom, c->basis, c->nu);
        if (c->truncation < 1 || c->truncation > basis_dimension(basis, c->nu))
            throw ConfigError("convolution: truncation out of range for the basis");
        const BoundaryQuadrature nu = c->nu;
        const int K = c->truncation;
        p.channels = K;
        p.eval = [dom, cfg, x, nu, basis, K](double tau, std::vector<double>& out) {
            std::vector<double> kv(nu.nodes.size());
            for (std::size_t i = 0; i < nu.nodes.size(); ++i)
                kv[i] = heat_kernel_normal_derivative(dom, cfg, tau, x, nu.nodes[i]);
            for (int k = 0; k < K; ++k) {
                double acc = 0.0;
                for (std::size_t i = 0; i < nu.nodes.size(); ++i)
                    acc += nu.weights[i] * basis_eval(basis, nu, k, nu.nodes[i]) * kv[i];
                out[k] = acc;
            }
        };
        return p;
    }
    if (const auto* s = std::get_if<SignedSeriesSpec>(&spec)) {
        const auto measures = s->measures;
        if (measures.empty()) throw ConfigError("convolution: empty signed-measure list");
        p.channels = static_cast<int>(measures.size());
        p.eval = [dom, cfg, x, measures](double tau, std::vector<double>& out) {
            for (std::size_t k = 0; k < measures.size(); ++k) {
                double acc = 0.0;
                for (std::size_t i = 0; i < measures[k].atoms.size(); ++i)
                    acc += measures[k].weights[i] *
                           heat_kernel_normal_derivative(dom, cfg, tau, x, measures[k].atoms[i]);
                out[k] = acc;
            }
        };
        return p;
    }
    if (const auto* h = std::get_if<HomogeneousSpec>(&spec)) {
        if (dom.kind() != DomainKind::half_space)
            throw ConfigError("convolution: homogeneous noise requires the half-space");
        const auto channels = homogeneous_channels(*h);
        const int m = h->boundary_dim;
        if (dom.dimension() != m + 1)
            throw ConfigError("convolution: homogeneous boundary_dim mismatch");
        p.channels = static_cast<int>(channels.size());
        p.eval = [m, x, channels](double tau, std::vector<double>& out) {
            for (std::size_t k = 0; k < channels.size(); ++k) {
                const auto v = halfspace_fourier_normal_derivative(m, tau, x, channels[k].freq,
                                                                  FourierVariant::as_printed);
                out[k] = channels[k].coeff * (channels[k].is_sin ? v.imag() : v.real());
            }
        };
        return p;
    }
    (void)family_hurst(spec);  // throws the family-specific message
    return p;
}

// log-spaced integration edges for int_0^t g(s) ds with g Gaussian-small
// below s0 = r^2 / 360
std::vector<double> time_edges(double r2, double t) {
    double lo = std::clamp(r2 / 360.0, t * 1e-9, t * 0.5);
    const int decades = std::max(1, static_cast<int>(std::ceil(std::log10(t / lo))));
    return log_edges(lo, t, std::max(6, 8 * decades));
}

}  // namespace

TimeGrid convolution_grid(double t, int cells, GridScheme scheme, double tau_min_factor) {
    if (!(t > 0.0) || cells < 2) throw std::invalid_argument("convolution_grid: t > 0, cells >= 2");
    if (scheme == GridScheme::uniform) return TimeGrid::uniform(t, cells);
    if (!(tau_min_factor > 0.0 && tau_min_factor < 1.0))
        throw std::invalid_argument("convolution_grid: tau_min_factor in (0,1)");
    TimeGrid g;
    g.scheme = GridScheme::log_spaced;
    g.nodes.resize(cells);
    const double rho = std::pow(tau_min_factor, 1.0 / (cells - 1));
    // tau edges t, t rho, ..., t tau_min_factor, 0  ->  s = t - tau
    for (int j = 0; j < cells - 1; ++j) g.nodes[j] = t - t * std::pow(rho, j + 1);
    g.nodes[cells - 1] = t;
    g.validate();
    return g;
}

ConvolutionPlan make_convolution_plan(const Domain& dom, const KernelConfig& cfg,
                                      const BoundaryNoiseSpec& spec, double t, const Point& x,
                                      const TimeGrid& grid, StepRule rule) {
    grid.validate();
    if (!(t > 0.0)) throw std::invalid_argument("make_convolution_plan: t > 0 required");
    if (std::abs(grid.nodes.back() - t) > 1e-12 * std::max(1.0, t))
        throw std::invalid_argument("make_convolution_plan: last grid node must equal t");
    check_rule(rule, family_hurst(spec));

    ConvolutionPlan plan;
    plan.t = t;
    plan.x = x;
    plan.grid = grid;
    plan.rule = rule;
    Pairing pairing = build_pairing(dom, cfg, spec, x);
    plan.channels = pairing.channels;

    const int cells = static_cast<int>(grid.nodes.size());
    plan.kernel_cache.resize(cells, pairing.channels);
    std::vector<double> row(pairing.channels);
    double s_prev = 0.0;
    for (int j = 0; j < cells; ++j) {
        const double s_eval = rule == StepRule::ito_left_point
                                  ? s_prev
                                  : 0.5 * (s_prev + grid.nodes[j]);
        const double tau = t - s_eval;
        pairing.eval(tau, row);
        for (int k = 0; k < pairing.channels; ++k) plan.kernel_cache(j, k) = row[k];
        s_prev = grid.nodes[j];
    }
    return plan;
}

double heat_semigroup(const Domain& dom, const KernelConfig& cfg, double t, const Point& x,
                      const std::function<double(const Point&)>& u0, int quad_n) {
    const InteriorQuadrature iq = interior_quadrature(dom, quad_n);
    double acc = 0.0;
    for (std::size_t i = 0; i < iq.nodes.size(); ++i)
        acc += iq.weights[i] * heat_kernel(dom, cfg, t, x, iq.nodes[i]) * u0(iq.nodes[i]);
    return acc;
}

double mild_solution(const Domain& dom, const KernelConfig& cfg, const BoundaryNoiseSpec& spec,
                     const NoiseRealization& xi, const std::function<double(const Point&)>* u0,
                     double t, const Point& x, const ConvolutionPlan* plan) {
    if (!(t > 0.0)) throw std::invalid_argument("mild_solution: t > 0 required");
    double acc = 0.0;
    if (u0) acc += heat_semigroup(dom, cfg, t, x, *u0);

    if (const auto* ps = std::get_if<PoissonSpec>(&spec)) {
        (void)ps;
        for (const PoissonPoint& p : xi.points) {
            if (p.time >= t) continue;
            acc += heat_kernel_normal_derivative(dom, cfg, t - p.time, x, p.location) * p.mark;
        }
        return acc;
    }

    if (!plan) throw std::invalid_argument("mild_solution: path families need a convolution plan");
    if (std::abs(plan->t - t) > 1e-12 || plan->x != x)
        throw std::invalid_argument("mild_solution: plan was built for a different (t, x)");
    const int cells = static_cast<int>(plan->grid.nodes.size());
    if (xi.paths.rows() != plan->channels || xi.paths.cols() != cells)
        throw std::invalid_argument("mild_solution: realization paths do not match the plan grid");

    for (int k = 0; k < plan->channels; ++k) {
        double prev = 0.0, sum = 0.0;
        for (int j = 0; j < cells; ++j) {
            sum += plan->kernel_cache(j, k) * (xi.paths(k, j) - prev);
            prev = xi.paths(k, j);
        }
        acc += sum;
    }
    return acc;
}

double parabolic_field_v(const Domain& dom, const KernelConfig& cfg, const BoundaryNoiseSpec& spec,
                         const NoiseRealization& gamma, double t, const Point& x) {
    if (!(t > 0.0)) throw std::domain_error("parabolic_field_v: t > 0 required");
    if (std::holds_alternative<PoissonSpec>(spec)) {
        double acc = 0.0;
        for (const PoissonPoint& p : gamma.points)
            acc += heat_kernel_normal_derivative(dom, cfg, t, x, p.location) * p.mark;
        return acc;
    }
    const BoundaryNoiseSpec* use = &spec;
    BoundaryNoiseSpec as_cyl;  // white snapshots pair like a hurst = 1/2 cylindrical drive
    if (const auto* w = std::get_if<WhiteNoiseSpec>(&spec)) {
        as_cyl = CylFractionalSpec{w->nu, w->basis, w->truncation, 0.5};
        use = &as_cyl;
    }
    Pairing pairing = build_pairing(dom, cfg, *use, x);
    if (gamma.coefficients.size() < static_cast<std::size_t>(pairing.channels))
        throw std::invalid_argument("parabolic_field_v: snapshot has too few coefficients");
    std::vector<double> row(pairing.channels);
    pairing.eval(t, row);
    double acc = 0.0;
    for (int k = 0; k < pairing.channels; ++k) acc += row[k] * gamma.coefficients[k];
    return acc;
}

std::vector<double> elliptic_coefficients(const Domain& dom, const KernelConfig& cfg,
                                          const BoundaryNoiseSpec& spec, const Point& x) {
    if (const auto* w = std::get_if<WhiteNoiseSpec>(&spec)) {
        const BasisKind basis = resolve_basis(dom, w->basis, w->nu);
        if (w->truncation < 1 || w->truncation > basis_dimension(basis, w->nu))
            throw ConfigError("elliptic_coefficients: truncation out of range for the basis");
        std::vector<double> kv(w->nu.nodes.size());
        for (std::size_t i = 0; i < w->nu.nodes.size(); ++i)
            kv[i] = green_normal_derivative(dom, cfg, x, w->nu.nodes[i]);
        std::vector<double> out(w->truncation);
        for (int k = 0; k < w->truncation; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < w->nu.nodes.size(); ++i)
                acc += w->nu.weights[i] * basis_eval(basis, w->nu, k, w->nu.nodes[i]) * kv[i];
            out[k] = acc;
        }
        return out;
    }
    if (const auto* c = std::get_if<CylFractionalSpec>(&spec)) {
        WhiteNoiseSpec w{c->nu, c->basis, c->truncation};
        return elliptic_coefficients(dom, cfg, BoundaryNoiseSpec{w}, x);
    }
    if (const auto* s = std::get_if<SignedSeriesSpec>(&spec)) {
        std::vector<double> out(s->measures.size());
        for (std::size_t k = 0; k < s->measures.size(); ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < s->measures[k].atoms.size(); ++i)
                acc += s->measures[k].weights[i] *
                       green_normal_derivative(dom, cfg, x, s->measures[k].atoms[i]);
            out[k] = acc;
        }
        return out;
    }
    if (const auto* h = std::get_if<HomogeneousSpec>(&spec)) {
        if (dom.kind() != DomainKind::half_space)
            throw ConfigError("elliptic_coefficients: homogeneous noise requires the half-space");
        const auto channels = homogeneous_channels(*h);
        std::vector<double> out(channels.size());
        for (std::size_t k = 0; k < channels.size(); ++k) {
            const auto v = halfspace_fourier_green(h->boundary_dim, cfg, x, channels[k].freq);
            out[k] = channels[k].coeff * (channels[k].is_sin ? v.imag() : v.real());
        }
        return out;
    }
    throw ConfigError("elliptic_coefficients: Poisson fields pair points directly");
}

double elliptic_field(const Domain& dom, const KernelConfig& cfg, const BoundaryNoiseSpec& spec,
                      const NoiseRealization& xi, const Point& x) {
    if (std::holds_alternative<PoissonSpec>(spec)) {
        double acc = 0.0;
        for (const PoissonPoint& p : xi.points)
            acc += green_normal_derivative(dom, cfg, x, p.location) * p.mark;
        return acc;
    }
    const std::vector<double> c = elliptic_coefficients(dom, cfg, spec, x);
    if (xi.coefficients.size() < c.size())
        throw std::invalid_argument("elliptic_field: realization has too few coefficients");
    double acc = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * xi.coefficients[k];
    return acc;
}

double analytic_variance_elliptic(const Domain& dom, const KernelConfig& cfg,
                                  const BoundaryNoiseSpec& spec, const Point& x) {
    if (const auto* w = std::get_if<WhiteNoiseSpec>(&spec)) {
        double acc = 0.0;
        for (std::size_t i = 0; i < w->nu.nodes.size(); ++i) {
            const double g = green_normal_derivative(dom, cfg, x, w->nu.nodes[i]);
            acc += w->nu.weights[i] * g * g;
        }
        return acc;
    }
    if (const auto* c = std::get_if<CylFractionalSpec>(&spec)) {
        WhiteNoiseSpec w{c->nu, c->basis, std::max(1, c->truncation)};
        return analytic_variance_elliptic(dom, cfg, BoundaryNoiseSpec{w}, x);
    }
    if (std::holds_alternative<SignedSeriesSpec>(spec) ||
        std::holds_alternative<HomogeneousSpec>(spec)) {
        if (const auto* h = std::get_if<HomogeneousSpec>(&spec)) {
            double acc = 0.0;
            for (const auto& a : h->atoms) {
                const auto v = halfspace_fourier_green(h->boundary_dim, cfg, x, a.freq);
                acc += a.weight * std::norm(v);
            }
            return acc;
        }
        const auto& s = std::get<SignedSeriesSpec>(spec);
        const std::vector<double> c =
            elliptic_coefficients(dom, cfg, spec, x);
        (void)s;
        return norm2v(c);
    }
    throw ConfigError(
        "analytic_variance_elliptic: Poisson second moments are not Gaussian; use "
        "campbell_second_moment");
}

double analytic_variance_parabolic(const Domain& dom, const KernelConfig& cfg,
                                   const BoundaryNoiseSpec& spec, double t, const Point& x) {
    if (!(t > 0.0)) throw std::invalid_argument("analytic_variance_parabolic: t > 0 required");
    const QuadRule& rule = gauss_legendre(16);
    if (const auto* c = std::get_if<CylFractionalSpec>(&spec)) {
        if (c->hurst != 0.5)
            throw ConfigError(
                "analytic_variance_parabolic: closed second moment needs hurst = 1/2; use "
                "young_bound for fractional drives");
        // Ito isometry over the complete basis: int_0^t int (dG/dn)^2 dnu ds
        double acc = 0.0;
        for (std::size_t i = 0; i < c->nu.nodes.size(); ++i) {
            const Point& y = c->nu.nodes[i];
            const auto g2 = [&](double s) {
                const double g = heat_kernel_normal_derivative(dom, cfg, s, x, y);
                return g * g;
            };
            acc += c->nu.weights[i] * integrate_panels(g2, time_edges(point_dist2(x, y), t), rule);
        }
        return acc;
    }
    if (const auto* ss = std::get_if<SignedSeriesSpec>(&spec)) {
        if (ss->hurst != 0.5)
            throw ConfigError(
                "analytic_variance_parabolic: closed second moment needs hurst = 1/2; use "
                "young_bound for fractional drives");
        double acc = 0.0;
        for (const auto& nu_k : ss->measures) {
            double r2min = 1e300;
            for (const Point& y : nu_k.atoms) r2min = std::min(r2min, point_dist2(x, y));
            const auto g2 = [&](double s) {
                double g = 0.0;
                for (std::size_t i = 0; i < nu_k.atoms.size(); ++i)
                    g += nu_k.weights[i] *
                         heat_kernel_normal_derivative(dom, cfg, s, x, nu_k.atoms[i]);
                return g * g;
            };
            acc += integrate_panels(g2, time_edges(r2min, t), rule);
        }
        return acc;
    }
    if (const auto* h = std::get_if<HomogeneousSpec>(&spec)) {
        if (dom.kind() != DomainKind::half_space)
            throw ConfigError("analytic_variance_parabolic: homogeneous noise requires the half-space");
        const int m = h->boundary_dim;
        const auto g2 = [&](double s) {
            double acc = 0.0;
            for (const auto& a : h->atoms)
                acc += a.weight *
                       std::norm(halfspace_fourier_normal_derivative(m, s, x, a.freq,
                                                                     FourierVariant::as_printed));
            return acc;
        };
        return integrate_panels(g2, time_edges(x[0] * x[0], t), rule);
    }
    if (std::holds_alternative<WhiteNoiseSpec>(spec))
        (void)family_hurst(spec);  // throws elliptic-only message
    throw ConfigError(
        "analytic_variance_parabolic: Poisson second moments are not Gaussian; use "
        "campbell_second_moment");
}

double campbell_second_moment(const Domain& dom, const KernelConfig& cfg, const PoissonSpec& spec,
                              const Point& x, std::optional<double> t) {
    spec.intensity.validate();
    const QuadRule& rule = gauss_legendre(16);
    if (!t) {
        double sq_term = 0.0, mean = 0.0;
        for (std::size_t i = 0; i < spec.intensity.nodes.size(); ++i) {
            const double f = green_normal_derivative(dom, cfg, x, spec.intensity.nodes[i]) *
                             spec.mark(spec.intensity.nodes[i]);
            sq_term += spec.intensity.weights[i] * f * f;
            mean += spec.intensity.weights[i] * f;
        }
        return sq_term + mean * mean;
    }
    double sq_term = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < spec.intensity.nodes.size(); ++i) {
        const Point& y = spec.intensity.nodes[i];
        const double rho = spec.mark(y);
        const auto edges = time_edges(point_dist2(x, y), *t);
        sq_term += spec.intensity.weights[i] * rho * rho *
                   integrate_panels(
                       [&](double s) {
                           const double g = heat_kernel_normal_derivative(dom, cfg, s, x, y);
                           return g * g;
                       },
                       edges, rule);
        mean += spec.intensity.weights[i] * rho *
                integrate_panels(
                    [&](double s) { return heat_kernel_normal_derivative(dom, cfg, s, x, y); },
                    edges, rule);
    }
    return sq_term + mean * mean;
}

double levy_moment_bound(const Domain& dom, const KernelConfig& cfg, const PoissonSpec& spec,
                         const Point& x, std::optional<double> t) {
    spec.intensity.validate();
    const QuadRule& rule = gauss_legendre(16);
    double sq_term = 0.0, abs_mean = 0.0;
    for (std::size_t i = 0; i < spec.intensity.nodes.size(); ++i) {
        const Point& y = spec.intensity.nodes[i];
        const double rho = spec.mark(y);
        if (!t) {
            const double f = green_normal_derivative(dom, cfg, x, y) * rho;
            sq_term += spec.intensity.weights[i] * f * f;
            abs_mean += spec.intensity.weights[i] * std::abs(f);
        } else {
            const auto edges = time_edges(point_dist2(x, y), *t);
            sq_term += spec.intensity.weights[i] * rho * rho *
                       integrate_panels(
                           [&](double s) {
                               const double g = heat_kernel_normal_derivative(dom, cfg, s, x, y);
                               return g * g;
                           },
                           edges, rule);
            abs_mean += spec.intensity.weights[i] * std::abs(rho) *
                        integrate_panels(
                            [&](double s) {
                                return std::abs(heat_kernel_normal_derivative(dom, cfg, s, x, y));
                            },
                            edges, rule);
        }
    }
    return 2.0 * (sq_term + abs_mean * abs_mean);
}

std::complex<double> halfspace_fourier_green(int m, const KernelConfig& cfg, const Point& x,
                                             const std::vector<double>& eta,
                                             FourierVariant variant) {
    if (m < 1) throw std::invalid_argument("halfspace_fourier_green: m >= 1");
    if (static_cast<int>(x.size()) != m + 1 || static_cast<int>(eta.size()) != m)
        throw std::invalid_argument("halfspace_fourier_green: dimension mismatch");
    if (!(x[0] > 0.0)) throw std::domain_error("halfspace_fourier_green: x_0 > 0 required");
    if (!(cfg.lambda > 0.0))
        throw ConfigError("halfspace_fourier_green: lambda > 0 required on the half-space");
    double eta2 = 0.0, phase = 0.0;
    for (int i = 0; i < m; ++i) {
        eta2 += eta[i] * eta[i];
        phase += x[i + 1] * eta[i];
    }
    if (m == 1 || variant == FourierVariant::gaussian_transform) {
        // int_0^inf e^{-lt} (x0 / (2 sqrt(pi) t^{3/2})) e^{-x0^2/4t - t|eta|^2} dt
        //   = e^{-x0 sqrt(l + |eta|^2)}
        const double amp = -std::exp(-x[0] * std::sqrt(cfg.lambda + eta2));
        return {amp * std::cos(phase), amp * std::sin(phase)};
    }
    const double t_lo = x[0] * x[0] / 180.0;
    const double t_hi = 37.0 / cfg.lambda;
    const int decades = std::max(1, (int)std::ceil(std::log10(t_hi / t_lo)));
    const auto edges = log_edges(std::min(t_lo, t_hi * 1e-6), t_hi, 8 * decades);
    const QuadRule& rule = gauss_legendre(16);
    const double re = integrate_panels(
        [&](double t) {
            return std::exp(-cfg.lambda * t) *
                   halfspace_fourier_normal_derivative(m, t, x, eta, variant).real();
        },
        edges, rule);
    const double im = integrate_panels(
        [&](double t) {
            return std::exp(-cfg.lambda * t) *
                   halfspace_fourier_normal_derivative(m, t, x, eta, variant).imag();
        },
        edges, rule);
    return {re, im};
}

double young_i_alpha(const std::function<double(double)>& f, double t, double alpha) {
    if (!(t > 0.0) || !(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("young_i_alpha: t > 0, alpha in (0,1) required");
    // first term, exact for constants: v = r^{1-alpha}. Panels refine
    // geometrically toward both endpoints: convolution kernels pushed through
    // f concentrate their mass in an O(dist^2) layer below r = t.
    const double vmax = std::pow(t, 1.0 - alpha);
    const QuadRule& rule16 = gauss_legendre(16);
    std::vector<double> vedges;
    vedges.push_back(vmax * 1e-12);
    for (int i = 1; i <= 23; ++i) vedges.push_back(vmax * i / 24.0);
    {
        const auto gap = log_edges(vmax * 1e-12, vmax / 24.0, 44);
        for (auto it = gap.rbegin() + 1; it != gap.rend(); ++it) vedges.push_back(vmax - *it);
        vedges.push_back(vmax * (1.0 - 1e-12));
    }
    const double first =
        integrate_panels(
            [&](double v) { return std::abs(f(std::pow(v, 1.0 / (1.0 - alpha)))); }, vedges,
            rule16) /
        (1.0 - alpha);

    // second term: alpha int_0^t int_0^r |f(r)-f(q)| (r-q)^{-alpha-1} dq dr,
    // outer r log-refined toward 0 and toward t
    const QuadRule& rule8 = gauss_legendre(8);
    const int odec = std::max(1, (int)std::ceil(std::log10(1e6)));
    std::vector<double> outer = log_edges(t * 1e-6, 0.5 * t, 6 * odec);
    {
        const auto gap = log_edges(t * 1e-10, 0.5 * t, 60);
        for (auto it = gap.rbegin() + 1; it != gap.rend(); ++it) outer.push_back(t - *it);
        outer.push_back(t * (1.0 - 1e-10));
    }
    const double second = integrate_panels(
        [&](double r) {
            const double h = r * 1e-4;
            // analytic cap over (r-h, r) using local linearity of f
            const double dr = r * 1e-6;
            const double fp = (f(r + dr < t ? r + dr : r) - f(r - dr)) / (r + dr < t ? 2 * dr : dr);
            double inner = std::abs(fp) * std::pow(h, 1.0 - alpha) / (1.0 - alpha);
            const int idec = std::max(1, (int)std::ceil(std::log10(r / h)));
            const auto iedges = log_edges(h, r, 8 * idec);
            inner += integrate_panels(
                [&](double w) { return std::abs(f(r) - f(r - w)) * std::pow(w, -alpha - 1.0); },
                iedges, rule8);
            return inner;
        },
        outer, rule8);
    return first + alpha * second;
}

double young_lambda_alpha(const TimeGrid& grid, const std::vector<double>& path, double alpha) {
    grid.validate();
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("young_lambda_alpha: alpha in (0,1) required");
    if (path.size() != grid.nodes.size())
        throw std::invalid_argument("young_lambda_alpha: path/grid size mismatch");
    const int n = static_cast<int>(grid.nodes.size());
    std::vector<double> s(n + 1), w(n + 1);
    s[0] = 0.0;
    w[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        s[i + 1] = grid.nodes[i];
        w[i + 1] = path[i];
    }
    double sup = 0.0;
    for (int i = 0; i <= n - 1; ++i) {
        double inner = 0.0;
        for (int j = i + 1; j <= n; ++j) {
            // add cell (s_{j-1}, s_j): W linear, rho = r - s_i
            const double ra = s[j - 1] - s[i], rb = s[j] - s[i];
            const double slope = (w[j] - w[j - 1]) / (s[j] - s[j - 1]);
            const double c = w[i] - w[j - 1] + slope * ra;
            double cell = -slope * (std::pow(rb, alpha) - std::pow(ra, alpha)) / alpha;
            if (ra > 0.0)
                cell += c * (std::pow(rb, alpha - 1.0) - std::pow(ra, alpha - 1.0)) / (alpha - 1.0);
            else
                cell += c * std::pow(rb, alpha - 1.0) / (alpha - 1.0);  // c == 0 here
            inner += cell;
            const double cand =
                std::abs((w[i] - w[j]) * std::pow(s[j] - s[i], alpha - 1.0) + (1.0 - alpha) * inner);
            sup = std::max(sup, cand);
        }
    }
    return sup / (std::tgamma(1.0 - alpha) * std::tgamma(alpha));
}

YoungBound young_bound(const std::function<double(double)>& f, const TimeGrid& grid,
                       const std::vector<double>& path, double alpha) {
    YoungBound out;
    out.lambda_alpha = young_lambda_alpha(grid, path, alpha);
    out.i_alpha = young_i_alpha(f, grid.nodes.back(), alpha);
    out.integral_bound = out.lambda_alpha * out.i_alpha;
    return out;
}

double path_integral_midpoint(const std::function<double(double)>& f, const TimeGrid& grid,
                              const std::vector<double>& path) {
    grid.validate();
    if (path.size() != grid.nodes.size())
        throw std::invalid_argument("path_integral_midpoint: path/grid size mismatch");
    double acc = 0.0, s_prev = 0.0, w_prev = 0.0;
    for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
        acc += f(0.5 * (s_prev + grid.nodes[j])) * (path[j] - w_prev);
        s_prev = grid.nodes[j];
        w_prev = path[j];
    }
    return acc;
}

}  // namespace dnoise
