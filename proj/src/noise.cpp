#include "dnoise/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dnoise/errors.hpp"
#include "dnoise/rng.hpp"

namespace dnoise {

double DiscreteSignedMeasure::total_variation() const {
    if (atoms.size() != weights.size())
        throw std::invalid_argument("DiscreteSignedMeasure: atoms/weights size mismatch");
    double s = 0.0;
    for (double w : weights) s += std::abs(w);
    return s;
}

double SignedSeriesSpec::sum_variation_sq() const {
    double s = 0.0;
    for (const auto& m : measures) {
        const double tv = m.total_variation();
        s += tv * tv;
    }
    return s;
}

namespace {

bool is_origin(const std::vector<double>& f) {
    for (double c : f)
        if (c != 0.0) return false;
    return true;
}

bool lex_positive(const std::vector<double>& f) {
    for (double c : f) {
        if (c > 0.0) return true;
        if (c < 0.0) return false;
    }
    return false;
}

}  // namespace

void HomogeneousSpec::validate() const {
    if (boundary_dim < 1) throw ConfigError("HomogeneousSpec: boundary_dim >= 1 required");
    for (const auto& a : atoms) {
        if (static_cast<int>(a.freq.size()) != boundary_dim)
            throw ConfigError("HomogeneousSpec: atom frequency dimension mismatch");
        if (!(a.weight > 0.0)) throw ConfigError("HomogeneousSpec: atom weights must be positive");
    }
    // symmetry: every off-origin atom needs a mirror partner of equal weight
    for (const auto& a : atoms) {
        if (is_origin(a.freq)) continue;
        bool found = false;
        for (const auto& b : atoms) {
            bool mirror = true;
            for (int i = 0; i < boundary_dim; ++i)
                if (std::abs(a.freq[i] + b.freq[i]) > 1e-12) { mirror = false; break; }
            if (mirror && std::abs(a.weight - b.weight) <= 1e-12 * a.weight) {
                found = true;
                break;
            }
        }
        if (!found)
            throw ConfigError("HomogeneousSpec: spectral measure must be symmetric (missing -y atom)");
    }
}

int HomogeneousSpec::channel_count() const {
    int pairs = 0, origin = 0;
    for (const auto& a : atoms) {
        if (is_origin(a.freq)) ++origin;
        else if (lex_positive(a.freq)) ++pairs;
    }
    return 2 * pairs + origin;
}

std::vector<HomogeneousChannel> homogeneous_channels(const HomogeneousSpec& spec) {
    spec.validate();
    std::vector<HomogeneousChannel> out;
    for (const auto& a : spec.atoms) {
        if (is_origin(a.freq)) continue;
        if (!lex_positive(a.freq)) continue;  // partner handled by the + atom
        const double c = std::sqrt(2.0 * a.weight);
        out.push_back({a.freq, c, false});
        out.push_back({a.freq, c, true});
    }
    for (const auto& a : spec.atoms)
        if (is_origin(a.freq)) out.push_back({a.freq, std::sqrt(a.weight), false});
    return out;
}

double MarkSpec::operator()(const Point& y) const {
    if (kind == Kind::constant) return c0;
    double r2 = 0.0;
    for (double c : y) r2 += c * c;
    return c0 + c1 * std::pow(std::sqrt(r2), p);
}

double PoissonSpec::total_mass() const {
    intensity.validate();
    return intensity.weight_sum();
}

std::string noise_family_id(const BoundaryNoiseSpec& spec) {
    struct V {
        std::string operator()(const WhiteNoiseSpec&) const { return "white"; }
        std::string operator()(const CylFractionalSpec&) const { return "cyl-fractional"; }
        std::string operator()(const SignedSeriesSpec&) const { return "signed-series"; }
        std::string operator()(const HomogeneousSpec&) const { return "homogeneous"; }
        std::string operator()(const PoissonSpec&) const { return "poisson"; }
    };
    return std::visit(V{}, spec);
}

Eigen::MatrixXd fbm_covariance(double hurst, const TimeGrid& grid) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("fbm_covariance: hurst in (0,1)");
    grid.validate();
    const int n = static_cast<int>(grid.nodes.size());
    Eigen::MatrixXd c(n, n);
    const double h2 = 2.0 * hurst;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double s = grid.nodes[i], t = grid.nodes[j];
            c(i, j) = c(j, i) =
                0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(s - t), h2));
        }
    return c;
}

FbmSampler::FbmSampler(double hurst, const TimeGrid& grid) : hurst_(hurst), grid_(grid) {
    grid.validate();
    if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("FbmSampler: hurst in (0,1)");
    if (hurst == 0.5) return;  // independent increments, no factorization
    Eigen::MatrixXd cov = fbm_covariance(hurst, grid);
    for (double jit : {0.0, 1e-15, 1e-14, 1e-13, 1e-12}) {
        Eigen::MatrixXd work = cov;
        if (jit > 0.0) work.diagonal().array() += jit;
        Eigen::LLT<Eigen::MatrixXd> llt(work);
        if (llt.info() == Eigen::Success) {
            chol_ = llt.matrixL();
            jitter_ = jit;
            return;
        }
    }
    throw std::runtime_error(
        "FbmSampler: covariance not positive definite even with 1e-12 diagonal jitter "
        "(hurst=" + std::to_string(hurst) + ", n=" + std::to_string(grid.nodes.size()) + ")");
}

Eigen::MatrixXd FbmSampler::draw(int k, std::uint64_t seed) const {
    if (k < 1) throw std::invalid_argument("FbmSampler::draw: k >= 1 required");
    const int n = static_cast<int>(grid_.nodes.size());
    Rng rng(seed);
    Eigen::MatrixXd out(k, n);
    if (hurst_ == 0.5) {
        for (int r = 0; r < k; ++r) {
            double acc = 0.0, prev = 0.0;
            for (int j = 0; j < n; ++j) {
                acc += std::sqrt(grid_.nodes[j] - prev) * rng.normal();
                prev = grid_.nodes[j];
                out(r, j) = acc;
            }
        }
        return out;
    }
    Eigen::VectorXd z(n);
    for (int r = 0; r < k; ++r) {
        for (int j = 0; j < n; ++j) z(j) = rng.normal();
        out.row(r) = (chol_ * z).transpose();
    }
    return out;
}

BasisKind resolve_basis(const Domain& dom, BasisKind requested, const BoundaryQuadrature& nu) {
    nu.validate();
    if (requested == BasisKind::automatic) {
        if (dom.kind() == DomainKind::unit_ball && dom.dimension() == 2)
            return BasisKind::fourier_circle;
        return BasisKind::node_indicator;
    }
    if (requested == BasisKind::fourier_circle &&
        !(dom.kind() == DomainKind::unit_ball && dom.dimension() == 2))
        throw ConfigError("resolve_basis: fourier_circle requires the d=2 ball");
    return requested;
}

int basis_dimension(BasisKind basis, const BoundaryQuadrature& nu) {
    if (basis == BasisKind::fourier_circle)
        return std::max<int>(1, static_cast<int>(nu.nodes.size()) - 1);
    return static_cast<int>(nu.nodes.size());
}

double basis_eval(BasisKind basis, const BoundaryQuadrature& nu, int k, const Point& y) {
    if (k < 0) throw std::invalid_argument("basis_eval: k >= 0 required");
    if (basis == BasisKind::fourier_circle) {
        const double th = std::atan2(y[1], y[0]);
        if (k == 0) return 1.0 / std::sqrt(2.0 * M_PI);
        const int j = (k + 1) / 2;
        const double v = (k % 2 == 1) ? std::cos(j * th) : std::sin(j * th);
        return v / std::sqrt(M_PI);
    }
    if (k >= static_cast<int>(nu.nodes.size()))
        throw std::invalid_argument("basis_eval: k beyond node count");
    const Point& node = nu.nodes[k];
    if (node.size() != y.size()) throw std::invalid_argument("basis_eval: dimension mismatch");
    for (std::size_t i = 0; i < y.size(); ++i)
        if (std::abs(node[i] - y[i]) > 1e-12) return 0.0;
    return 1.0 / std::sqrt(nu.weights[k]);
}

NoiseRealization sample_elliptic_white(const WhiteNoiseSpec& spec, std::uint64_t seed) {
    spec.nu.validate();
    const int dim = basis_dimension(spec.basis == BasisKind::automatic ? BasisKind::node_indicator
                                                                       : spec.basis,
                                    spec.nu);
    if (spec.truncation < 1) throw ConfigError("sample_elliptic_white: truncation >= 1 required");
    if (spec.basis != BasisKind::fourier_circle && spec.truncation > dim)
        throw ConfigError("sample_elliptic_white: truncation exceeds basis dimension");
    NoiseRealization r;
    r.seed = seed;
    Rng rng(seed);
    r.coefficients.resize(spec.truncation);
    for (double& c : r.coefficients) c = rng.normal();
    return r;
}

NoiseRealization sample_poisson_measure(const PoissonSpec& spec, double horizon,
                                        std::uint64_t seed) {
    if (!(horizon > 0.0)) throw std::invalid_argument("sample_poisson_measure: horizon > 0");
    const double mass = spec.total_mass();
    NoiseRealization r;
    r.seed = seed;
    Rng rng(seed);
    const std::uint64_t count = rng.poisson(horizon * mass);
    r.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        PoissonPoint p;
        p.time = horizon * rng.uniform();
        double u = rng.uniform() * mass;
        std::size_t idx = 0;
        for (; idx + 1 < spec.intensity.nodes.size(); ++idx) {
            u -= spec.intensity.weights[idx];
            if (u <= 0.0) break;
        }
        p.location = spec.intensity.nodes[idx];
        p.mark = spec.mark(p.location);
        r.points.push_back(std::move(p));
    }
    return r;
}

NoiseRealization sample_poisson_boundary(const PoissonSpec& spec, std::uint64_t seed) {
    const double mass = spec.total_mass();
    NoiseRealization r;
    r.seed = seed;
    Rng rng(seed);
    const std::uint64_t count = rng.poisson(mass);
    r.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        PoissonPoint p;
        double u = rng.uniform() * mass;
        std::size_t idx = 0;
        for (; idx + 1 < spec.intensity.nodes.size(); ++idx) {
            u -= spec.intensity.weights[idx];
            if (u <= 0.0) break;
        }
        p.location = spec.intensity.nodes[idx];
        p.mark = spec.mark(p.location);
        r.points.push_back(std::move(p));
    }
    return r;
}

NoiseRealization sample_fbm_paths(double hurst, const TimeGrid& grid, int k, std::uint64_t seed) {
    FbmSampler sampler(hurst, grid);
    NoiseRealization r;
    r.seed = seed;
    r.paths = sampler.draw(k, seed);
    return r;
}

NoiseRealization sample_homogeneous_paths(const HomogeneousSpec& spec, const TimeGrid& grid,
                                          std::uint64_t seed) {
    spec.validate();
    const int k = spec.channel_count();
    if (k == 0) throw ConfigError("sample_homogeneous_paths: spectral measure has no atoms");
    return sample_fbm_paths(0.5, grid, k, seed);
}

NoiseRealization sample_elliptic(const BoundaryNoiseSpec& spec, std::uint64_t seed) {
    struct V {
        std::uint64_t seed;
        NoiseRealization operator()(const WhiteNoiseSpec& s) const {
            return sample_elliptic_white(s, seed);
        }
        NoiseRealization operator()(const CylFractionalSpec& s) const {
            // at unit time each fractional coordinate is standard normal
            WhiteNoiseSpec w{s.nu, s.basis, s.truncation};
            return sample_elliptic_white(w, seed);
        }
        NoiseRealization operator()(const SignedSeriesSpec& s) const {
            if (s.measures.empty()) throw ConfigError("sample_elliptic: empty measure list");
            NoiseRealization r;
            r.seed = seed;
            Rng rng(seed);
            r.coefficients.resize(s.measures.size());
            for (double& c : r.coefficients) c = rng.normal();
            return r;
        }
        NoiseRealization operator()(const HomogeneousSpec& s) const {
            s.validate();
            NoiseRealization r;
            r.seed = seed;
            Rng rng(seed);
            r.coefficients.resize(s.channel_count());
            for (double& c : r.coefficients) c = rng.normal();
            return r;
        }
        NoiseRealization operator()(const PoissonSpec& s) const {
            return sample_poisson_boundary(s, seed);
        }
    };
    return std::visit(V{seed}, spec);
}

}  // namespace dnoise
