#include "opuc/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <quadmath.h>

#include "format.hpp"
#include "opuc/errors.hpp"

namespace opuc {

namespace {

constexpr int kPanelOrder = 16;
constexpr int kMomentStartResolution = 4096;
constexpr int kMomentMaxResolution = 1 << 20;
constexpr double kMomentTolerance = 1e-12;

struct GaussLegendre {
    std::array<double, kPanelOrder> nodes{};
    std::array<double, kPanelOrder> weights{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_16.
const GaussLegendre& panel_rule() {
    static const GaussLegendre rule = [] {
        GaussLegendre gl;
        const int n = kPanelOrder;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            gl.nodes[i] = -x;
            gl.nodes[n - 1 - i] = x;
            gl.weights[i] = w;
            gl.weights[n - 1 - i] = w;
        }
        return gl;
    }();
    return rule;
}

void append_piece(const DensityPiece& piece, int resolution, QuadratureRule& rule) {
    const double scale = 1.0 / kTwoPi;
    if (piece.periodic) {
        const double h = (piece.end - piece.begin) / resolution;
        for (int i = 0; i < resolution; ++i) {
            const double theta = piece.begin + i * h;
            const double d = piece.density(theta);
            if (d == 0.0) continue;
            rule.points.push_back(unit(theta));
            rule.weights.push_back(d * h * scale);
        }
        return;
    }
    const auto& gl = panel_rule();
    const int panels = std::max(1, (resolution + kPanelOrder - 1) / kPanelOrder);
    const double width = (piece.end - piece.begin) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = piece.begin + (p + 0.5) * width;
        for (int i = 0; i < kPanelOrder; ++i) {
            const double theta = mid + 0.5 * width * gl.nodes[i];
            const double d = piece.density(theta);
            if (d == 0.0) continue;
            rule.points.push_back(unit(theta));
            rule.weights.push_back(d * 0.5 * width * gl.weights[i] * scale);
        }
    }
}

void check_resolution(int resolution) {
    if (resolution < 16) throw std::invalid_argument("resolution must be at least 16");
}

// Density-only moments at a fixed per-piece resolution.
std::vector<Complex> density_moments_at(const Measure& m, int order, int resolution) {
    QuadratureRule rule;
    for (const auto& piece : m.pieces()) append_piece(piece, resolution, rule);
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const Complex step = std::conj(rule.points[i]);
        Complex power{1.0, 0.0};
        for (int k = 0; k <= order; ++k) {
            c[static_cast<std::size_t>(k)] += rule.weights[i] * power;
            power *= step;
        }
    }
    return c;
}

void add_atoms(const Measure& m, std::vector<Complex>& c) {
    for (const auto& atom : m.atoms()) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            c[k] += atom.mass * unit(-static_cast<double>(k) * atom.angle);
        }
    }
}

}  // namespace

const char* to_string(SzegoClass c) {
    switch (c) {
        case SzegoClass::szego: return "szego";
        case SzegoClass::non_szego: return "non_szego";
        case SzegoClass::unknown: return "unknown";
    }
    return "unknown";
}

Measure Measure::lebesgue() {
    Measure m;
    m.pieces_.push_back({0.0, kTwoPi, [](double) { return 1.0; }, true});
    m.szego_class_ = SzegoClass::szego;
    m.description_ = "lebesgue";
    m.density_moment_ = [](int k) { return Complex{k == 0 ? 1.0 : 0.0, 0.0}; };
    m.wide_density_moment_ = [](int k) { return WideComplex{k == 0 ? Wide(1) : Wide(0)}; };
    return m;
}

Measure Measure::arc(double half_width) {
    if (!(half_width > 0.0) || half_width > kPi) {
        throw InvalidMeasure("arc half-width must lie in (0, pi], got " +
                             detail::shortest(half_width));
    }
    if (half_width == kPi) {
        Measure m = lebesgue();
        m.description_ = "arc:" + detail::shortest(half_width);
        return m;
    }
    Measure m;
    m.pieces_.push_back({-half_width, half_width, [](double) { return 1.0; }, false});
    m.szego_class_ = SzegoClass::non_szego;
    m.description_ = "arc:" + detail::shortest(half_width);
    m.density_moment_ = [half_width](int k) {
        if (k == 0) return Complex{half_width / kPi, 0.0};
        return Complex{std::sin(k * half_width) / (kPi * k), 0.0};
    };
    m.wide_density_moment_ = [half_width](int k) {
        const Wide a = half_width;
        const Wide pi = acosq(Wide(-1));
        if (k == 0) return WideComplex{a / pi};
        return WideComplex{sinq(k * a) / (pi * k)};
    };
    return m;
}

Measure Measure::from_density(std::vector<DensityPiece> pieces, SzegoClass szego_class,
                              std::string description,
                              std::function<Complex(int)> density_moment,
                              std::function<WideComplex(int)> wide_density_moment) {
    for (const auto& p : pieces) {
        if (!p.density) throw InvalidMeasure("density piece without a density function");
        if (!(p.end > p.begin) || p.end - p.begin > kTwoPi + 1e-12) {
            throw InvalidMeasure("density piece must satisfy 0 < end - begin <= 2pi");
        }
    }
    Measure m;
    m.pieces_ = std::move(pieces);
    m.szego_class_ = szego_class;
    m.description_ = std::move(description);
    m.density_moment_ = std::move(density_moment);
    m.wide_density_moment_ = std::move(wide_density_moment);
    return m;
}

Measure Measure::with_atoms(const std::vector<Atom>& extra) const {
    Measure m = *this;
    std::string suffix;
    for (const auto& atom : extra) {
        if (!(atom.mass > 0.0) || !std::isfinite(atom.mass)) {
            throw InvalidMeasure("atom mass must be positive and finite, got " +
                                 detail::shortest(atom.mass));
        }
        if (!std::isfinite(atom.angle)) throw InvalidMeasure("atom angle must be finite");
        const double angle = wrap_angle(atom.angle);
        for (const auto& existing : m.atoms_) {
            if (angular_distance(existing.angle, angle) <= 1e-12) {
                throw InvalidMeasure("duplicate atom angle " + detail::shortest(atom.angle));
            }
        }
        m.atoms_.push_back({angle, atom.mass});
        if (!suffix.empty()) suffix += ',';
        suffix += detail::shortest(atom.angle) + ":" + detail::shortest(atom.mass);
    }
    if (!suffix.empty()) {
        m.description_ += (atoms_.empty() ? "+atoms:" : ",") + suffix;
    }
    return m;
}

std::vector<double> Measure::breakpoints() const {
    std::vector<double> out;
    for (const auto& p : pieces_) {
        if (p.periodic) continue;
        out.push_back(wrap_angle(p.begin));
        out.push_back(wrap_angle(p.end));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double Measure::density(double theta) const {
    double total = 0.0;
    for (const auto& p : pieces_) {
        const double offset = wrap_angle(theta - p.begin);
        if (p.periodic || (offset > 0.0 && offset < p.end - p.begin)) total += p.density(theta);
    }
    return total;
}

std::optional<Complex> Measure::density_moment(int k) const {
    if (!density_moment_) return std::nullopt;
    return density_moment_(k);
}

std::optional<WideComplex> Measure::wide_density_moment(int k) const {
    if (!wide_density_moment_) return std::nullopt;
    return wide_density_moment_(k);
}

MomentTable WideMomentTable::rounded() const {
    MomentTable t;
    t.values.reserve(values.size());
    for (const auto& v : values) t.values.push_back(v.to_complex());
    return t;
}

WideMomentTable wide_moments(const Measure& m, int order) {
    if (order < 0) throw std::invalid_argument("moment order must be nonnegative");
    if (m.has_density() && !m.wide_density_moment(0)) {
        throw std::invalid_argument("no binary128 closed form for the density of " +
                                    m.description());
    }
    WideMomentTable t;
    t.values.assign(static_cast<std::size_t>(order) + 1, WideComplex{});
    for (int k = 0; k <= order; ++k) {
        auto& c = t.values[static_cast<std::size_t>(k)];
        if (m.has_density()) c = *m.wide_density_moment(k);
        for (const auto& atom : m.atoms()) {
            const Wide phase = -Wide(k) * Wide(atom.angle);
            c += Wide(atom.mass) * WideComplex{cosq(phase), sinq(phase)};
        }
    }
    return t;
}

QuadratureRule quadrature_rule(const Measure& m, int resolution) {
    check_resolution(resolution);
    QuadratureRule rule;
    for (const auto& piece : m.pieces()) append_piece(piece, resolution, rule);
    for (const auto& atom : m.atoms()) {
        rule.points.push_back(unit(atom.angle));
        rule.weights.push_back(atom.mass);
    }
    return rule;
}

MomentTable numeric_moments(const Measure& m, int order) {
    if (order < 0) throw std::invalid_argument("moment order must be nonnegative");
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
    if (m.has_density()) {
        int resolution = kMomentStartResolution;
        c = density_moments_at(m, order, resolution);
        for (;;) {
            if (resolution >= kMomentMaxResolution) {
                throw QuadratureNonConvergence(
                    "moment quadrature did not converge at 2^20 points per piece for " +
                    m.description());
            }
            resolution *= 2;
            auto refined = density_moments_at(m, order, resolution);
            bool converged = true;
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (std::abs(refined[k] - c[k]) > kMomentTolerance * (1.0 + std::abs(refined[k]))) {
                    converged = false;
                    break;
                }
            }
            c = std::move(refined);
            if (converged) break;
        }
    }
    add_atoms(m, c);
    return MomentTable{std::move(c)};
}

MomentTable moments(const Measure& m, int order) {
    if (order < 0) throw std::invalid_argument("moment order must be nonnegative");
    if (m.has_density() && !m.density_moment(0)) return numeric_moments(m, order);
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
    if (m.has_density()) {
        for (int k = 0; k <= order; ++k) c[static_cast<std::size_t>(k)] = *m.density_moment(k);
    }
    add_atoms(m, c);
    return MomentTable{std::move(c)};
}

Complex integrate(const QuadratureRule& rule, const CircleFunction& g) {
    Complex total{};
    for (std::size_t i = 0; i < rule.size(); ++i) total += rule.weights[i] * g(rule.points[i]);
    return total;
}

double lp_norm(const QuadratureRule& rule, const CircleFunction& g, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm requires p > 0");
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        total += rule.weights[i] * std::pow(std::abs(g(rule.points[i])), p);
    }
    return std::pow(total, 1.0 / p);
}

Complex integrate(const Measure& m, const CircleFunction& g, int resolution) {
    return integrate(quadrature_rule(m, resolution), g);
}

double lp_norm(const Measure& m, const CircleFunction& g, double p, int resolution) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm requires p > 0");
    return lp_norm(quadrature_rule(m, resolution), g, p);
}

}  // namespace opuc
