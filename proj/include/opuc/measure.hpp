#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opuc/circle.hpp"
#include "opuc/wide.hpp"

namespace opuc {

/// Points per smooth piece used by integrate() and lp_norm() when the caller has no better idea.
inline constexpr int kDefaultResolution = 4096;

/// Whether log mu' is integrable against Lebesgue measure. Declared by whoever builds the
/// measure; it is never computed.
enum class SzegoClass { szego, non_szego, unknown };

[[nodiscard]] const char* to_string(SzegoClass c);

struct Atom {
    double angle;  // radians, stored in [0, 2pi)
    double mass;   // > 0
};

/// One smooth piece of the absolutely continuous part, dmu = density(theta) dtheta / (2pi)
/// on (begin, end). end - begin lies in (0, 2pi]; angles may run past 2pi to wrap the seam.
/// A periodic piece covers the whole circle and is smooth across its endpoints, which
/// makes the trapezoid rule spectrally accurate on it.
struct DensityPiece {
    double begin = 0.0;
    double end = kTwoPi;
    std::function<double(double)> density;
    bool periodic = false;
};

/// Finite positive measure on the unit circle: piecewise-smooth density plus finitely many
/// atoms. Immutable once built.
class Measure {
public:
    /// Normalized Lebesgue measure, density 1 against dtheta/2pi so c_0 = 1.
    static Measure lebesgue();

    /// Indicator of the arc [-half_width, half_width]; half_width in (0, pi].
    /// arc(pi) is Lebesgue measure.
    static Measure arc(double half_width);

    /// General density. density_moment, when given, returns the closed form
    /// (1/2pi) integral of e^{-ik theta} density(theta) d theta for k >= 0.
    static Measure from_density(std::vector<DensityPiece> pieces, SzegoClass szego_class,
                                std::string description,
                                std::function<Complex(int)> density_moment = {},
                                std::function<WideComplex(int)> wide_density_moment = {});

    /// Copy of this measure with extra point masses. Angles are reduced mod 2pi and must be
    /// distinct from each other and from existing atoms; masses must be positive.
    [[nodiscard]] Measure with_atoms(const std::vector<Atom>& extra) const;

    [[nodiscard]] const std::vector<DensityPiece>& pieces() const { return pieces_; }
    [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
    [[nodiscard]] SzegoClass szego_class() const { return szego_class_; }
    [[nodiscard]] const std::string& description() const { return description_; }

    /// Sorted angles in [0, 2pi) where the density may fail to be smooth.
    [[nodiscard]] std::vector<double> breakpoints() const;

    /// Density value at theta (sum over pieces whose open interval contains theta).
    [[nodiscard]] double density(double theta) const;

    /// Closed-form density moment, when the constructor supplied one.
    [[nodiscard]] std::optional<Complex> density_moment(int k) const;

    /// Closed-form density moment in binary128, when available.
    [[nodiscard]] std::optional<WideComplex> wide_density_moment(int k) const;

    [[nodiscard]] bool has_density() const { return !pieces_.empty(); }

private:
    Measure() = default;

    std::vector<DensityPiece> pieces_;
    std::vector<Atom> atoms_;
    SzegoClass szego_class_ = SzegoClass::unknown;
    std::string description_;
    std::function<Complex(int)> density_moment_;
    std::function<WideComplex(int)> wide_density_moment_;
};

/// Trigonometric moments c_k = integral e^{-ik theta} dmu for k = 0..order.
/// c_{-k} = conj(c_k) is available through at().
struct MomentTable {
    std::vector<Complex> values;

    [[nodiscard]] int order() const { return static_cast<int>(values.size()) - 1; }

    /// c_k for |k| <= order().
    [[nodiscard]] Complex at(int k) const {
        return k >= 0 ? values.at(static_cast<std::size_t>(k))
                      : std::conj(values.at(static_cast<std::size_t>(-k)));
    }
};

/// Moments c_0..c_N carried in binary128.
struct WideMomentTable {
    std::vector<WideComplex> values;

    [[nodiscard]] int order() const { return static_cast<int>(values.size()) - 1; }

    [[nodiscard]] WideComplex at(int k) const {
        return k >= 0 ? values.at(static_cast<std::size_t>(k))
                      : conj(values.at(static_cast<std::size_t>(-k)));
    }

    [[nodiscard]] MomentTable rounded() const;
};

/// Discrete weighted point set approximating a measure: integral g dmu ~ sum weights[i] g(points[i]).
/// Atoms appear with their exact masses; density pieces use trapezoid (periodic pieces) or
/// composite 16-point Gauss-Legendre panels (pieces with endpoints).
struct QuadratureRule {
    std::vector<Complex> points;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// Discretize m with roughly resolution points per density piece. resolution >= 16.
[[nodiscard]] QuadratureRule quadrature_rule(const Measure& m, int resolution);

/// Moments through order N. Built-ins use closed forms; other densities are integrated
/// numerically with grid doubling (see numeric_moments).
[[nodiscard]] MomentTable moments(const Measure& m, int order);

/// Moments with the density part always integrated numerically: start at 4096 points per
/// piece and double until successive estimates agree to 1e-12 (1 + |c_k|), capped at 2^20.
/// Throws QuadratureNonConvergence past the cap.
[[nodiscard]] MomentTable numeric_moments(const Measure& m, int order);

/// Moments in binary128 from closed forms (density part) and exact atom sums. The map from
/// moments to Verblunsky coefficients amplifies rounding roughly geometrically in the degree
/// for measures with gaps, so double-rounded moments stop determining alpha_n well before
/// degree 24 for arc(pi/2). Throws std::invalid_argument when the density part has no
/// closed form.
[[nodiscard]] WideMomentTable wide_moments(const Measure& m, int order);

/// integral g dmu at the given per-piece resolution plus the exact atom sum.
[[nodiscard]] Complex integrate(const Measure& m, const CircleFunction& g,
                                int resolution = kDefaultResolution);

/// (integral |g|^p dmu)^{1/p}, p > 0.
[[nodiscard]] double lp_norm(const Measure& m, const CircleFunction& g, double p,
                             int resolution = kDefaultResolution);

/// Same quantity against an already-built rule.
[[nodiscard]] Complex integrate(const QuadratureRule& rule, const CircleFunction& g);
[[nodiscard]] double lp_norm(const QuadratureRule& rule, const CircleFunction& g, double p);

}  // namespace opuc
