#include "opuc/paraorth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "opuc/errors.hpp"

namespace opuc {

namespace {

constexpr int kInitialGridFactor = 8;
constexpr int kMaxGridFactor = 128;
constexpr double kBisectionWidth = 1e-13;
constexpr double kNewtonStep = 1e-7;
constexpr double kSnapTolerance = 1e-10;
constexpr double kDuplicateTolerance = 1e-12;

Complex normalize_unimodular(Complex w) {
    const double r = std::abs(w);
    if (!(std::abs(r - 1.0) <= 1e-10)) {
        throw std::invalid_argument("w must lie on the unit circle, |w| = " + std::to_string(r));
    }
    return w / r;
}

// Real phase-rotated para-orthogonal polynomial along z = w e^{it}.
class PhaseFunction {
public:
    PhaseFunction(const OpucBasis& b, int n, Complex w) : basis_(b), n_(n), w_(w) {
        const PhiPair at_w = eval_phi(b, n + 1, w);
        cw_phi_ = std::conj(at_w.phi);
        cw_star_ = std::conj(at_w.phi_star);
    }

    [[nodiscard]] Complex raw(double t) const {
        const PhiPair at_z = eval_phi(basis_, n_ + 1, w_ * unit(t));
        const Complex value = cw_star_ * at_z.phi_star - cw_phi_ * at_z.phi;
        return unit(-0.5 * (n_ + 1) * t) * value;
    }

    void set_phase(Complex sample) { sigma_ = std::conj(sample) / std::abs(sample); }

    [[nodiscard]] double rotate(Complex raw_value) const { return (sigma_ * raw_value).real(); }
    [[nodiscard]] double operator()(double t) const { return rotate(raw(t)); }

private:
    const OpucBasis& basis_;
    int n_;
    Complex w_;
    Complex cw_phi_;
    Complex cw_star_;
    Complex sigma_{1.0, 0.0};
};

double bisect(const PhaseFunction& h, double a, double b, double ha) {
    for (int iter = 0; iter < 200 && b - a > kBisectionWidth; ++iter) {
        const double mid = 0.5 * (a + b);
        const double hm = h(mid);
        if (hm == 0.0) return mid;
        if ((hm < 0.0) == (ha < 0.0)) {
            a = mid;
            ha = hm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

double newton_polish(const PhaseFunction& h, double t) {
    const double ht = h(t);
    if (ht == 0.0) return t;
    const double slope = (h(t + kNewtonStep) - h(t - kNewtonStep)) / (2.0 * kNewtonStep);
    if (slope == 0.0 || !std::isfinite(slope)) return t;
    const double candidate = t - ht / slope;
    if (std::abs(candidate - t) < 1e-9 && std::abs(h(candidate)) < std::abs(ht)) return candidate;
    return t;
}

// Zeros of h as offsets t in [0, 2pi), found on a grid of `points` cells.
std::vector<double> scan(PhaseFunction& h, int points) {
    const double step = kTwoPi / points;
    std::vector<double> t(static_cast<std::size_t>(points) + 1);
    std::vector<Complex> raw(t.size());
    std::size_t largest = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        t[k] = (static_cast<double>(k) + 0.5) * step;
        raw[k] = h.raw(t[k]);
        if (std::abs(raw[k]) > std::abs(raw[largest])) largest = k;
    }
    if (!(std::abs(raw[largest]) > 0.0) || !std::isfinite(std::abs(raw[largest]))) {
        throw NodeFindingFailure("para-orthogonal polynomial vanishes or overflows on the grid");
    }
    h.set_phase(raw[largest]);
    std::vector<double> values(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) values[k] = h.rotate(raw[k]);

    std::vector<double> roots;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        if (values[k] == 0.0) {
            roots.push_back(t[k]);
        } else if ((values[k] < 0.0) != (values[k + 1] < 0.0) && values[k + 1] != 0.0) {
            roots.push_back(newton_polish(h, bisect(h, t[k], t[k + 1], values[k])));
        }
    }
    for (auto& r : roots) r = wrap_angle(r);
    std::sort(roots.begin(), roots.end());
    std::vector<double> distinct;
    for (const double r : roots) {
        if (distinct.empty() || r - distinct.back() > kDuplicateTolerance) distinct.push_back(r);
    }
    if (distinct.size() > 1 && kTwoPi - distinct.back() + distinct.front() <= kDuplicateTolerance) {
        distinct.pop_back();
    }
    return distinct;
}

// arg(phi_{n+1}(z) / phi_{n+1}^*(z)) relative to its value at w, along z = e^{it}. Zero
// exactly at the nodes and strictly increasing through each of them.
constexpr double kRefineTolerance = 1e-9;

class WidePhase {
public:
    WidePhase(const OpucBasis& b, int n, Wide w_angle) : basis_(b), degree_(n + 1) {
        const WidePhiPair at_w = eval_phi_wide(b, degree_, wide_unit(w_angle));
        reference_ = conj(at_w.phi * conj(at_w.phi_star));
    }

    Wide operator()(Wide t) const {
        const WidePhiPair v = eval_phi_wide(basis_, degree_, wide_unit(t));
        return wide_arg(v.phi * conj(v.phi_star) * reference_);
    }

private:
    const OpucBasis& basis_;
    int degree_;
    WideComplex reference_;
};

Wide refine(const WidePhase& g, Wide t) {
    const Wide h = static_cast<Wide>(1e-15);
    for (int iter = 0; iter < 6; ++iter) {
        const Wide slope = (g(t + h) - g(t - h)) / (2 * h);
        const Wide step = g(t) / slope;
        t -= step;
        if (fabsq(step) < static_cast<Wide>(1e-30)) break;
    }
    return t;
}

Wide wrap_wide(Wide t) {
    const Wide two_pi = 2 * acosq(static_cast<Wide>(-1));
    t = fmodq(t, two_pi);
    return t < 0 ? t + two_pi : t;
}

}  // namespace

std::size_t NodeSystem::w_index() const {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (nodes[j] == w) return j;
    }
    throw std::logic_error("node system does not contain its generating point");
}

Complex para_eval(const OpucBasis& b, int n, Complex w, Complex z) {
    if (n < 0 || n + 1 > b.max_degree()) {
        throw std::out_of_range("para_eval needs n + 1 <= max_degree");
    }
    const PhiPair at_w = eval_phi(b, n + 1, w);
    const PhiPair at_z = eval_phi(b, n + 1, z);
    return std::conj(at_w.phi_star) * at_z.phi_star - std::conj(at_w.phi) * at_z.phi;
}

NodeSystem find_nodes(const OpucBasis& b, int n, Complex w) {
    if (n < 0 || n + 1 > b.max_degree()) {
        throw std::out_of_range("find_nodes needs 0 <= n and n + 1 <= max_degree");
    }
    w = normalize_unimodular(w);
    PhaseFunction h(b, n, w);
    const int expected = n + 1;

    std::vector<double> offsets;
    int points = kInitialGridFactor * expected;
    for (;;) {
        offsets = scan(h, points);
        if (static_cast<int>(offsets.size()) == expected) break;
        if (points >= kMaxGridFactor * expected) {
            throw NodeFindingFailure("found " + std::to_string(offsets.size()) +
                                     " zeros of B_" + std::to_string(n + 1) + " instead of " +
                                     std::to_string(expected) + " at grid size " +
                                     std::to_string(points));
        }
        points *= 2;
    }

    // The offset closest to 0 (mod 2pi) is w itself.
    std::size_t w_pos = 0;
    double w_dist = kTwoPi;
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        const double d = std::min(offsets[j], kTwoPi - offsets[j]);
        if (d < w_dist) {
            w_dist = d;
            w_pos = j;
        }
    }
    if (w_dist > kSnapTolerance) {
        throw NodeFindingFailure("no computed zero within 1e-10 of w (closest " +
                                 std::to_string(w_dist) + ")");
    }

    const Wide w_wide = wide_arg(WideComplex(w));
    const WidePhase g(b, n, w_wide);
    std::vector<std::pair<Wide, bool>> found;
    found.reserve(offsets.size());
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        if (j == w_pos) {
            found.emplace_back(wrap_wide(w_wide), true);
        } else {
            const Wide start = w_wide + static_cast<Wide>(offsets[j]);
            const Wide refined = refine(g, start);
            if (!(fabsq(refined - start) <= kRefineTolerance)) {
                throw NodeFindingFailure("binary128 refinement moved a node by more than 1e-9");
            }
            found.emplace_back(wrap_wide(refined), false);
        }
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& c) { return a.first < c.first; });
    for (std::size_t j = 0; j + 1 < found.size(); ++j) {
        if (found[j + 1].first - found[j].first <= kDuplicateTolerance) {
            throw NodeFindingFailure("refined nodes coincide");
        }
    }

    NodeSystem ns;
    ns.n = n;
    ns.w = w;
    for (const auto& [angle, is_w] : found) {
        ns.wide_angles.push_back(angle);
        ns.angles.push_back(is_w ? angle_of(w) : static_cast<double>(angle));
        ns.nodes.push_back(is_w ? w : wide_unit(angle).to_complex());
        Wide k = 0;
        for (const auto& v : eval_phi_all_wide(b, n, wide_unit(angle))) k += norm(v);
        ns.wide_kernel_diags.push_back(k);
        ns.kernel_diags.push_back(static_cast<double>(k));
        ns.weights.push_back(static_cast<double>(1 / k));
    }
    return ns;
}

Complex szego_quadrature(const NodeSystem& ns, const CircleFunction& f) {
    Complex total{};
    for (std::size_t j = 0; j < ns.size(); ++j) total += ns.weights[j] * f(ns.nodes[j]);
    return total;
}

}  // namespace opuc
