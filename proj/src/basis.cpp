#include "opuc/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "format.hpp"
#include "opuc/errors.hpp"

namespace opuc {

namespace {

constexpr double kCdSwitch = 1e-8;

void check_degree(const OpucBasis& b, int n, int extra = 0) {
    if (n < 0 || n + extra > b.max_degree()) {
        throw std::out_of_range("degree " + std::to_string(n + extra) +
                                " outside basis range 0.." + std::to_string(b.max_degree()));
    }
}

constexpr double kRecursionDrift = 1e-8;

[[noreturn]] void degenerate(int n, double modulus) {
    throw DegenerateMeasure("|alpha_" + std::to_string(n) + "| = " + std::to_string(modulus) +
                                ": measure is numerically supported on at most " +
                                std::to_string(n + 1) + " points",
                            n);
}

}  // namespace

OpucBasis::OpucBasis(std::vector<Complex> alphas, double mass) : alphas_(std::move(alphas)) {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw std::invalid_argument("total mass must be positive and finite");
    }
    const std::size_t n = alphas_.size();
    rhos_.resize(n);
    monic_norms_sq_.resize(n + 1);
    kappas_.resize(n + 1);
    monic_norms_sq_[0] = mass;
    kappas_[0] = 1.0 / std::sqrt(mass);
    for (std::size_t k = 0; k < n; ++k) {
        const double modulus = std::abs(alphas_[k]);
        if (!(modulus < kDegeneracyThreshold)) degenerate(static_cast<int>(k), modulus);
        const double one_minus = (1.0 - modulus) * (1.0 + modulus);
        rhos_[k] = std::sqrt(one_minus);
        monic_norms_sq_[k + 1] = one_minus * monic_norms_sq_[k];
        kappas_[k + 1] = kappas_[k] / rhos_[k];
    }
}

OpucBasis verblunsky_from_moments(const WideMomentTable& moments, int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("max_degree must be nonnegative");
    if (moments.order() < max_degree) {
        throw std::invalid_argument("moment table of order " + std::to_string(moments.order()) +
                                    " cannot support degree " + std::to_string(max_degree));
    }
    const Wide c0 = moments.at(0).re;
    if (!(c0 > 0)) throw std::invalid_argument("c_0 must be positive");

    // coeffs[j] is the z^j coefficient of the monic Phi_n.
    std::vector<WideComplex> coeffs{WideComplex{1}};
    std::vector<Complex> alphas;
    alphas.reserve(static_cast<std::size_t>(max_degree));
    Wide norm_sq = c0;
    const Wide threshold_sq = Wide(kDegeneracyThreshold) * Wide(kDegeneracyThreshold);
    for (int n = 0; n < max_degree; ++n) {
        // <z Phi_n, 1> = sum_j a_j <z^{j+1}, 1> = sum_j a_j c_{-(j+1)}
        WideComplex inner;
        for (int j = 0; j <= n; ++j) inner += coeffs[static_cast<std::size_t>(j)] * moments.at(-(j + 1));
        const WideComplex alpha_bar = inner / norm_sq;
        const Wide modulus_sq = norm(alpha_bar);
        if (!(modulus_sq < threshold_sq)) {
            degenerate(n, std::sqrt(static_cast<double>(modulus_sq)));
        }
        alphas.push_back(conj(alpha_bar).to_complex());

        // Phi_{n+1} = z Phi_n - conj(alpha) Phi_n^*, Phi_n^* has coefficients conj(a_{n-j}).
        std::vector<WideComplex> next(static_cast<std::size_t>(n) + 2);
        for (int j = 0; j <= n + 1; ++j) {
            const WideComplex shifted = j >= 1 ? coeffs[static_cast<std::size_t>(j - 1)] : WideComplex{};
            const WideComplex reversed = j <= n ? conj(coeffs[static_cast<std::size_t>(n - j)]) : WideComplex{};
            next[static_cast<std::size_t>(j)] = shifted - alpha_bar * reversed;
        }
        coeffs = std::move(next);
        norm_sq *= 1 - modulus_sq;
    }
    return OpucBasis(std::move(alphas), static_cast<double>(c0));
}

OpucBasis verblunsky_from_moments(const MomentTable& moments, int max_degree) {
    WideMomentTable wide;
    wide.values.reserve(moments.values.size());
    for (const auto& c : moments.values) wide.values.emplace_back(c);
    return verblunsky_from_moments(wide, max_degree);
}

OpucBasis verblunsky_from_measure(const Measure& m, int max_degree, int resolution) {
    if (max_degree < 0) throw std::invalid_argument("max_degree must be nonnegative");
    if (resolution == 0) resolution = std::max(kDefaultResolution, 64 * (max_degree + 1));
    const QuadratureRule rule = quadrature_rule(m, resolution);
    const double c0 = moments(m, 0).at(0).real();
    const std::size_t count = rule.size();

    auto inner = [&](const std::vector<Complex>& f, const std::vector<Complex>& g) {
        Complex s{};
        for (std::size_t i = 0; i < count; ++i) s += rule.weights[i] * f[i] * std::conj(g[i]);
        return s;
    };

    // Rows of phi_0..phi_n sampled on the rule. The three-term Szego recursion run on these
    // samples loses orthogonality geometrically once the support has a gap, so each new
    // polynomial is orthogonalized against all previous ones (two passes).
    std::vector<std::vector<Complex>> phis;
    phis.reserve(static_cast<std::size_t>(max_degree) + 1);
    phis.emplace_back(count, Complex{1.0 / std::sqrt(c0), 0.0});
    std::vector<Complex> alphas;
    alphas.reserve(static_cast<std::size_t>(max_degree));
    std::vector<Complex> shifted(count), star(count);
    // The same polynomials regenerated from the alphas alone. Near an isolated mass point in a
    // gap of the support the recursion amplifies rounding in alpha geometrically; once it no
    // longer reproduces the orthonormal vectors the coefficients do not describe the measure.
    std::vector<Complex> rec_phi(count, phis.front().front()), rec_star = rec_phi;
    for (int n = 0; n < max_degree; ++n) {
        const auto& phi = phis.back();
        for (std::size_t i = 0; i < count; ++i) {
            shifted[i] = rule.points[i] * phi[i];
            // phi_n^*(z) = z^n conj(phi_n(z)) on the circle
            star[i] = std::pow(rule.points[i], n) * std::conj(phi[i]);
        }
        const Complex alpha = std::conj(inner(shifted, star));
        const double modulus = std::abs(alpha);
        if (!(modulus < kDegeneracyThreshold)) degenerate(n, modulus);

        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& prev : phis) {
                const Complex proj = inner(shifted, prev);
                for (std::size_t i = 0; i < count; ++i) shifted[i] -= proj * prev[i];
            }
        }
        const double residual = std::sqrt(std::max(inner(shifted, shifted).real(), 0.0));
        // rho_n = sqrt(1 - |alpha_n|^2) in exact arithmetic
        if (!(residual * residual > (1.0 - kDegeneracyThreshold) * (1.0 + kDegeneracyThreshold))) {
            degenerate(n, std::sqrt(std::max(0.0, 1.0 - residual * residual)));
        }
        for (auto& v : shifted) v /= residual;

        const double rho = std::sqrt((1.0 - modulus) * (1.0 + modulus));
        double drift = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const Complex zphi = rule.points[i] * rec_phi[i];
            rec_phi[i] = (zphi - std::conj(alpha) * rec_star[i]) / rho;
            rec_star[i] = (rec_star[i] - alpha * zphi) / rho;
            drift += rule.weights[i] * std::norm(rec_phi[i] - shifted[i]);
        }
        if (!(std::sqrt(drift) <= kRecursionDrift)) {
            throw DegenerateMeasure("Szego recursion from the computed alpha_0..alpha_" + std::to_string(n) +
                                        " drifts from the orthonormal polynomials by " +
                                        detail::shortest(std::sqrt(drift)) + " in L2(mu)",
                                    n + 1);
        }
        alphas.push_back(alpha);
        phis.push_back(shifted);
    }
    return OpucBasis(std::move(alphas), c0);
}

PhiPair eval_phi(const OpucBasis& b, int n, Complex z) {
    check_degree(b, n);
    const auto alphas = b.alphas();
    const auto rhos = b.rhos();
    Complex phi{b.kappas()[0], 0.0};
    Complex star = phi;
    for (int k = 0; k < n; ++k) {
        const Complex zphi = z * phi;
        const Complex a = alphas[static_cast<std::size_t>(k)];
        const double rho = rhos[static_cast<std::size_t>(k)];
        phi = (zphi - std::conj(a) * star) / rho;
        star = (star - a * zphi) / rho;
    }
    return PhiPair{phi, star, n, z};
}

std::vector<Complex> eval_phi_all(const OpucBasis& b, int n, Complex z) {
    check_degree(b, n);
    const auto alphas = b.alphas();
    const auto rhos = b.rhos();
    std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
    Complex phi{b.kappas()[0], 0.0};
    Complex star = phi;
    out[0] = phi;
    for (int k = 0; k < n; ++k) {
        const Complex zphi = z * phi;
        const Complex a = alphas[static_cast<std::size_t>(k)];
        const double rho = rhos[static_cast<std::size_t>(k)];
        phi = (zphi - std::conj(a) * star) / rho;
        star = (star - a * zphi) / rho;
        out[static_cast<std::size_t>(k) + 1] = phi;
    }
    return out;
}

Complex kernel_direct(const OpucBasis& b, int n, Complex w, Complex z) {
    check_degree(b, n);
    const auto alphas = b.alphas();
    const auto rhos = b.rhos();
    Complex pw{b.kappas()[0], 0.0}, sw = pw;
    Complex pz = pw, sz = pw;
    Complex sum = std::conj(pw) * pz;
    for (int k = 0; k < n; ++k) {
        const Complex a = alphas[static_cast<std::size_t>(k)];
        const double rho = rhos[static_cast<std::size_t>(k)];
        const Complex zw = w * pw;
        const Complex zz = z * pz;
        pw = (zw - std::conj(a) * sw) / rho;
        sw = (sw - a * zw) / rho;
        pz = (zz - std::conj(a) * sz) / rho;
        sz = (sz - a * zz) / rho;
        sum += std::conj(pw) * pz;
    }
    return sum;
}

Complex cd_kernel(const OpucBasis& b, int n, Complex w, Complex z) {
    check_degree(b, n, 1);
    const Complex denom = 1.0 - std::conj(w) * z;
    if (std::abs(denom) <= kCdSwitch) return kernel_direct(b, n, w, z);
    // The numerator cancels two terms of size |phi_{n+1}|^2 down to |1 - conj(w) z| K_n.
    const WideComplex ww(w), wz(z);
    const WidePhiPair at_w = eval_phi_wide(b, n + 1, ww);
    const WidePhiPair at_z = eval_phi_wide(b, n + 1, wz);
    const WideComplex num = conj(at_w.phi_star) * at_z.phi_star - conj(at_w.phi) * at_z.phi;
    return (num / (WideComplex(1) - conj(ww) * wz)).to_complex();
}

double kernel_diag(const OpucBasis& b, int n, Complex w) {
    double sum = 0.0;
    for (const Complex v : eval_phi_all(b, n, w)) sum += std::norm(v);
    return sum;
}

namespace {

template <typename Visit>
WidePhiPair sweep_wide(const OpucBasis& b, int n, const WideComplex& z, Visit visit) {
    check_degree(b, n);
    const auto alphas = b.alphas();
    WideComplex phi{1 / sqrtq(static_cast<Wide>(b.mass()))};
    WideComplex star = phi;
    visit(0, phi);
    for (int k = 0; k < n; ++k) {
        const WideComplex a(alphas[static_cast<std::size_t>(k)]);
        const Wide rho = sqrtq(1 - norm(a));
        const WideComplex zphi = z * phi;
        phi = (zphi - conj(a) * star) / rho;
        star = (star - a * zphi) / rho;
        visit(k + 1, phi);
    }
    return {phi, star};
}

}  // namespace

WidePhiPair eval_phi_wide(const OpucBasis& b, int n, const WideComplex& z) {
    return sweep_wide(b, n, z, [](int, const WideComplex&) {});
}

std::vector<WideComplex> eval_phi_all_wide(const OpucBasis& b, int n, const WideComplex& z) {
    std::vector<WideComplex> out(static_cast<std::size_t>(std::max(n, 0)) + 1);
    sweep_wide(b, n, z, [&](int k, const WideComplex& v) { out[static_cast<std::size_t>(k)] = v; });
    return out;
}

}  // namespace opuc
