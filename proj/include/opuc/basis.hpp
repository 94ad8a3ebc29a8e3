#pragma once

#include <span>
#include <vector>

#include "opuc/circle.hpp"
#include "opuc/measure.hpp"

namespace opuc {

/// Default cap on the polynomial degree in double precision.
inline constexpr int kMaxDegree = 256;

/// |alpha_n| at or above this is treated as a finitely supported measure.
inline constexpr double kDegeneracyThreshold = 1.0 - 1e-12;

/// phi_n(z) and its reversal phi_n^*(z) = z^n conj(phi_n(1/conj z)).
struct PhiPair {
    Complex phi;
    Complex phi_star;
    int degree = 0;
    Complex z;
};

/// Orthonormal polynomials on the unit circle, stored through their Verblunsky coefficients.
///
/// Monic recursion (Simon's sign convention):
///   Phi_{n+1}(z)   = z Phi_n(z) - conj(alpha_n) Phi_n^*(z)
///   Phi_{n+1}^*(z) = Phi_n^*(z) - alpha_n z Phi_n(z)
/// with ||Phi_{n+1}||^2 = (1 - |alpha_n|^2) ||Phi_n||^2 and kappa_n = ||Phi_n||^{-1}.
class OpucBasis {
public:
    /// Build from alpha_0..alpha_{N-1} and the total mass c_0. Throws DegenerateMeasure if
    /// some |alpha_n| >= kDegeneracyThreshold.
    OpucBasis(std::vector<Complex> alphas, double mass);

    [[nodiscard]] int max_degree() const { return static_cast<int>(alphas_.size()); }
    [[nodiscard]] double mass() const { return monic_norms_sq_.front(); }
    [[nodiscard]] std::span<const Complex> alphas() const { return alphas_; }
    [[nodiscard]] std::span<const double> monic_norms_sq() const { return monic_norms_sq_; }
    [[nodiscard]] std::span<const double> kappas() const { return kappas_; }
    /// sqrt(1 - |alpha_n|^2)
    [[nodiscard]] std::span<const double> rhos() const { return rhos_; }

private:
    std::vector<Complex> alphas_;
    std::vector<double> rhos_;
    std::vector<double> monic_norms_sq_;
    std::vector<double> kappas_;
};

/// Levinson-type recursion on monic coefficient vectors, O(N^2), carried out in binary128.
/// Needs moments through order max_degree. Throws DegenerateMeasure when some
/// |alpha_n| >= 1 - 1e-12.
///
/// The map from moments to alpha_n inherits the condition number of the Toeplitz matrix
/// [c_{j-k}], which grows geometrically for measures whose support has a gap: with
/// double-rounded moments, arc(pi/2) loses all accuracy near degree 20. Feed the
/// WideMomentTable overload for such measures, or use verblunsky_from_measure.
[[nodiscard]] OpucBasis verblunsky_from_moments(const MomentTable& moments, int max_degree);
[[nodiscard]] OpucBasis verblunsky_from_moments(const WideMomentTable& moments, int max_degree);

/// Same coefficients computed by the Stieltjes-type procedure: phi_n and phi_n^* are
/// carried on the points of a quadrature rule for m and
///   conj(alpha_n) = integral z phi_n(z) conj(phi_n^*(z)) dmu
/// is evaluated directly, so no moments are involved. resolution 0 picks
/// max(4096, 64 (max_degree + 1)) points per density piece. Throws DegenerateMeasure when
/// some |alpha_n| >= 1 - 1e-12, or when the recursion driven by the computed alphas drifts
/// more than 1e-8 in L2(mu) from the orthonormalized samples (an atom deep in a gap of the
/// support does this within a few dozen degrees).
[[nodiscard]] OpucBasis verblunsky_from_measure(const Measure& m, int max_degree,
                                                int resolution = 0);

/// phi_n(z) and phi_n^*(z), 0 <= n <= max_degree.
[[nodiscard]] PhiPair eval_phi(const OpucBasis& b, int n, Complex z);

/// phi_0(z)..phi_n(z) in one recursion sweep.
[[nodiscard]] std::vector<Complex> eval_phi_all(const OpucBasis& b, int n, Complex z);

/// K_n(w, z) = sum_{j<=n} conj(phi_j(w)) phi_j(z). Uses the Christoffel-Darboux quotient when
/// |1 - conj(w) z| > 1e-8 (evaluated in binary128) and the direct sum otherwise. Requires
/// n + 1 <= max_degree.
[[nodiscard]] Complex cd_kernel(const OpucBasis& b, int n, Complex w, Complex z);

/// Direct sum form of K_n(w, z); needs only n <= max_degree.
[[nodiscard]] Complex kernel_direct(const OpucBasis& b, int n, Complex w, Complex z);

/// K_n(w, w) = sum |phi_j(w)|^2 by direct summation.
[[nodiscard]] double kernel_diag(const OpucBasis& b, int n, Complex w);

/// Binary128 evaluation of the basis defined by the stored alphas and mass. Off the support
/// of a measure with a gap, |phi_n| grows geometrically and identities that cancel large
/// terms need the extra digits.
struct WidePhiPair {
    WideComplex phi;
    WideComplex phi_star;
};

[[nodiscard]] WidePhiPair eval_phi_wide(const OpucBasis& b, int n, const WideComplex& z);
[[nodiscard]] std::vector<WideComplex> eval_phi_all_wide(const OpucBasis& b, int n, const WideComplex& z);

}  // namespace opuc
