#pragma once

#include <algorithm>
#include <vector>

#include "opuc/basis.hpp"
#include "opuc/measure.hpp"
#include "opuc/paraorth.hpp"

namespace opuc {

/// Evaluation grid for interpolation errors: the error oscillates at frequency ~n.
[[nodiscard]] inline int error_resolution(int n) { return std::max(kDefaultResolution, 32 * (n + 1)); }

/// l_j(z) = K_n(zeta_j, z) / K_n(zeta_j, zeta_j), the degree-n polynomial that is 1 at node j
/// and 0 at the other nodes. Summed directly in binary128 at the refined node: where the
/// measure has a gap, l_j is huge off the support and a double evaluation at the rounded node
/// misses the value 0 at other nodes by far more than rounding.
[[nodiscard]] Complex fundamental_eval(const NodeSystem& ns, const OpucBasis& b, int j, Complex z);
[[nodiscard]] WideComplex fundamental_eval_wide(const NodeSystem& ns, const OpucBasis& b, int j,
                                                const WideComplex& z);

/// L_n(f) = sum_j f(zeta_j) l_j. The kernel sum is regrouped by degree,
///   L_n(f) = sum_k c_k phi_k,  c_k = sum_j f(zeta_j) conj(phi_k(zeta_j)) / K_n(zeta_j, zeta_j),
/// so one evaluation is a single O(n) recursion sweep. Coefficients and evaluation are carried
/// in binary128.
class Interpolant {
public:
    Interpolant(NodeSystem nodes, OpucBasis basis, std::vector<Complex> samples);
    Interpolant(NodeSystem nodes, OpucBasis basis, std::vector<WideComplex> samples);

    [[nodiscard]] Complex operator()(Complex z) const;
    [[nodiscard]] WideComplex eval(const WideComplex& z) const;

    /// Same value through the fundamental polynomials, O(n^2).
    [[nodiscard]] Complex eval_kernel_form(Complex z) const;

    [[nodiscard]] const NodeSystem& nodes() const { return nodes_; }
    [[nodiscard]] const OpucBasis& basis() const { return basis_; }
    [[nodiscard]] const std::vector<Complex>& samples() const { return samples_; }
    /// Coordinates in the orthonormal basis phi_0..phi_n.
    [[nodiscard]] const std::vector<Complex>& coefficients() const { return coefficients_; }

    /// ||L_n(f)||_2 from the discrete Parseval identity, sqrt(sum_j weights_j |f(zeta_j)|^2).
    [[nodiscard]] double parseval_norm() const;

private:
    void build();

    NodeSystem nodes_;
    OpucBasis basis_;
    std::vector<WideComplex> wide_samples_;
    std::vector<Complex> samples_;
    std::vector<WideComplex> wide_coefficients_;
    std::vector<Complex> coefficients_;
};

[[nodiscard]] Interpolant interpolate(const NodeSystem& ns, const OpucBasis& b, const CircleFunction& f);

/// ||f - L_n(f)||_p against m on error_resolution(n) points per piece. p outside (0, 2] is
/// computed all the same; callers flag it.
[[nodiscard]] double interp_error(const NodeSystem& ns, const OpucBasis& b, const Measure& m,
                                  const CircleFunction& f, double p);

/// Same against an existing interpolant.
[[nodiscard]] double interp_error(const Interpolant& interpolant, const Measure& m,
                                  const CircleFunction& f, double p);

}  // namespace opuc
