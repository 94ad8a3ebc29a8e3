#pragma once

#include <cstddef>
#include <vector>

#include "opuc/basis.hpp"
#include "opuc/circle.hpp"

namespace opuc {

/// The n+1 zeros of B_{n+1}(w, .) together with their Szego weights 1/K_n(zeta, zeta).
/// Nodes are sorted by angle in [0, 2pi); the node equal to w is stored as w exactly.
struct NodeSystem {
    int n = 0;
    Complex w{1.0, 0.0};
    std::vector<Complex> nodes;
    std::vector<double> angles;
    std::vector<double> kernel_diags;
    std::vector<double> weights;
    /// Angles refined in binary128 and K_n(zeta, zeta) accumulated in binary128; the double
    /// members above are their roundings.
    std::vector<Wide> wide_angles;
    std::vector<Wide> wide_kernel_diags;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
    /// Index of the node equal to w.
    [[nodiscard]] std::size_t w_index() const;
    [[nodiscard]] WideComplex wide_node(std::size_t j) const { return wide_unit(wide_angles.at(j)); }
};

/// B_{n+1}(w, z) = conj(phi_{n+1}^*(w)) phi_{n+1}^*(z) - conj(phi_{n+1}(w)) phi_{n+1}(z).
[[nodiscard]] Complex para_eval(const OpucBasis& b, int n, Complex w, Complex z);

/// Locate the n+1 zeros of B_{n+1}(w, .) on the unit circle.
///
/// B_{n+1}(w, .) is self-inversive, so along z = w e^{it} the quantity
/// e^{-i(n+1)t/2} B_{n+1}(w, z) has constant phase. Rotating that phase away gives a real
/// function of t with the same zeros; sign changes on a uniform grid of 8(n+1) points
/// (offset by half a step so w sits inside a bracket) are bisected to 1e-13 and polished by
/// one Newton step. The grid is doubled up to 128(n+1) points until exactly n+1 zeros are
/// found, else NodeFindingFailure. Every node other than w is then refined in binary128 by
/// Newton's method on arg(phi_{n+1} / phi_{n+1}^*).
[[nodiscard]] NodeSystem find_nodes(const OpucBasis& b, int n, Complex w);

/// Q_n(f) = sum_j f(zeta_j) / K_n(zeta_j, zeta_j).
[[nodiscard]] Complex szego_quadrature(const NodeSystem& ns, const CircleFunction& f);

}  // namespace opuc
