#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "opuc/basis.hpp"
#include "opuc/circle.hpp"
#include "opuc/measure.hpp"
#include "opuc/paraorth.hpp"

namespace testing {

using opuc::Complex;

/// Seeded generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    double angle() { return uniform(0.0, opuc::kTwoPi); }
    Complex on_circle() { return opuc::unit(angle()); }
    Complex complex_unit_box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    std::vector<Complex> polynomial(int degree) {
        std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
        for (auto& v : c) v = complex_unit_box();
        return c;
    }

private:
    std::mt19937_64 engine_;
};

inline Complex horner(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

/// The three measures every criterion is run on.
std::vector<opuc::Measure> reference_measures();

/// Verblunsky coefficients by modified Gram-Schmidt on monomials under the Gram matrix
/// G[j][k] = <z^j, z^k> = c_{k-j}, in binary128; alpha_n = -conj(Phi_{n+1}(0)).
std::vector<Complex> gram_schmidt_alphas(const opuc::WideMomentTable& moments, int count);

/// Monic orthogonal polynomials from the same procedure, coefficients low to high, with
/// their squared norms.
struct MonicSystem {
    std::vector<std::vector<Complex>> coefficients;
    std::vector<double> norms_sq;
};
MonicSystem gram_schmidt_monic(const opuc::WideMomentTable& moments, int degree);

/// Angles in [0, 2pi), sorted, of the eigenvalues of the companion matrix of B_{n+1}(w, .)
/// expanded in monomials from the alphas.
std::vector<double> companion_node_angles(const opuc::OpucBasis& b, int n, Complex w);

/// Largest angular distance between two sorted angle lists of equal length, allowing for
/// the list to start at a different index after wrapping.
double angle_set_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace testing
