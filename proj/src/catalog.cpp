#include "opuc/catalog.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace opuc {

namespace {

const std::array<Complex, 8> kPoly7 = {
    Complex{1.0, 0.0},  Complex{-0.5, 0.0}, Complex{0.0, 0.25}, Complex{0.8, 0.0},
    Complex{-0.3, -0.4}, Complex{0.2, 0.0}, Complex{0.0, -0.1}, Complex{0.05, 0.0},
};

Complex poly7(Complex z) {
    Complex acc{};
    for (auto it = kPoly7.rbegin(); it != kPoly7.rend(); ++it) acc = acc * z + *it;
    return acc;
}

// Dense sampling followed by golden-section refinement around the best sample.
double sampled_sup(const CircleFunction& f) {
    constexpr int samples = 1 << 14;
    double best = 0.0;
    double best_theta = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double theta = kTwoPi * i / samples;
        const double v = std::abs(f(unit(theta)));
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = best_theta - kTwoPi / samples;
    double b = best_theta + kTwoPi / samples;
    for (int iter = 0; iter < 80; ++iter) {
        const double c = b - gr * (b - a);
        const double d = a + gr * (b - a);
        if (std::abs(f(unit(c))) > std::abs(f(unit(d)))) {
            b = d;
        } else {
            a = c;
        }
    }
    return std::max(best, std::abs(f(unit(0.5 * (a + b)))));
}

std::vector<CatalogFunction> build() {
    std::vector<CatalogFunction> out;
    out.push_back({"conj", [](Complex z) { return 1.0 / z; }, false, 1.0});
    out.push_back({"absim", [](Complex z) { return Complex{std::abs(z.imag()), 0.0}; }, false, 1.0});
    out.push_back({"dist1", [](Complex z) { return Complex{std::abs(z - 1.0), 0.0}; }, false, 2.0});
    out.push_back({"exp", [](Complex z) { return std::exp(z); }, true, std::exp(1.0)});
    out.push_back({"geom", [](Complex z) { return 1.0 / (2.0 - z); }, true, 1.0});
    out.push_back({"poly7", poly7, true, sampled_sup(poly7)});
    return out;
}

}  // namespace

std::span<const CatalogFunction> function_catalog() {
    static const std::vector<CatalogFunction> catalog = build();
    return catalog;
}

const CatalogFunction& catalog_function(std::string_view id) {
    for (const auto& entry : function_catalog()) {
        if (entry.id == id) return entry;
    }
    throw std::invalid_argument("unknown function id '" + std::string(id) +
                                "' (expected conj, absim, dist1, exp, geom or poly7)");
}

std::span<const Complex> poly7_coefficients() { return kPoly7; }

}  // namespace opuc
