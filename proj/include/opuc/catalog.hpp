#pragma once

#include <span>
#include <string>
#include <string_view>

#include "opuc/circle.hpp"

namespace opuc {

/// Test functions for the convergence experiments.
///   continuous on the circle: conj (1/z), absim (|Im z|), dist1 (|z - 1|)
///   disk algebra:             exp (e^z), geom (1/(2 - z)), poly7 (fixed degree-7 polynomial)
struct CatalogFunction {
    std::string id;
    CircleFunction f;
    bool disk_algebra = false;
    /// max |f| over the circle
    double sup_norm = 0.0;
};

[[nodiscard]] std::span<const CatalogFunction> function_catalog();

/// Throws std::invalid_argument for unknown ids.
[[nodiscard]] const CatalogFunction& catalog_function(std::string_view id);

/// Coefficients of poly7, constant term first.
[[nodiscard]] std::span<const Complex> poly7_coefficients();

}  // namespace opuc
