#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "opuc/measure.hpp"

namespace opuc {

/// One numerical identity, summarised by its worst residual over the run.
struct InvariantCheck {
    enum class Bound { at_most, greater_than };

    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    Bound bound = Bound::at_most;

    [[nodiscard]] bool passed() const {
        return bound == Bound::at_most ? value <= threshold : value > threshold;
    }
};

struct VerifyReport {
    std::string measure;
    int n_max = 0;
    std::uint64_t seed = 0;
    std::vector<int> degrees;
    std::vector<InvariantCheck> checks;

    [[nodiscard]] bool all_passed() const;
    /// Throws std::out_of_range for unknown names.
    [[nodiscard]] const InvariantCheck& check(std::string_view name) const;
};

/// Run every basis, node and interpolation identity for n in {1, 2, 4, ..., n_max} with
/// seeded random w, evaluation points and polynomials. n_max in [1, 64]. The reproducing
/// property is integrated for n <= 8 and partition of unity is checked for n <= 32.
/// Propagates DegenerateMeasure and NodeFindingFailure.
[[nodiscard]] VerifyReport run_verify(const Measure& m, int n_max, std::uint64_t seed);

/// Fixed-width residual table, one line per check.
[[nodiscard]] std::string to_table(const VerifyReport& report);

}  // namespace opuc
