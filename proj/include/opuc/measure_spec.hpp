#pragma once

#include <string_view>

#include "opuc/measure.hpp"

namespace opuc {

/// Parse the measure-spec grammar
///
///   spec  := base [ "+atoms:" atom { "," atom } ]
///   base  := "lebesgue" | "arc:" decimal          (0 < a <= pi)
///   atom  := decimal ":" decimal                  (angle in radians, mass > 0)
///
/// e.g. "arc:1.5707963+atoms:0:0.25". Syntax errors throw ParseError carrying the offending
/// character offset; semantic errors (a out of range, bad mass, duplicate angle) throw
/// ParseError as well, positioned at the offending number.
[[nodiscard]] Measure parse_measure_spec(std::string_view text);

}  // namespace opuc
