#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opuc/circle.hpp"

namespace opuc {

inline constexpr const char* kVersion = "0.1.0";

/// Exact CSV header of a convergence report.
inline constexpr const char* kCsvHeader = "n,p,interp_error,quad_error,measure,f,w_strategy,seed";

/// How w_n is chosen for each degree n.
///   fixed:<theta>   w_n = e^{i theta}
///   rotate:<step>   w_n = e^{i n step}
///   pseudorandom    w_n uniform on the circle, drawn from (seed, n)
struct WStrategy {
    enum class Kind { fixed, rotate, pseudorandom };

    Kind kind = Kind::fixed;
    double angle = 0.0;

    [[nodiscard]] Complex point(int n, std::optional<std::uint64_t> seed) const;
    [[nodiscard]] std::string render() const;
    /// Throws ParseError.
    [[nodiscard]] static WStrategy parse(std::string_view text);

    bool operator==(const WStrategy&) const = default;
};

enum class OutputFormat { csv, json };

struct ExperimentConfig {
    std::string measure = "lebesgue";
    std::string function = "exp";
    WStrategy w_strategy;
    std::optional<std::uint64_t> seed;
    std::vector<int> degrees;
    std::vector<double> exponents{2.0};
    OutputFormat format = OutputFormat::csv;
    /// Points per density piece for error norms; 0 means error_resolution(n).
    int resolution = 0;

    /// Throws std::invalid_argument: degrees strictly increasing and nonnegative, every
    /// p in (0, 2], seed present for the pseudorandom strategy, known function id,
    /// parseable measure.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Flat key=value lines, one per field, fixed order.
[[nodiscard]] std::string render_config(const ExperimentConfig& cfg);

/// Inverse of render_config. Blank lines and lines starting with '#' are ignored; unknown
/// keys and malformed values throw ParseError (position is the offset in text).
[[nodiscard]] ExperimentConfig parse_config(std::string_view text);

struct ConvergenceRow {
    int n = 0;
    double p = 0.0;
    double interp_error = 0.0;
    double quad_error = 0.0;
    double wall_time = 0.0;
    /// ||L_n f||_2 by the discrete Parseval identity
    double interpolant_norm = 0.0;
    /// sqrt(c_0) ||f||_inf
    double norm_bound = 0.0;
    Complex w;
    /// empty on success, otherwise the error that aborted this degree
    std::string failure;

    [[nodiscard]] bool ok() const { return failure.empty(); }
};

struct ConvergenceReport {
    ExperimentConfig config;
    std::string version = kVersion;
    /// integral f dmu by high-resolution direct quadrature
    Complex integral;
    std::vector<ConvergenceRow> rows;
};

/// Build basis, nodes and interpolant for every degree and record one row per (n, p).
/// A failing degree is recorded with its error and the run continues.
[[nodiscard]] ConvergenceReport run_convergence(const ExperimentConfig& cfg);

/// CSV with kCsvHeader; deterministic for a fixed config (no timing column).
[[nodiscard]] std::string to_csv(const ConvergenceReport& report);

/// JSON document with config echo, version and rows; wall_time only if include_timing.
[[nodiscard]] std::string to_json(const ConvergenceReport& report, bool include_timing);

}  // namespace opuc
