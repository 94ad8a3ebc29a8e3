#include "opuc/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "format.hpp"
#include "opuc/basis.hpp"
#include "opuc/catalog.hpp"
#include "opuc/errors.hpp"
#include "opuc/lagrange.hpp"
#include "opuc/measure_spec.hpp"
#include "opuc/paraorth.hpp"

namespace opuc {

namespace {

constexpr int kReferenceResolution = 1 << 16;

double parse_double(std::string_view text, std::size_t offset) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ParseError("expected a decimal number, got '" + std::string(text) + "'", offset);
    }
    return value;
}

template <class Int>
Int parse_integer(std::string_view text, std::size_t offset) {
    Int value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("expected an integer, got '" + std::string(text) + "'", offset);
    }
    return value;
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view text, std::size_t offset, Parse parse) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::size_t stop = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(parse(text.substr(start, stop - start), offset + start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string number_or_nan(double x) { return std::isnan(x) ? "nan" : detail::shortest(x); }

const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

}  // namespace

Complex WStrategy::point(int n, std::optional<std::uint64_t> seed) const {
    switch (kind) {
        case Kind::fixed: return unit(angle);
        case Kind::rotate: return unit(wrap_angle(n * angle));
        case Kind::pseudorandom: {
            if (!seed) throw std::invalid_argument("pseudorandom w-strategy needs a seed");
            std::mt19937_64 gen(*seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(n));
            const double u = static_cast<double>(gen() >> 11) * 0x1p-53;
            return unit(kTwoPi * u);
        }
    }
    return {1.0, 0.0};
}

std::string WStrategy::render() const {
    switch (kind) {
        case Kind::fixed: return "fixed:" + detail::shortest(angle);
        case Kind::rotate: return "rotate:" + detail::shortest(angle);
        case Kind::pseudorandom: return "pseudorandom";
    }
    return {};
}

WStrategy WStrategy::parse(std::string_view text) {
    if (text == "pseudorandom") return {Kind::pseudorandom, 0.0};
    if (text.starts_with("fixed:")) return {Kind::fixed, parse_double(text.substr(6), 6)};
    if (text.starts_with("rotate:")) return {Kind::rotate, parse_double(text.substr(7), 7)};
    throw ParseError("w-strategy must be fixed:<theta>, rotate:<step> or pseudorandom", 0);
}

void ExperimentConfig::validate() const {
    (void)parse_measure_spec(measure);
    (void)catalog_function(function);
    if (degrees.empty()) throw std::invalid_argument("degree list is empty");
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 0 || degrees[i] + 1 > kMaxDegree) {
            throw std::invalid_argument("degree " + std::to_string(degrees[i]) + " outside 0.." +
                                        std::to_string(kMaxDegree - 1));
        }
        if (i > 0 && degrees[i] <= degrees[i - 1]) {
            throw std::invalid_argument("degree list must be strictly increasing");
        }
    }
    if (exponents.empty()) throw std::invalid_argument("exponent list is empty");
    for (const double p : exponents) {
        if (!(p > 0.0 && p <= 2.0)) {
            throw std::invalid_argument("exponent " + detail::shortest(p) + " outside (0, 2]");
        }
    }
    if (w_strategy.kind == WStrategy::Kind::pseudorandom && !seed) {
        throw std::invalid_argument("pseudorandom w-strategy needs a seed");
    }
    if (resolution != 0 && resolution < 16) throw std::invalid_argument("resolution must be 0 or >= 16");
}

std::string render_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "measure=" << cfg.measure << '\n';
    out << "function=" << cfg.function << '\n';
    out << "w_strategy=" << cfg.w_strategy.render() << '\n';
    if (cfg.seed) out << "seed=" << *cfg.seed << '\n';
    out << "degrees=";
    for (std::size_t i = 0; i < cfg.degrees.size(); ++i) out << (i ? "," : "") << cfg.degrees[i];
    out << "\np=";
    for (std::size_t i = 0; i < cfg.exponents.size(); ++i) {
        out << (i ? "," : "") << detail::shortest(cfg.exponents[i]);
    }
    out << "\nformat=" << to_string(cfg.format) << '\n';
    out << "resolution=" << cfg.resolution << '\n';
    return out.str();
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::size_t line_start = 0;
    while (line_start < text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        const std::string_view line = trim(text.substr(line_start, line_end - line_start));
        const auto offset = static_cast<std::size_t>(line.data() - text.data());
        line_start = line_end + 1;
        if (line.empty() || line.front() == '#') continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key=value", offset);
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto value_at = static_cast<std::size_t>(value.data() - text.data());
        if (key == "measure") {
            cfg.measure = std::string(value);
        } else if (key == "function") {
            cfg.function = std::string(value);
        } else if (key == "w_strategy") {
            try {
                cfg.w_strategy = WStrategy::parse(value);
            } catch (const ParseError& e) {
                throw ParseError("bad w_strategy '" + std::string(value) + "'", value_at + e.position());
            }
        } else if (key == "seed") {
            cfg.seed = parse_integer<std::uint64_t>(value, value_at);
        } else if (key == "degrees") {
            cfg.degrees = parse_list<int>(value, value_at, parse_integer<int>);
        } else if (key == "p") {
            cfg.exponents = parse_list<double>(value, value_at, parse_double);
        } else if (key == "format") {
            if (value == "csv") {
                cfg.format = OutputFormat::csv;
            } else if (value == "json") {
                cfg.format = OutputFormat::json;
            } else {
                throw ParseError("format must be csv or json", value_at);
            }
        } else if (key == "resolution") {
            cfg.resolution = parse_integer<int>(value, value_at);
        } else {
            throw ParseError("unknown key '" + std::string(key) + "'", offset);
        }
    }
    return cfg;
}

ConvergenceReport run_convergence(const ExperimentConfig& cfg) {
    cfg.validate();
    const Measure m = parse_measure_spec(cfg.measure);
    const CatalogFunction& fn = catalog_function(cfg.function);
    const double c0 = moments(m, 0).at(0).real();

    ConvergenceReport report;
    report.config = cfg;
    report.integral = integrate(m, fn.f, kReferenceResolution);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const int n : cfg.degrees) {
        const auto start = std::chrono::steady_clock::now();
        const Complex w = cfg.w_strategy.point(n, cfg.seed);
        std::vector<ConvergenceRow> rows;
        try {
            const OpucBasis basis = verblunsky_from_measure(m, n + 1);
            const NodeSystem ns = find_nodes(basis, n, w);
            const Interpolant interpolant = interpolate(ns, basis, fn.f);
            const auto rule = quadrature_rule(m, cfg.resolution > 0 ? cfg.resolution : error_resolution(n));
            const double quad_error = std::abs(szego_quadrature(ns, fn.f) - report.integral);
            std::vector<double> residual(rule.size());
            for (std::size_t i = 0; i < rule.size(); ++i) {
                residual[i] = std::abs(fn.f(rule.points[i]) - interpolant(rule.points[i]));
            }
            for (const double p : cfg.exponents) {
                double total = 0.0;
                for (std::size_t i = 0; i < rule.size(); ++i) total += rule.weights[i] * std::pow(residual[i], p);
                ConvergenceRow row;
                row.n = n;
                row.p = p;
                row.w = w;
                row.interp_error = std::pow(total, 1.0 / p);
                row.quad_error = quad_error;
                row.interpolant_norm = interpolant.parseval_norm();
                row.norm_bound = std::sqrt(c0) * fn.sup_norm;
                rows.push_back(row);
            }
        } catch (const Error& e) {
            rows.clear();
            for (const double p : cfg.exponents) {
                ConvergenceRow row;
                row.n = n;
                row.p = p;
                row.w = w;
                row.interp_error = row.quad_error = row.interpolant_norm = row.norm_bound = nan;
                row.failure = e.what();
                rows.push_back(row);
            }
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (auto& row : rows) {
            row.wall_time = elapsed;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

std::string to_csv(const ConvergenceReport& report) {
    const auto& cfg = report.config;
    const std::string tail = "," + csv_field(cfg.measure) + "," + csv_field(cfg.function) + "," +
                             csv_field(cfg.w_strategy.render()) + "," +
                             (cfg.seed ? std::to_string(*cfg.seed) : std::string{});
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.n) + "," + detail::shortest(row.p) + "," +
               number_or_nan(row.interp_error) + "," + number_or_nan(row.quad_error) + tail + "\n";
    }
    return out;
}

std::string to_json(const ConvergenceReport& report, bool include_timing) {
    using nlohmann::ordered_json;
    const auto& cfg = report.config;
    ordered_json doc;
    doc["version"] = report.version;
    ordered_json config;
    config["measure"] = cfg.measure;
    config["function"] = cfg.function;
    config["w_strategy"] = cfg.w_strategy.render();
    config["seed"] = cfg.seed ? ordered_json(*cfg.seed) : ordered_json(nullptr);
    config["degrees"] = cfg.degrees;
    config["p"] = cfg.exponents;
    config["resolution"] = cfg.resolution;
    doc["config"] = config;
    doc["integral"] = {report.integral.real(), report.integral.imag()};
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) {
        ordered_json r;
        r["n"] = row.n;
        r["p"] = row.p;
        r["w_angle"] = angle_of(row.w);
        if (row.ok()) {
            r["interp_error"] = row.interp_error;
            r["quad_error"] = row.quad_error;
            r["interpolant_norm"] = row.interpolant_norm;
            r["norm_bound"] = row.norm_bound;
        } else {
            r["interp_error"] = nullptr;
            r["quad_error"] = nullptr;
            r["failure"] = row.failure;
        }
        if (include_timing) r["wall_time"] = row.wall_time;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

}  // namespace opuc
