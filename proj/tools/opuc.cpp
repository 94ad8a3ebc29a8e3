#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "opuc/basis.hpp"
#include "opuc/catalog.hpp"
#include "opuc/errors.hpp"
#include "opuc/experiment.hpp"
#include "opuc/lagrange.hpp"
#include "opuc/measure_spec.hpp"
#include "opuc/paraorth.hpp"
#include "opuc/verify.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct Options {
    std::string measure = "lebesgue";
    int n = 8;
    std::string w = "auto";
    bool json = false;
    std::string function = "exp";
    std::vector<double> exponents{2.0};
    int n_max = 16;
    std::uint64_t seed = 42;

    std::string config_path;
    std::string strategy = "fixed:0";
    std::optional<std::uint64_t> converge_seed;
    std::vector<int> degrees;
    std::string format = "csv";
    int resolution = 0;
    bool no_timing = false;
};

opuc::Complex parse_w(const std::string& text) {
    if (text == "auto") return 1.0;
    std::size_t used = 0;
    double theta = 0.0;
    try {
        theta = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(theta)) {
        throw opuc::ParseError("--w expects an angle in radians or \"auto\"", 0);
    }
    return opuc::unit(theta);
}

struct Setup {
    opuc::Measure measure;
    opuc::OpucBasis basis;
    opuc::NodeSystem nodes;
};

Setup build(const Options& o, opuc::Complex w) {
    if (o.n < 0 || o.n >= opuc::kMaxDegree) throw std::invalid_argument("--n must lie in [0, 255]");
    auto m = opuc::parse_measure_spec(o.measure);
    auto b = opuc::verblunsky_from_measure(m, o.n + 1);
    auto ns = opuc::find_nodes(b, o.n, w);
    return {std::move(m), std::move(b), std::move(ns)};
}

int cmd_nodes(const Options& o) {
    const Setup s = build(o, parse_w(o.w));
    const auto& ns = s.nodes;
    if (o.json) {
        nlohmann::ordered_json doc;
        doc["measure"] = o.measure;
        doc["n"] = o.n;
        doc["w"] = opuc::angle_of(ns.w);
        doc["angles"] = ns.angles;
        doc["weights"] = ns.weights;
        std::cout << doc.dump(2) << '\n';
        return 0;
    }
    std::printf("%4s %22s %22s\n", "j", "angle", "weight");
    for (std::size_t j = 0; j < ns.size(); ++j) {
        std::printf("%4zu %22.16f %22.16e\n", j, ns.angles[j], ns.weights[j]);
    }
    return 0;
}

int cmd_quadrature(const Options& o) {
    const auto& entry = opuc::catalog_function(o.function);
    const Setup s = build(o, parse_w(o.w));
    const opuc::Complex q = opuc::szego_quadrature(s.nodes, entry.f);
    const opuc::Complex exact = opuc::integrate(s.measure, entry.f, 1 << 16);
    std::printf("Q_n(f)     = %.16e %+.16ei\n", q.real(), q.imag());
    std::printf("integral   = %.16e %+.16ei\n", exact.real(), exact.imag());
    std::printf("abs_error  = %.6e\n", std::abs(q - exact));
    return 0;
}

int cmd_interpolate(const Options& o) {
    const auto& entry = opuc::catalog_function(o.function);
    for (const double p : o.exponents) {
        if (!(p > 0.0)) throw std::invalid_argument("every p must be positive");
        if (p > 2.0) std::cerr << "warning: p = " << p << " exceeds 2; mean convergence is not guaranteed\n";
    }
    const Setup s = build(o, parse_w(o.w));
    const auto interpolant = opuc::interpolate(s.nodes, s.basis, entry.f);
    std::printf("%8s %22s\n", "p", "error");
    for (const double p : o.exponents) {
        std::printf("%8g %22.6e\n", p, opuc::interp_error(interpolant, s.measure, entry.f, p));
    }
    std::printf("norm       = %.16e\nbound      = %.16e\n", interpolant.parseval_norm(),
                std::sqrt(opuc::moments(s.measure, 0).at(0).real()) * entry.sup_norm);
    return 0;
}

int cmd_verify(const Options& o) {
    const auto m = opuc::parse_measure_spec(o.measure);
    const auto report = opuc::run_verify(m, o.n_max, o.seed);
    std::cout << opuc::to_table(report);
    return report.all_passed() ? 0 : kExitNumerical;
}

int cmd_converge(const Options& o) {
    opuc::ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw std::invalid_argument("cannot read " + o.config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = opuc::parse_config(buf.str());
    } else {
        cfg.measure = o.measure;
        cfg.function = o.function;
        cfg.w_strategy = opuc::WStrategy::parse(o.strategy);
        cfg.seed = o.converge_seed;
        cfg.degrees = o.degrees;
        cfg.exponents = o.exponents;
        if (o.format == "json") {
            cfg.format = opuc::OutputFormat::json;
        } else if (o.format != "csv") {
            throw std::invalid_argument("--format must be csv or json");
        }
        cfg.resolution = o.resolution;
    }
    const auto report = opuc::run_convergence(cfg);
    std::cout << (cfg.format == opuc::OutputFormat::csv ? opuc::to_csv(report)
                                                         : opuc::to_json(report, !o.no_timing));
    for (const auto& row : report.rows) {
        if (!row.ok()) return kExitNumerical;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthogonal polynomials on the unit circle: nodes, quadrature, interpolation"};
    app.set_version_flag("--version", opuc::kVersion);
    app.require_subcommand(1);
    Options o;

    auto* nodes = app.add_subcommand("nodes", "Para-orthogonal nodes and quadrature weights");
    auto* quad = app.add_subcommand("quadrature", "Szego quadrature of a catalog function");
    auto* interp = app.add_subcommand("interpolate", "Lp errors of the Lagrange interpolant");
    for (auto* sub : {nodes, quad, interp}) {
        sub->add_option("--measure", o.measure, "lebesgue | arc:<a> [+atoms:<theta>:<mass>,...]")
            ->capture_default_str();
        sub->add_option("--n", o.n, "degree n; the rule has n+1 nodes")->required();
        sub->add_option("--w", o.w, "prescribed node angle in radians, or auto (w = 1)")->capture_default_str();
    }
    nodes->add_flag("--json", o.json, "emit JSON");
    for (auto* sub : {quad, interp}) {
        sub->add_option("--f", o.function, "catalog id: conj absim dist1 exp geom poly7")->required();
    }
    interp->add_option("--p", o.exponents, "exponents, comma separated")->delimiter(',')->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Residual table of the basis, node and interpolation identities");
    verify->add_option("--measure", o.measure)->capture_default_str();
    verify->add_option("--nmax", o.n_max)->check(CLI::Range(1, 64))->capture_default_str();
    verify->add_option("--seed", o.seed)->capture_default_str();

    auto* converge = app.add_subcommand("converge", "Convergence experiment report");
    auto* config = converge->add_option("--config", o.config_path, "key=value config file")
                       ->check(CLI::ExistingFile);
    std::vector<CLI::Option*> inline_opts{
        converge->add_option("--measure", o.measure)->capture_default_str(),
        converge->add_option("--f", o.function)->capture_default_str(),
        converge->add_option("--w", o.strategy, "fixed:<theta> | rotate:<step> | pseudorandom")
            ->capture_default_str(),
        converge->add_option("--seed", o.converge_seed),
        converge->add_option("--n", o.degrees, "degrees, comma separated")->delimiter(','),
        converge->add_option("--p", o.exponents)->delimiter(',')->capture_default_str(),
        converge->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str(),
        converge->add_option("--resolution", o.resolution)};
    for (auto* opt : inline_opts) opt->excludes(config);
    converge->add_flag("--no-timing", o.no_timing, "omit wall_time from JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*nodes) return cmd_nodes(o);
        if (*quad) return cmd_quadrature(o);
        if (*interp) return cmd_interpolate(o);
        if (*verify) return cmd_verify(o);
        return cmd_converge(o);
    } catch (const opuc::DegenerateMeasure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const opuc::NodeFindingFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const opuc::QuadratureNonConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
