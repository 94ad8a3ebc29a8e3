// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "opuc/basis.hpp"
#include "opuc/catalog.hpp"
#include "opuc/experiment.hpp"
#include "opuc/measure_spec.hpp"
#include "opuc/paraorth.hpp"
#include "opuc/verify.hpp"
#include "support.hpp"

using opuc::Complex;
using opuc::ConvergenceReport;
using opuc::ExperimentConfig;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

std::vector<double> errors(const ConvergenceReport& r, double p) {
    std::vector<double> out;
    for (const auto& row : r.rows) {
        if (row.p == p) out.push_back(row.interp_error);
    }
    return out;
}

ConvergenceReport converge(const std::string& measure, const std::string& f, std::vector<int> degrees,
                           std::vector<double> exponents) {
    ExperimentConfig cfg;
    cfg.measure = measure;
    cfg.function = f;
    cfg.degrees = std::move(degrees);
    cfg.exponents = std::move(exponents);
    return opuc::run_convergence(cfg);
}

// Reports kept for the boundedness witness.
std::vector<ConvergenceReport> g_runs;

Outcome lebesgue_closed_forms() {
    const auto start = std::chrono::steady_clock::now();
    const auto m = opuc::Measure::lebesgue();
    const auto b = opuc::verblunsky_from_measure(m, 33);
    double node_err = 0.0;
    double weight_err = 0.0;
    double alpha_err = 0.0;
    for (const Complex a : b.alphas()) alpha_err = std::max(alpha_err, std::abs(a));
    for (int n = 1; n <= 32; ++n) {
        const auto ns = opuc::find_nodes(b, n, Complex(1.0, 0.0));
        if (ns.size() != static_cast<std::size_t>(n + 1)) return {false, "wrong node count at n=" + std::to_string(n)};
        for (std::size_t j = 0; j < ns.size(); ++j) {
            const double expected = opuc::kTwoPi * static_cast<double>(j) / (n + 1);
            const double d = std::remainder(ns.angles[j] - expected, opuc::kTwoPi);
            node_err = std::max(node_err, std::abs(d));
            weight_err = std::max(weight_err, std::abs(ns.weights[j] - 1.0 / (n + 1)));
        }
    }
    const double t = seconds_since(start);
    return {node_err <= 1e-10 && weight_err <= 1e-12 && alpha_err <= 1e-14 && t < 5.0,
            "nodes " + fmt(node_err) + ", weights " + fmt(weight_err) + ", alpha " + fmt(alpha_err) + ", " +
                fmt(t) + " s"};
}

Outcome verify_suite() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    for (const char* spec : {"lebesgue", "arc:1.5707963", "lebesgue+atoms:0:1.0"}) {
        const auto report = opuc::run_verify(opuc::parse_measure_spec(spec), 32, 42);
        if (!report.all_passed()) {
            out.passed = false;
            for (const auto& c : report.checks) {
                if (!c.passed()) out.detail += std::string(spec) + ": " + c.name + "=" + fmt(c.value) + "; ";
            }
        }
    }
    const double t = seconds_since(start);
    if (t >= 60.0) out.passed = false;
    out.detail += fmt(t) + " s";
    return out;
}

Outcome oracle_equivalence() {
    double alpha_levinson = 0.0;
    double alpha_measure = 0.0;
    double node_err = 0.0;
    for (const auto& m : testing::reference_measures()) {
        const auto wide = opuc::wide_moments(m, 24);
        const auto reference = testing::gram_schmidt_alphas(wide, 24);
        const auto levinson = opuc::verblunsky_from_moments(wide, 24);
        const auto production = opuc::verblunsky_from_measure(m, 24);
        for (std::size_t k = 0; k < reference.size(); ++k) {
            alpha_levinson = std::max(alpha_levinson, std::abs(levinson.alphas()[k] - reference[k]));
            alpha_measure = std::max(alpha_measure, std::abs(production.alphas()[k] - reference[k]));
        }
        for (int n = 1; n <= 16; ++n) {
            for (const Complex w : {Complex(1.0, 0.0), opuc::unit(2.0)}) {
                const auto ns = opuc::find_nodes(production, n, w);
                const auto oracle = testing::companion_node_angles(production, n, w);
                node_err = std::max(node_err, testing::angle_set_distance(ns.angles, oracle));
            }
        }
    }
    return {alpha_levinson <= 1e-8 && alpha_measure <= 1e-8 && node_err <= 1e-8,
            "levinson " + fmt(alpha_levinson) + ", measure route " + fmt(alpha_measure) + ", nodes " + fmt(node_err)};
}

Outcome lebesgue_exp() {
    const auto start = std::chrono::steady_clock::now();
    g_runs.push_back(converge("lebesgue", "exp", {4, 8, 12, 16}, {2.0}));
    const auto e = errors(g_runs.back(), 2.0);
    bool ok = e.size() == 4 && e.back() < 1e-10;
    std::string detail;
    for (std::size_t i = 0; i < e.size(); ++i) {
        detail += fmt(e[i]) + " ";
        if (i > 0 && e[i - 1] >= 1e-12 && !(e[i] <= 0.1 * e[i - 1])) ok = false;
    }
    const double t = seconds_since(start);
    return {ok && t < 5.0, detail + "(" + fmt(t) + " s)"};
}

Outcome arc_mean_convergence() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    for (const char* f : {"conj", "dist1"}) {
        g_runs.push_back(converge("arc:1.5707963", f, {4, 8, 16, 32, 64, 96}, {1.0, 2.0}));
        for (const double p : {1.0, 2.0}) {
            const auto e = errors(g_runs.back(), p);
            if (e.size() != 6) return {false, "missing rows"};
            const double early = 0.5 * (e[0] + e[1]);
            const double late = 0.5 * (e[4] + e[5]);
            double worst_rise = 0.0;
            for (std::size_t i = 1; i < e.size(); ++i) worst_rise = std::max(worst_rise, e[i] / e[i - 1] - 1.0);
            const bool ok = late < 0.5 * early && worst_rise <= 0.1;
            out.passed = out.passed && ok;
            out.detail += std::string(f) + " p=" + fmt(p) + ": " + fmt(early) + " -> " + fmt(late) + ", max rise " +
                          fmt(worst_rise) + "; ";
        }
    }
    const double t = seconds_since(start);
    out.passed = out.passed && t < 120.0;
    out.detail += fmt(t) + " s";
    return out;
}

Outcome arc_quadrature() {
    const auto report = converge("arc:1.5707963", "dist1", {4, 96}, {2.0});
    const double first = report.rows.front().quad_error;
    const double last = report.rows.back().quad_error;
    return {report.rows.size() == 2 && last < 0.25 * first, fmt(first) + " -> " + fmt(last)};
}

Outcome boundedness() {
    for (const auto& f : opuc::function_catalog()) {
        if (f.id == "exp") continue;
        g_runs.push_back(converge("lebesgue", f.id, {4, 8, 12, 16}, {2.0}));
    }
    for (const auto& f : opuc::function_catalog()) {
        if (f.id == "conj" || f.id == "dist1") continue;
        g_runs.push_back(converge("arc:1.5707963", f.id, {4, 8, 16, 32, 64, 96}, {2.0}));
    }
    double worst = 0.0;
    std::size_t rows = 0;
    for (const auto& run : g_runs) {
        for (const auto& row : run.rows) {
            if (!row.ok()) return {false, run.config.function + " failed at n=" + std::to_string(row.n)};
            worst = std::max(worst, row.interpolant_norm / row.norm_bound);
            ++rows;
        }
    }
    return {worst <= 1.0 + 1e-8, std::to_string(rows) + " rows, max ||L f|| / bound = " + fmt(worst)};
}

std::pair<int, std::string> run_cli(const std::string& args) {
    const std::string cmd = std::string(OPUC_CLI) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
    const std::string args =
        "converge --measure arc:1.5707963+atoms:0:0.25 --f dist1 --w pseudorandom --seed 1234 --n 4,8,16,32 --p 1,2";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    const bool ok = a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second;
    return {ok, std::to_string(a.second.size()) + " bytes, exit " + std::to_string(a.first) + "/" +
                    std::to_string(b.first)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"1 lebesgue closed forms", lebesgue_closed_forms},
        {"2 invariant suite", verify_suite},
        {"3 oracle equivalence", oracle_equivalence},
        {"4 lebesgue exp convergence", lebesgue_exp},
        {"5 arc mean convergence", arc_mean_convergence},
        {"6 arc quadrature convergence", arc_quadrature},
        {"7 boundedness witness", boundedness},
        {"8 converge determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
        if (!o.passed) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
