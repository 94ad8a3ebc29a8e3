#include "opuc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>

#include "opuc/basis.hpp"
#include "opuc/catalog.hpp"
#include "opuc/lagrange.hpp"
#include "opuc/paraorth.hpp"

namespace opuc {

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }
    double signed_unit() { return 2.0 * uniform() - 1.0; }
    Complex on_circle() { return unit(kTwoPi * uniform()); }
    std::size_t index(std::size_t count) { return static_cast<std::size_t>(uniform() * count) % count; }

    std::vector<Complex> polynomial(int degree) {
        std::vector<Complex> coeffs(static_cast<std::size_t>(degree) + 1);
        for (auto& c : coeffs) c = {signed_unit(), signed_unit()};
        return coeffs;
    }

private:
    std::mt19937_64 gen_;
};

Complex horner(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

WideComplex horner(const std::vector<Complex>& coeffs, const WideComplex& z) {
    WideComplex acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + WideComplex(*it);
    return acc;
}

// Largest degree at which the reproducing identity is integrated against the rule.
constexpr int kReproducingMaxDegree = 8;
// Beyond this degree sum_j l_j(z) off the support of a gapped measure cancels terms larger
// than the binary128 range of exact digits.
constexpr int kPartitionMaxDegree = 32;

// Worst residual per named identity.
class Tally {
public:
    void declare(const std::string& name, double threshold,
                 InvariantCheck::Bound bound = InvariantCheck::Bound::at_most) {
        const double start = bound == InvariantCheck::Bound::at_most ? 0.0 : HUGE_VAL;
        index_[name] = checks_.size();
        checks_.push_back({name, start, threshold, bound});
    }

    void record(const std::string& name, double value) {
        auto& c = checks_.at(index_.at(name));
        if (std::isnan(value)) {
            c.value = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        if (std::isnan(c.value)) return;
        c.value = c.bound == InvariantCheck::Bound::at_most ? std::max(c.value, value)
                                                            : std::min(c.value, value);
    }

    std::vector<InvariantCheck> take() { return std::move(checks_); }

private:
    std::map<std::string, std::size_t> index_;
    std::vector<InvariantCheck> checks_;
};

std::vector<int> verify_degrees(int n_max) {
    std::vector<int> out;
    for (int n = 1; n < n_max; n *= 2) out.push_back(n);
    out.push_back(n_max);
    return out;
}

}  // namespace

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

const InvariantCheck& VerifyReport::check(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no check named " + std::string(name));
}

VerifyReport run_verify(const Measure& m, int n_max, std::uint64_t seed) {
    if (n_max < 1 || n_max > 64) throw std::invalid_argument("n_max must lie in [1, 64]");
    using Bound = InvariantCheck::Bound;

    Tally tally;
    tally.declare("orthonormality", 1e-8);
    tally.declare("kappa_monotone", 0.0);
    tally.declare("modulus_symmetry", 1e-12);
    tally.declare("cd_consistency", 1e-10);
    tally.declare("reproducing_kernel", 1e-8);
    tally.declare("node_unit_modulus", 1e-12);
    tally.declare("w_is_node", 1e-10);
    tally.declare("para_zero_residual", 1e-9);
    tally.declare("min_weight", 0.0, Bound::greater_than);
    tally.declare("min_node_gap", 1e-10, Bound::greater_than);
    tally.declare("mass_identity", 1e-10);
    tally.declare("laurent_exactness", 1e-8);
    tally.declare("kernel_offdiagonal", 1e-8);
    tally.declare("node_set_symmetry", 1e-9);
    tally.declare("delta_property", 1e-9);
    tally.declare("partition_of_unity", 1e-9);
    tally.declare("parseval", 1e-8);
    tally.declare("fundamental_mass", 1e-8);
    tally.declare("boundedness", 1e-8);
    tally.declare("projection", 1e-8);
    tally.declare("polynomial_reproduction", 1e-8);
    tally.declare("kernel_form_agreement", 1e-8);

    Sampler rng(seed);
    const int top = n_max + 1;
    const OpucBasis basis = verblunsky_from_measure(m, top);
    const MomentTable c = moments(m, n_max);
    const double c0 = c.at(0).real();
    const QuadratureRule rule = quadrature_rule(m, std::max(kDefaultResolution, 64 * (top + 1)));

    // phi_k at every rule point, k <= top
    std::vector<std::vector<Complex>> phi_at(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) phi_at[i] = eval_phi_all(basis, top, rule.points[i]);

    for (int j = 0; j <= top; ++j) {
        for (int k = j; k <= top; ++k) {
            Complex g{};
            for (std::size_t i = 0; i < rule.size(); ++i) {
                g += rule.weights[i] * phi_at[i][static_cast<std::size_t>(j)] *
                     std::conj(phi_at[i][static_cast<std::size_t>(k)]);
            }
            tally.record("orthonormality", std::abs(g - (j == k ? 1.0 : 0.0)));
        }
    }
    const auto kappas = basis.kappas();
    for (std::size_t k = 0; k + 1 < kappas.size(); ++k) {
        tally.record("kappa_monotone", std::max(0.0, (kappas[k] - kappas[k + 1]) / kappas[k]));
    }
    for (int trial = 0; trial < 50; ++trial) {
        const Complex z = rng.on_circle();
        for (int n = 0; n <= top; ++n) {
            const PhiPair v = eval_phi(basis, n, z);
            tally.record("modulus_symmetry",
                         std::abs(std::abs(v.phi) - std::abs(v.phi_star)) / (1.0 + std::abs(v.phi)));
        }
    }

    const auto catalog = function_catalog();
    VerifyReport report;
    report.measure = m.description();
    report.n_max = n_max;
    report.seed = seed;
    report.degrees = verify_degrees(n_max);

    for (const int n : report.degrees) {
        // Christoffel-Darboux quotient against the direct sum, including close pairs.
        for (int trial = 0; trial < 24; ++trial) {
            const Complex w = rng.on_circle();
            Complex z = rng.on_circle();
            if (trial % 4 == 3) z = w * unit(std::pow(10.0, -1.0 - 4.0 * rng.uniform()));
            if (std::abs(1.0 - std::conj(w) * z) <= 1e-6) continue;
            const Complex quotient = cd_kernel(basis, n, w, z);
            const Complex direct = kernel_direct(basis, n, w, z);
            const double scale = std::sqrt(kernel_diag(basis, n, w) * kernel_diag(basis, n, z));
            tally.record("cd_consistency", std::abs(quotient - direct) / scale);
        }

        for (int trial = 0; n <= kReproducingMaxDegree && trial < 3; ++trial) {
            const Complex w = rng.on_circle();
            const auto p = rng.polynomial(n);
            Complex integral{};
            for (std::size_t i = 0; i < rule.size(); ++i) {
                integral += rule.weights[i] * horner(p, rule.points[i]) *
                            std::conj(cd_kernel(basis, n, w, rule.points[i]));
            }
            const Complex pw = horner(p, w);
            tally.record("reproducing_kernel", std::abs(integral - pw) / (1.0 + std::abs(pw)));
        }

        const Complex w = rng.on_circle();
        const NodeSystem ns = find_nodes(basis, n, w);
        const std::size_t count = ns.size();

        double nearest_w = HUGE_VAL;
        double weight_sum = 0.0;
        const PhiPair at_w = eval_phi(basis, n + 1, w);
        for (std::size_t j = 0; j < count; ++j) {
            tally.record("node_unit_modulus", std::abs(std::abs(ns.nodes[j]) - 1.0));
            nearest_w = std::min(nearest_w, std::abs(ns.nodes[j] - w));
            tally.record("min_weight", ns.weights[j]);
            weight_sum += ns.weights[j];
            const PhiPair at_node = eval_phi(basis, n + 1, ns.nodes[j]);
            const double scale = std::abs(at_w.phi) * std::abs(at_node.phi) +
                                 std::abs(at_w.phi_star) * std::abs(at_node.phi_star);
            tally.record("para_zero_residual", std::abs(para_eval(basis, n, w, ns.nodes[j])) / scale);
            const double next = j + 1 < count ? ns.angles[j + 1] : ns.angles[0] + kTwoPi;
            if (count > 1) tally.record("min_node_gap", next - ns.angles[j]);
        }
        tally.record("w_is_node", nearest_w);
        tally.record("mass_identity", std::abs(weight_sum - c0) / c0);

        for (int k = -n; k <= n; ++k) {
            Complex sum{};
            for (std::size_t j = 0; j < count; ++j) sum += ns.weights[j] * std::pow(ns.nodes[j], k);
            tally.record("laurent_exactness", std::abs(sum - c.at(-k)) / c0);
        }

        for (std::size_t j = 0; j < count; ++j) {
            for (std::size_t k = 0; k < count; ++k) {
                const Complex l =
                    fundamental_eval_wide(ns, basis, static_cast<int>(j), ns.wide_node(k)).to_complex();
                tally.record("delta_property", std::abs(l - (j == k ? 1.0 : 0.0)));
                if (j == k) continue;
                const Complex kjm = cd_kernel(basis, n, ns.nodes[j], ns.nodes[k]);
                tally.record("kernel_offdiagonal",
                             std::abs(kjm) / std::sqrt(ns.kernel_diags[j] * ns.kernel_diags[k]));
            }
        }

        const std::size_t rebuilds = std::min<std::size_t>(count, 4);
        for (std::size_t r = 0; r < rebuilds; ++r) {
            const std::size_t j = rng.index(count);
            const NodeSystem again = find_nodes(basis, n, ns.nodes[j]);
            if (again.size() != count) {
                tally.record("node_set_symmetry", HUGE_VAL);
                continue;
            }
            for (std::size_t k = 0; k < count; ++k) {
                tally.record("node_set_symmetry", angular_distance(again.angles[k], ns.angles[k]));
            }
        }

        for (int trial = 0; n <= kPartitionMaxDegree && trial < 50; ++trial) {
            const WideComplex z(rng.on_circle());
            WideComplex sum{};
            for (std::size_t j = 0; j < count; ++j) sum += fundamental_eval_wide(ns, basis, static_cast<int>(j), z);
            tally.record("partition_of_unity", std::abs(sum.to_complex() - 1.0));
        }

        // Norms against the rule only touch the support, where double evaluation through the
        // phi table is accurate.
        const auto rule_norm_sq = [&](const std::vector<Complex>& coeffs) {
            double total = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i) {
                Complex v{};
                for (std::size_t k = 0; k < coeffs.size(); ++k) v += coeffs[k] * phi_at[i][k];
                total += rule.weights[i] * std::norm(v);
            }
            return total;
        };

        double mass_of_fundamentals = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            std::vector<Complex> indicator(count, Complex{});
            indicator[j] = 1.0;
            const double norm_sq = rule_norm_sq(Interpolant(ns, basis, indicator).coefficients());
            tally.record("fundamental_mass", std::abs(norm_sq - ns.weights[j]) / c0);
            mass_of_fundamentals += norm_sq;
        }
        tally.record("fundamental_mass", std::abs(mass_of_fundamentals - c0) / c0);

        for (const auto& entry : catalog) {
            const Interpolant lf = interpolate(ns, basis, entry.f);
            const double norm_sq = rule_norm_sq(lf.coefficients());
            const double discrete = lf.parseval_norm() * lf.parseval_norm();
            tally.record("parseval", std::abs(norm_sq - discrete) / discrete);
            tally.record("boundedness", lf.parseval_norm() / (std::sqrt(c0) * entry.sup_norm) - 1.0);

            std::vector<WideComplex> resampled;
            for (std::size_t j = 0; j < count; ++j) resampled.push_back(lf.eval(ns.wide_node(j)));
            const Interpolant twice(ns, basis, std::move(resampled));
            for (int trial = 0; trial < 20; ++trial) {
                const Complex z = rng.on_circle();
                const Complex once = lf(z);
                tally.record("projection", std::abs(twice(z) - once) / (1.0 + std::abs(once)));
                tally.record("kernel_form_agreement",
                             std::abs(lf.eval_kernel_form(z) - once) / (1.0 + std::abs(once)));
            }
        }

        const auto p = rng.polynomial(n);
        std::vector<WideComplex> exact_samples;
        for (std::size_t j = 0; j < count; ++j) exact_samples.push_back(horner(p, ns.wide_node(j)));
        const Interpolant lp(ns, basis, std::move(exact_samples));
        for (int trial = 0; trial < 20; ++trial) {
            const Complex z = rng.on_circle();
            const Complex exact = horner(p, WideComplex(z)).to_complex();
            tally.record("polynomial_reproduction", std::abs(lp(z) - exact) / (1.0 + std::abs(exact)));
        }
    }

    report.checks = tally.take();
    return report;
}

std::string to_table(const VerifyReport& report) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "measure=%s n_max=%d seed=%llu\n", report.measure.c_str(),
                  report.n_max, static_cast<unsigned long long>(report.seed));
    out += line;
    std::snprintf(line, sizeof line, "%-26s %14s %4s %10s  %s\n", "check", "value", "", "threshold", "status");
    out += line;
    for (const auto& c : report.checks) {
        std::snprintf(line, sizeof line, "%-26s %14.6e %4s %10.1e  %s\n", c.name.c_str(), c.value,
                      c.bound == InvariantCheck::Bound::at_most ? "<=" : ">", c.threshold,
                      c.passed() ? "pass" : "FAIL");
        out += line;
    }
    return out;
}

}  // namespace opuc
