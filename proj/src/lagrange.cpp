#include "opuc/lagrange.hpp"

#include <cmath>
#include <stdexcept>

namespace opuc {

namespace {

std::size_t node_index(const NodeSystem& ns, int j) {
    if (j < 0 || static_cast<std::size_t>(j) >= ns.size()) {
        throw std::out_of_range("node index out of range");
    }
    return static_cast<std::size_t>(j);
}

}  // namespace

WideComplex fundamental_eval_wide(const NodeSystem& ns, const OpucBasis& b, int j, const WideComplex& z) {
    const std::size_t idx = node_index(ns, j);
    const auto at_node = eval_phi_all_wide(b, ns.n, ns.wide_node(idx));
    const auto at_z = eval_phi_all_wide(b, ns.n, z);
    WideComplex sum{};
    for (std::size_t k = 0; k < at_z.size(); ++k) sum += conj(at_node[k]) * at_z[k];
    return sum / ns.wide_kernel_diags[idx];
}

Complex fundamental_eval(const NodeSystem& ns, const OpucBasis& b, int j, Complex z) {
    return fundamental_eval_wide(ns, b, j, WideComplex(z)).to_complex();
}

Interpolant::Interpolant(NodeSystem nodes, OpucBasis basis, std::vector<Complex> samples)
    : nodes_(std::move(nodes)), basis_(std::move(basis)), samples_(std::move(samples)) {
    wide_samples_.reserve(samples_.size());
    for (const Complex v : samples_) wide_samples_.emplace_back(v);
    build();
}

Interpolant::Interpolant(NodeSystem nodes, OpucBasis basis, std::vector<WideComplex> samples)
    : nodes_(std::move(nodes)), basis_(std::move(basis)), wide_samples_(std::move(samples)) {
    samples_.reserve(wide_samples_.size());
    for (const auto& v : wide_samples_) samples_.push_back(v.to_complex());
    build();
}

void Interpolant::build() {
    if (wide_samples_.size() != nodes_.size()) {
        throw std::invalid_argument("one sample per node required");
    }
    const int n = nodes_.n;
    wide_coefficients_.assign(static_cast<std::size_t>(n) + 1, WideComplex{});
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        const WideComplex scaled = wide_samples_[j] / nodes_.wide_kernel_diags[j];
        const auto phis = eval_phi_all_wide(basis_, n, nodes_.wide_node(j));
        for (std::size_t k = 0; k < phis.size(); ++k) wide_coefficients_[k] += scaled * conj(phis[k]);
    }
    coefficients_.clear();
    for (const auto& c : wide_coefficients_) coefficients_.push_back(c.to_complex());
}

WideComplex Interpolant::eval(const WideComplex& z) const {
    const auto alphas = basis_.alphas();
    WideComplex phi{1 / sqrtq(static_cast<Wide>(basis_.mass()))};
    WideComplex star = phi;
    WideComplex total = wide_coefficients_[0] * phi;
    for (std::size_t k = 1; k < wide_coefficients_.size(); ++k) {
        const WideComplex a(alphas[k - 1]);
        const Wide rho = sqrtq(1 - norm(a));
        const WideComplex zphi = z * phi;
        phi = (zphi - conj(a) * star) / rho;
        star = (star - a * zphi) / rho;
        total += wide_coefficients_[k] * phi;
    }
    return total;
}

Complex Interpolant::operator()(Complex z) const { return eval(WideComplex(z)).to_complex(); }

Complex Interpolant::eval_kernel_form(Complex z) const {
    const WideComplex wz(z);
    WideComplex total{};
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        total += wide_samples_[j] * fundamental_eval_wide(nodes_, basis_, static_cast<int>(j), wz);
    }
    return total.to_complex();
}

double Interpolant::parseval_norm() const {
    Wide total = 0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) total += norm(wide_samples_[j]) / nodes_.wide_kernel_diags[j];
    return static_cast<double>(sqrtq(total));
}

Interpolant interpolate(const NodeSystem& ns, const OpucBasis& b, const CircleFunction& f) {
    std::vector<Complex> samples;
    samples.reserve(ns.size());
    for (const Complex z : ns.nodes) samples.push_back(f(z));
    return Interpolant(ns, b, std::move(samples));
}

double interp_error(const Interpolant& interpolant, const Measure& m, const CircleFunction& f,
                    double p) {
    const auto rule = quadrature_rule(m, error_resolution(interpolant.nodes().n));
    return lp_norm(rule, [&](Complex z) { return f(z) - interpolant(z); }, p);
}

double interp_error(const NodeSystem& ns, const OpucBasis& b, const Measure& m,
                    const CircleFunction& f, double p) {
    return interp_error(interpolate(ns, b, f), m, f, p);
}

}  // namespace opuc
