#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

#include "opuc/errors.hpp"
#include "opuc/measure.hpp"
#include "support.hpp"

using opuc::Complex;
using opuc::Measure;
using opuc::SzegoClass;

TEST_CASE("lebesgue has unit density and no atoms") {
    const auto m = Measure::lebesgue();
    CHECK(m.szego_class() == SzegoClass::szego);
    CHECK(m.atoms().empty());
    for (double theta : {0.0, 1.0, 3.0, 6.2}) CHECK(m.density(theta) == doctest::Approx(1.0));
}

TEST_CASE("arc(pi) coincides with lebesgue") {
    const auto m = Measure::arc(opuc::kPi);
    CHECK(m.szego_class() == SzegoClass::szego);
    const auto c = opuc::moments(m, 6);
    CHECK(c.at(0).real() == doctest::Approx(1.0).epsilon(1e-15));
    for (int k = 1; k <= 6; ++k) CHECK(std::abs(c.at(k)) < 1e-15);
}

TEST_CASE("arc(pi/2) is an indicator and not Szego") {
    const auto m = Measure::arc(opuc::kPi / 2);
    CHECK(m.szego_class() == SzegoClass::non_szego);
    CHECK(m.density(0.3) == doctest::Approx(1.0));
    CHECK(m.density(opuc::kTwoPi - 0.3) == doctest::Approx(1.0));
    CHECK(m.density(opuc::kPi) == 0.0);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS((void)Measure::arc(0.0), opuc::InvalidMeasure);
    CHECK_THROWS_AS((void)Measure::arc(-1.0), opuc::InvalidMeasure);
    CHECK_THROWS_AS((void)Measure::arc(3.2), opuc::InvalidMeasure);
    const auto base = Measure::lebesgue();
    CHECK_THROWS_AS((void)base.with_atoms({{0.0, 0.0}}), opuc::InvalidMeasure);
    CHECK_THROWS_AS((void)base.with_atoms({{0.0, -1.0}}), opuc::InvalidMeasure);
    CHECK_THROWS_AS((void)base.with_atoms({{1.0, 1.0}, {1.0 + opuc::kTwoPi, 2.0}}), opuc::InvalidMeasure);
}

TEST_CASE("atoms inherit the base flag") {
    CHECK(Measure::arc(1.0).with_atoms({{2.0, 0.5}}).szego_class() == SzegoClass::non_szego);
    CHECK(Measure::lebesgue().with_atoms({{2.0, 0.5}}).szego_class() == SzegoClass::szego);
}

TEST_CASE("moment examples") {
    SUBCASE("lebesgue") {
        const auto c = opuc::moments(Measure::lebesgue(), 3);
        CHECK(c.order() == 3);
        CHECK(c.at(0) == Complex(1.0));
        for (int k = 1; k <= 3; ++k) CHECK(std::abs(c.at(k)) < 1e-15);
    }
    SUBCASE("single unit atom at 0") {
        const auto m = Measure::from_density({}, SzegoClass::unknown, "atoms").with_atoms({{0.0, 1.0}});
        const auto c = opuc::moments(m, 2);
        for (int k = 0; k <= 2; ++k) CHECK(std::abs(c.at(k) - 1.0) < 1e-15);
    }
    SUBCASE("arc closed form against numerical integration") {
        for (double a : {0.3, 1.0, 1.5707963, 2.5}) {
            const auto m = Measure::arc(a);
            const auto closed = opuc::moments(m, 12);
            const auto numeric = opuc::numeric_moments(m, 12);
            CHECK(closed.at(0).real() == doctest::Approx(a / opuc::kPi).epsilon(1e-15));
            for (int k = 1; k <= 12; ++k) {
                CHECK(std::abs(closed.at(k) - std::sin(k * a) / (opuc::kPi * k)) < 1e-15);
                CHECK(std::abs(closed.at(k) - numeric.at(k)) <= 1e-12 * (1.0 + std::abs(closed.at(k))));
            }
        }
    }
    SUBCASE("negative indices conjugate") {
        const auto m = Measure::lebesgue().with_atoms({{0.7, 0.25}});
        const auto c = opuc::moments(m, 3);
        CHECK(c.at(-2) == std::conj(c.at(2)));
        CHECK(std::abs(c.at(1) - 0.25 * opuc::unit(-0.7)) < 1e-15);
    }
}

TEST_CASE("binary128 moments round to the double ones") {
    for (const auto& m : testing::reference_measures()) {
        const auto wide = opuc::wide_moments(m, 20).rounded();
        const auto plain = opuc::moments(m, 20);
        for (int k = 0; k <= 20; ++k) CHECK(std::abs(wide.at(k) - plain.at(k)) < 1e-15);
    }
}

TEST_CASE("integrate and lp_norm examples") {
    const auto leb = Measure::lebesgue();
    const auto half = Measure::arc(opuc::kPi / 2);
    const auto one = [](Complex) { return Complex(1.0); };
    CHECK(std::abs(opuc::integrate(leb, one) - 1.0) < 1e-15);
    CHECK(std::abs(opuc::integrate(half, one) - 0.5) < 1e-13);
    CHECK(std::abs(opuc::integrate(leb, [](Complex z) { return z; })) < 1e-15);

    for (double p : {0.5, 1.0, 2.0, 3.0}) CHECK(opuc::lp_norm(leb, one, p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(opuc::lp_norm(half, one, 2.0) == doctest::Approx(0.7071067812).epsilon(1e-10));
    CHECK(opuc::lp_norm(leb, [](Complex z) { return z - 1.0 / z; }, 2.0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    CHECK_THROWS_AS((void)opuc::lp_norm(leb, one, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)opuc::integrate(leb, one, 8), std::invalid_argument);
}

TEST_CASE("quadrature rule carries the total mass") {
    for (const auto& m : testing::reference_measures()) {
        const auto rule = opuc::quadrature_rule(m, 1024);
        double total = 0.0;
        for (double w : rule.weights) total += w;
        CHECK(total == doctest::Approx(opuc::moments(m, 0).at(0).real()).epsilon(1e-13));
    }
}

TEST_CASE("moments are stable under grid doubling") {
    for (const auto& m : testing::reference_measures()) {
        for (int k = 0; k <= 16; ++k) {
            const auto g = [k](Complex z) { return std::pow(z, -k); };
            const Complex base = opuc::integrate(m, g, 4096);
            const Complex doubled = opuc::integrate(m, g, 8192);
            CHECK(std::abs(base - doubled) <= 1e-12 * (1.0 + std::abs(base)));
        }
    }
}

TEST_CASE("c0 equals the integral of 1") {
    for (const auto& m : testing::reference_measures()) {
        const double c0 = opuc::moments(m, 0).at(0).real();
        CHECK(std::abs(opuc::integrate(m, [](Complex) { return Complex(1.0); }) - c0) <= 1e-13);
    }
}

TEST_CASE("Toeplitz moment matrices are positive semidefinite") {
    for (const auto& m : testing::reference_measures()) {
        const int N = 12;
        const auto c = opuc::moments(m, N);
        Eigen::MatrixXcd t(N + 1, N + 1);
        for (int j = 0; j <= N; ++j) {
            for (int k = 0; k <= N; ++k) t(j, k) = c.at(j - k);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(t);
        CHECK(solver.eigenvalues().minCoeff() >= -1e-10 * c.at(0).real());
    }
}

TEST_CASE("property: adding an atom adds m |g|^p to the p-th power norm") {
    testing::Gen gen(20240611);
    for (int trial = 0; trial < 40; ++trial) {
        const double a = gen.uniform(0.2, opuc::kPi);
        const Measure base = Measure::arc(a);
        const double theta = gen.angle();
        const double mass = gen.uniform(0.01, 2.0);
        const double p = gen.uniform(0.25, 3.0);
        const Complex shift = gen.complex_unit_box();
        const auto g = [shift](Complex z) { return z * z - shift; };
        const double before = std::pow(opuc::lp_norm(base, g, p), p);
        const double after = std::pow(opuc::lp_norm(base.with_atoms({{theta, mass}}), g, p), p);
        const double expected = mass * std::pow(std::abs(g(opuc::unit(theta))), p);
        CHECK(after - before == doctest::Approx(expected).epsilon(1e-10));
    }
}
