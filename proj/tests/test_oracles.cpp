#include <doctest.h>

#include <cmath>

#include "rwl/oracles.hpp"
#include "rwl/errors.hpp"

using namespace rwl;

namespace {

double gaussian(double x, double a, double w) { return a * std::exp(-x * x / (w * w)); }

} // namespace

TEST_CASE("dalembert at t = 0 is the initial displacement") {
    const LinearWaveOracle oracle(
        2.0, [](double x) { return gaussian(x, 1.0, 2.0); },
        [](double x) { return gaussian(x, 0.3, 1.0); }, -20.0, 20.0, 1.0);
    for (double x : {-3.0, -0.5, 0.0, 1.7, 6.0})
        CHECK(dalembert(oracle, 0.0, x) == gaussian(x, 1.0, 2.0));
    CHECK_THROWS_AS(dalembert(oracle, -0.5, 0.0), DomainViolation);
}

TEST_CASE("zero velocity splits into two half bumps") {
    const double c = 2.0;
    const LinearWaveOracle oracle(
        c, [](double x) { return gaussian(x, 1.0, 1.0); }, [](double) { return 0.0; },
        -30.0, 30.0, 1.0);
    const double t = 3.0;
    for (double x : {-7.0, -6.0, -5.0, 5.0, 6.0, 7.0}) {
        const double expected =
            0.5 * (gaussian(x - c * t, 1.0, 1.0) + gaussian(x + c * t, 1.0, 1.0));
        CHECK(dalembert(oracle, t, x) == doctest::Approx(expected).epsilon(1e-14));
    }
    // Peaks of height 1/2 at x = +-ct.
    CHECK(dalembert(oracle, t, 6.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dalembert(oracle, t, -6.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("velocity-only data spreads into a symmetric plateau") {
    const double c = 1.5;
    const double a = 0.4, w = 1.0;
    const LinearWaveOracle oracle(
        c, [](double) { return 0.0; }, [=](double x) { return gaussian(x, a, w); },
        -40.0, 40.0, 1.0);
    // After the bump has fully passed, u settles at integral(u1)/(2c).
    const double total = a * w * std::sqrt(3.14159265358979323846);
    const double plateau = total / (2.0 * c);
    CHECK(dalembert(oracle, 10.0, 0.0) == doctest::Approx(plateau).epsilon(1e-10));
    for (double x : {-4.0, -1.0, 0.5, 3.0})
        CHECK(dalembert(oracle, 10.0, x) ==
              doctest::Approx(dalembert(oracle, 10.0, -x)).epsilon(1e-12));
}

TEST_CASE("antiderivative cache matches direct quadrature") {
    const double a = 0.7, w = 1.3;
    const LinearWaveOracle oracle(
        1.0, [](double) { return 0.0; }, [=](double x) { return gaussian(x, a, w); },
        -25.0, 25.0, w);
    // erf-based reference for the pure Gaussian.
    auto exact = [&](double x) {
        return a * w * std::sqrt(3.14159265358979323846) / 2.0 *
               (std::erf(x / w) - std::erf(-25.0 / w));
    };
    for (double x : {-10.0, -2.0, -0.3, 0.0, 1.0, 4.4, 18.0})
        CHECK(oracle.u1_antiderivative(x) == doctest::Approx(exact(x)).epsilon(1e-12));
    CHECK_THROWS_AS(oracle.u1_antiderivative(-26.0), DomainViolation);
}

TEST_CASE("dalembert satisfies the wave equation to second order") {
    const double c = 2.0;
    const LinearWaveOracle oracle(
        c, [](double x) { return gaussian(x, 1.0, 2.0); },
        [](double x) { return gaussian(x, 0.5, 2.0); }, -40.0, 40.0, 2.0);
    auto residual = [&](double h) {
        double worst = 0.0;
        for (double x : {-2.0, 0.0, 1.0, 3.0}) {
            const double t = 1.0;
            const double utt = (oracle(t + h, x) - 2.0 * oracle(t, x) + oracle(t - h, x)) / (h * h);
            const double uxx = (oracle(t, x + h) - 2.0 * oracle(t, x) + oracle(t, x - h)) / (h * h);
            worst = std::max(worst, std::abs(utt - c * c * uxx));
        }
        return worst;
    };
    const double r1 = residual(2e-2);
    const double r2 = residual(1e-2);
    CHECK(r1 / r2 >= 3.0);
    CHECK(r1 / r2 <= 5.0);
    CHECK(r2 <= 1e-3);
}

TEST_CASE("ode_reference basics and fourth-order convergence") {
    auto zero_rhs = [](double, double) { return 0.0; };
    for (const auto& [t, y] : ode_reference(zero_rhs, -0.7, 3.0, 100)) CHECK(y == -0.7);
    CHECK_THROWS_AS(ode_reference(zero_rhs, 0.0, 1.0, 5), ParameterViolation);

    // y' = 0.5(y - 1), y(0) = -1 has solution 1 - 2 e^{0.5 t}.
    auto rhs = [](double, double y) { return 0.5 * (y - 1.0); };
    auto err_at = [&](int n) {
        const auto series = ode_reference(rhs, -1.0, 4.0, n);
        const double exact = 1.0 - 2.0 * std::exp(2.0);
        return std::abs(series.back().second - exact);
    };
    CHECK(err_at(4000) <= 1e-8 * (2.0 * std::exp(2.0)));
    const double ratio = err_at(50) / err_at(100);
    CHECK(ratio >= 13.0);
    CHECK(ratio <= 19.0);
}
