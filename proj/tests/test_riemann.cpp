#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rwl/riemann.hpp"

using namespace rwl;

namespace {

double ulp_of(double scale) {
    const double a = std::abs(scale);
    return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

} // namespace

TEST_CASE("to_riemann direct substitution") {
    const RiemannPair p = to_riemann(1.0, 2.0, 3.0);
    CHECK(p.R == 7.0);
    CHECK(p.S == -5.0);

    const RiemannPair q = to_riemann(0.7, 0.0, 2.5);
    CHECK(q.R == 0.7);
    CHECK(q.S == 0.7);

    const RiemannPair r = to_riemann(0.0, 1.0, 2.0);
    CHECK(r.R == 2.0);
    CHECK(r.S == -2.0);

    CHECK_THROWS_AS(to_riemann(1.0, 1.0, 0.0), NonPositiveSpeed);
    CHECK_THROWS_AS(to_riemann(1.0, 1.0, -2.0), NonPositiveSpeed);
}

TEST_CASE("from_riemann inverts to_riemann") {
    const auto [ut, ux] = from_riemann(7.0, -5.0, 3.0);
    CHECK(ut == 1.0);
    CHECK(ux == 2.0);

    const auto [ut2, ux2] = from_riemann(0.7, 0.7, 2.5);
    CHECK(ut2 == 0.7);
    CHECK(ux2 == 0.0);

    const auto [ut3, ux3] = from_riemann(1.0, -1.0, 0.5);
    CHECK(ut3 == 0.0);
    CHECK(ux3 == 2.0);

    CHECK_THROWS_AS(from_riemann(1.0, 1.0, 0.0), NonPositiveSpeed);
}

TEST_CASE("roundtrip is the identity to one ulp") {
    std::mt19937_64 rng(0x9d2c5680u);
    std::uniform_real_distribution<double> mag(-6.0, 6.0);
    std::uniform_real_distribution<double> cdist(0.05, 20.0);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int k = 0; k < 100000; ++k) {
        const double ut = (sign(rng) ? 1 : -1) * std::pow(10.0, mag(rng));
        const double ux = (sign(rng) ? 1 : -1) * std::pow(10.0, mag(rng));
        const double c = cdist(rng);
        const RiemannPair p = to_riemann(ut, ux, c);
        const auto [ut2, ux2] = from_riemann(p.R, p.S, c);
        const double scale = std::abs(ut) + std::abs(c * ux);
        CHECK(std::abs(ut2 - ut) <= ulp_of(scale));
        CHECK(std::abs(ux2 - ux) <= ulp_of(scale / c));
    }
}

TEST_CASE("source terms match the lambda=0 transport identities") {
    // Independent route: f_R = (c'/2c) S (R-S), f_S = (c'/2c) R (S-R).
    const double R = 2.0, S = 1.0, c = 1.0, cp = 0.5;
    const double oracle_fR = cp / (2.0 * c) * S * (R - S);
    const double oracle_fS = cp / (2.0 * c) * R * (S - R);
    CHECK(oracle_fR == 0.25);
    CHECK(oracle_fS == -0.5);

    const SourcePair g = source_terms(R, S, c, cp, 0.0);
    CHECK(g.f_R == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.f_S == doctest::Approx(-0.5).epsilon(1e-15));

    const SourcePair s0 = source_terms_lambda0(R, S, c, cp);
    CHECK(s0.f_R == 0.25);
    CHECK(s0.f_S == -0.5);
}

TEST_CASE("source terms at lambda=1") {
    // (c'/4c)(R^2 - S^2) = 0.125 * 3 at (R,S,c,c') = (2,1,1,0.5).
    const SourcePair g = source_terms(2.0, 1.0, 1.0, 0.5, 1.0);
    CHECK(g.f_R == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(g.f_S == doctest::Approx(-0.375).epsilon(1e-15));
}

TEST_CASE("bracket collapses exactly when R = S") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> val(-50.0, 50.0);
    std::uniform_real_distribution<double> cdist(0.1, 5.0);
    for (double lambda : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        for (int k = 0; k < 2000; ++k) {
            const double r = val(rng);
            const SourcePair g = source_terms(r, r, cdist(rng), cdist(rng), lambda);
            CHECK(g.f_R == 0.0);
            CHECK(g.f_S == 0.0);
        }
    }
    const SourcePair z = source_terms_lambda0(3.0, 3.0, 2.0, 0.7);
    CHECK(z.f_R == 0.0);
    CHECK(z.f_S == 0.0);
}

TEST_CASE("lambda0 specialization edge cases") {
    const SourcePair a = source_terms_lambda0(0.0, 1.5, 2.0, 0.6);
    CHECK(a.f_R == doctest::Approx(-(0.6 / 4.0) * 1.5 * 1.5).epsilon(1e-15));
    CHECK(a.f_S == 0.0);

    const SourcePair b = source_terms_lambda0(-3.2, 4.1, 1.7, 0.0);
    CHECK(b.f_R == 0.0);
    CHECK(b.f_S == 0.0);
}

TEST_CASE("general form agrees with the specialization at lambda=0") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> val(-10.0, 10.0);
    std::uniform_real_distribution<double> cdist(0.1, 5.0);
    std::uniform_real_distribution<double> cpdist(0.0, 3.0);
    for (int k = 0; k < 100000; ++k) {
        const double R = val(rng), S = val(rng), c = cdist(rng), cp = cpdist(rng);
        const SourcePair g = source_terms(R, S, c, cp, 0.0);
        const SourcePair h = source_terms_lambda0(R, S, c, cp);
        const double scale_R = std::max(std::abs(h.f_R), 1e-300);
        const double scale_S = std::max(std::abs(h.f_S), 1e-300);
        CHECK(std::abs(g.f_R - h.f_R) / scale_R <= 1e-14);
        CHECK(std::abs(g.f_S - h.f_S) / scale_S <= 1e-14);
    }
}

TEST_CASE("antisymmetry at lambda=1") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> val(-10.0, 10.0);
    std::uniform_real_distribution<double> cdist(0.1, 5.0);
    for (int k = 0; k < 10000; ++k) {
        const double R = val(rng), S = val(rng), c = cdist(rng), cp = cdist(rng);
        const SourcePair g = source_terms(R, S, c, cp, 1.0);
        CHECK(g.f_R == -g.f_S);
    }
}

TEST_CASE("lambda range is enforced") {
    CHECK_THROWS_AS(source_terms(1.0, 2.0, 1.0, 0.5, -0.1), LambdaOutOfRange);
    CHECK_THROWS_AS(source_terms(1.0, 2.0, 1.0, 0.5, 2.1), LambdaOutOfRange);
    CHECK_THROWS_AS(source_terms(1.0, 2.0, 0.0, 0.5, 1.0), NonPositiveSpeed);
    CHECK_THROWS_AS(source_terms_lambda0(1.0, 2.0, -1.0, 0.5), NonPositiveSpeed);
}
