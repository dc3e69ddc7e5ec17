#include <doctest.h>

#include <cmath>
#include <random>

#include "rwl/bounds.hpp"
#include "rwl/diagnostics.hpp"

using namespace rwl;

namespace {

FieldState random_state(const Grid& grid, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    FieldState st;
    st.t = 0.0;
    st.u.resize(grid.n);
    st.R.resize(grid.n);
    st.S.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        st.u[i] = dist(rng);
        st.R[i] = dist(rng);
        st.S[i] = dist(rng);
    }
    return st;
}

} // namespace

TEST_CASE("sup norms by substitution") {
    const Grid grid(-4.0, 4.0, 64);
    const WaveSpeed two = WaveSpeed::constant(2.0);

    FieldState zero;
    zero.u = Eigen::ArrayXd::Zero(64);
    zero.R = Eigen::ArrayXd::Zero(64);
    zero.S = Eigen::ArrayXd::Zero(64);
    const SupNorms z = sup_norms(zero, two);
    CHECK(z.sup_ut == 0.0);
    CHECK(z.sup_ux == 0.0);

    FieldState st = zero;
    st.R = Eigen::ArrayXd::Constant(64, 1.0);
    st.S = Eigen::ArrayXd::Constant(64, -1.0);
    const SupNorms n = sup_norms(st, two);
    CHECK(n.sup_ut == 0.0);
    CHECK(n.sup_ux == 0.5);
    CHECK(n.bound_ut == 1.0);
    CHECK(n.bound_ux == 0.5);
}

TEST_CASE("sup norms never exceed their Riemann surrogates") {
    const Grid grid(-4.0, 4.0, 128);
    const WaveSpeed ws = WaveSpeed::tanh_speed(2.0, 1.0);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const FieldState st = random_state(grid, rng, 3.0);
        const SupNorms n = sup_norms(st, ws);
        CHECK(n.sup_ut <= n.bound_ut);
        CHECK(n.sup_ux <= n.bound_ux);
    }
}

TEST_CASE("energy identity: quadrature of u_t^2 + c^2 u_x^2 equals (R^2+S^2)/2") {
    const Grid grid(-4.0, 4.0, 128);
    const WaveSpeed ws = WaveSpeed::tanh_speed(2.0, 1.0);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const FieldState st = random_state(grid, rng, 2.0);
        const double e = energy(st, grid, ws);
        const double via_rs = grid.dx() * (0.5 * (st.R.square() + st.S.square())).sum();
        CHECK(std::abs(e - via_rs) <= 1e-12 * std::max(1.0, std::abs(via_rs)));
    }

    FieldState zero;
    zero.u = Eigen::ArrayXd::Zero(128);
    zero.R = Eigen::ArrayXd::Zero(128);
    zero.S = Eigen::ArrayXd::Zero(128);
    CHECK(energy(zero, grid, ws) == 0.0);
}

TEST_CASE("lambda=1 energy drift is small and shrinks under refinement") {
    const WaveSpeed ws = WaveSpeed::tanh_speed(2.0, 1.0);
    auto drift = [&](int n) {
        const Grid grid(-30.0, 30.0, n);
        const InitialData data = gaussian_bump(grid, 0.5, 0.0, 2.0, 0.25);
        SolverConfig cfg;
        cfg.t_end = 2.0;
        cfg.lambda = 1.0;
        cfg.order = SchemeOrder::Muscl2;
        cfg.output_every = 1000000;
        const Trajectory traj = simulate(data, grid, ws, cfg);
        const double e0 = energy(traj.frames.front(), grid, ws);
        const double eT = energy(traj.frames.back(), grid, ws);
        return std::abs(eT - e0) / e0;
    };
    const double d1 = drift(1000);
    const double d2 = drift(2000);
    CHECK(d1 <= 0.02);
    CHECK(d2 <= d1 / 1.5);
}

TEST_CASE("blow-up detection") {
    const WaveSpeed ws = WaveSpeed::tanh_speed(2.0, 1.0);

    SUBCASE("zero data never detects") {
        const Grid grid(-4.0, 4.0, 64);
        const InitialData data = gaussian_bump(grid, 0.0, 0.0, 1.0, 0.0);
        SolverConfig cfg;
        cfg.t_end = 0.5;
        const Trajectory traj = simulate(data, grid, ws, cfg);
        const BlowUpReport rep = detect_blowup(traj, 1.0);
        CHECK_FALSE(rep.detected);
        CHECK_FALSE(rep.t_detect.has_value());
        CHECK(rep.peak_history.size() == traj.frames.size());
    }

    SUBCASE("a lambda=1 run with strong positive data trips the threshold") {
        const Grid grid(-15.0, 15.0, 4000);
        const InitialData data = gaussian_bump(grid, -5.2, 0.0, 1.0, 28.0, 4.0);
        SolverConfig cfg;
        cfg.t_end = 5.0;
        cfg.lambda = 1.0;
        cfg.order = SchemeOrder::Muscl2;
        cfg.blow_threshold = 30.0;
        cfg.output_every = 20;
        const Trajectory traj = simulate(data, grid, ws, cfg);
        const BlowUpReport rep = detect_blowup(traj, 30.0);
        CHECK(rep.detected);
        REQUIRE(rep.t_detect.has_value());
        CHECK(*rep.t_detect < 5.0);
        if (rep.growth_fit) {
            CHECK(rep.growth_fit->slope < 0.0);
            CHECK(rep.growth_fit->t_star > *rep.t_detect);
        }
    }

    SUBCASE("threshold must be positive") {
        const Grid grid(-4.0, 4.0, 64);
        const InitialData data = gaussian_bump(grid, 0.0, 0.0, 1.0, 0.0);
        SolverConfig cfg;
        cfg.t_end = 0.1;
        const Trajectory traj = simulate(data, grid, ws, cfg);
        CHECK_THROWS_AS(detect_blowup(traj, 0.0), ParameterViolation);
    }
}

TEST_CASE("certified runs keep sup norms inside the envelope bounds") {
    const Grid grid(-20.0, 20.0, 1000);
    const WaveSpeed ws = WaveSpeed::tanh_speed(2.0, 1.0);
    const InitialData data = gaussian_bump(grid, 1.0, 0.0, 2.0, 0.5);
    SolverConfig cfg;
    cfg.t_end = 2.0;
    cfg.output_every = 10;
    const Trajectory traj = simulate(data, grid, ws, cfg);
    auto [R0, S0] = initial_riemann(data, ws);
    const BoundConstants k = bound_constants(R0, S0, ws);
    const double tol = default_certificate_tol(grid.dx());
    REQUIRE(certify(traj, k, tol).pass);
    const double yT = envelope_y(k, cfg.t_end);
    for (const FieldState& frame : traj.frames) {
        const SupNorms n = sup_norms(frame, ws);
        CHECK(n.sup_ut <= (std::abs(k.P) + std::abs(yT)) / 2.0 + tol);
        CHECK(n.sup_ux <= (std::abs(k.P) + std::abs(yT)) / (2.0 * ws.c_star()) + tol);
    }
}

TEST_CASE("riemann consistency monitor shrinks under refinement") {
    const WaveSpeed ws = WaveSpeed::tanh_speed(2.0, 1.0);
    auto mismatch = [&](int n) {
        const Grid grid(-20.0, 20.0, n);
        const InitialData data = gaussian_bump(grid, 0.5, 0.0, 2.0, 0.25);
        SolverConfig cfg;
        cfg.t_end = 1.0;
        cfg.output_every = 1000000;
        const Trajectory traj = simulate(data, grid, ws, cfg);
        return riemann_consistency(traj.frames.back(), grid, ws);
    };
    const double m1 = mismatch(500);
    const double m2 = mismatch(1000);
    CHECK(m2 <= m1 / 1.5);
}
