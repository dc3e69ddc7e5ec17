#include "rwl/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rwl {

std::pair<double, double> smooth_cutoff(double s, double r0, double r1) {
    const double a = std::abs(s);
    if (a <= r0) return {1.0, 0.0};
    if (a >= r1) return {0.0, 0.0};
    // psi(t) = exp(-1/t); chi = psi(r1-a) / (psi(r1-a) + psi(a-r0)).
    const double ta = r1 - a;
    const double tb = a - r0;
    constexpr double tiny = 1e-3;  // below this psi underflows to ~e^-1000
    if (tb < tiny && ta > 2 * tiny) return {1.0, 0.0};
    if (ta < tiny && tb > 2 * tiny) return {0.0, 0.0};
    const double F = std::exp(-1.0 / ta);
    const double G = std::exp(-1.0 / tb);
    const double denom = F + G;
    const double chi = F / denom;
    const double Fp = F / (ta * ta);
    const double Gp = G / (tb * tb);
    const double sgn = (s >= 0.0) ? 1.0 : -1.0;
    const double dchi = -sgn * (Fp * G + F * Gp) / (denom * denom);
    return {chi, dchi};
}

InitialData gaussian_bump(const Grid& grid, double amplitude, double center, double width,
                          double velocity_amplitude, double support_radius) {
    if (!(width > 0.0))
        throw ParameterViolation("gaussian_bump: width must be positive");
    const double r1 = support_radius > 0.0 ? support_radius : 8.0 * width;
    const double r0 = 0.75 * r1;

    auto bump = [=](double x) {
        const double s = x - center;
        return std::exp(-(s * s) / (width * width)) * smooth_cutoff(s, r0, r1).first;
    };
    auto bump_prime = [=](double x) {
        const double s = x - center;
        const double g = std::exp(-(s * s) / (width * width));
        const double gp = g * (-2.0 * s / (width * width));
        const auto [chi, dchi] = smooth_cutoff(s, r0, r1);
        return gp * chi + g * dchi;
    };

    InitialData data;
    data.x = grid.points();
    const int n = grid.n;
    data.u0.resize(n);
    data.u1.resize(n);
    data.u0_prime.resize(n);
    for (int i = 0; i < n; ++i) {
        data.u0[i] = amplitude * bump(data.x[i]);
        data.u1[i] = velocity_amplitude * bump(data.x[i]);
        data.u0_prime[i] = amplitude * bump_prime(data.x[i]);
    }
    data.support_lo = center - r1;
    data.support_hi = center + r1;
    data.u0_fn = [=](double x) { return amplitude * bump(x); };
    data.u1_fn = [=](double x) { return velocity_amplitude * bump(x); };
    data.u0_prime_fn = [=](double x) { return amplitude * bump_prime(x); };
    return data;
}

InitialData nonpositive_riemann_data(const InitialData& base, double slack, const WaveSpeed& ws) {
    if (!(slack >= 0.0))
        throw ParameterViolation("nonpositive_riemann_data: slack must be >= 0");
    InitialData data = base;
    const double center = 0.5 * (base.support_lo + base.support_hi);
    const double r1 = 0.5 * base.support_width();
    const double r0 = 0.75 * r1;
    const double width = r1 > 0.0 ? r1 / 8.0 : 1.0;
    auto slack_bump = [=](double x) {
        if (r1 <= 0.0) return 0.0;
        const double s = x - center;
        return std::exp(-(s * s) / (width * width)) * smooth_cutoff(s, r0, r1).first;
    };
    // Array evaluation keeps c(u0) bit-identical with initial_riemann's, so
    // R0 = c*(u0' - |u0'|) and S0 = -c*(u0' + |u0'|) cancel exactly.
    Eigen::ArrayXd c, cp;
    ws.evaluate(data.u0, c, cp);
    for (Eigen::Index i = 0; i < data.x.size(); ++i)
        data.u1[i] = -std::abs(c[i] * data.u0_prime[i]) - slack * slack_bump(data.x[i]);
    if (base.u0_fn && base.u0_prime_fn) {
        auto u0_fn = base.u0_fn;
        auto u0p_fn = base.u0_prime_fn;
        data.u1_fn = [=, &ws](double x) {
            const double c = ws.evaluate(u0_fn(x)).first;
            return -c * std::abs(u0p_fn(x)) - slack * slack_bump(x);
        };
    } else {
        data.u1_fn = nullptr;
    }
    return data;
}

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> initial_riemann(const InitialData& data,
                                                          const WaveSpeed& ws) {
    Eigen::ArrayXd c, cp;
    ws.evaluate(data.u0, c, cp);
    const Eigen::ArrayXd p = c * data.u0_prime;
    return {data.u1 + p, data.u1 - p};
}

std::pair<Grid, InitialData> load_initial_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open initial-data file: " + path);
    std::string line;
    std::vector<double> x, u0, u1, u0p;
    bool first_line = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first_line) {
            first_line = false;
            // A leading header row is one whose first field is not a number.
            char* end = nullptr;
            std::strtod(line.c_str(), &end);
            if (end == line.c_str()) continue;
        }
        std::istringstream ls(line);
        double vals[4];
        char comma;
        for (int k = 0; k < 4; ++k) {
            if (!(ls >> vals[k]))
                throw ConfigError("malformed initial-data row: " + line);
            if (k < 3) ls >> comma;
        }
        x.push_back(vals[0]);
        u0.push_back(vals[1]);
        u1.push_back(vals[2]);
        u0p.push_back(vals[3]);
    }
    const int n = static_cast<int>(x.size());
    if (n < 16)
        throw ConfigError("initial-data file has fewer than 16 rows");
    const double dx = x[1] - x[0];
    for (int i = 1; i < n; ++i) {
        if (std::abs((x[i] - x[i - 1]) - dx) > 1e-9 * std::max(1.0, std::abs(dx)))
            throw ConfigError("initial-data x column is not uniformly spaced");
    }
    Grid grid(x[0], x[0] + n * dx, n);
    InitialData data;
    data.x = Eigen::Map<const Eigen::ArrayXd>(x.data(), n);
    data.u0 = Eigen::Map<const Eigen::ArrayXd>(u0.data(), n);
    data.u1 = Eigen::Map<const Eigen::ArrayXd>(u1.data(), n);
    data.u0_prime = Eigen::Map<const Eigen::ArrayXd>(u0p.data(), n);
    // Declared support = the sampled nonzero range.
    int lo = 0, hi = n - 1;
    auto live = [&](int i) {
        return std::abs(data.u0[i]) > 1e-12 || std::abs(data.u1[i]) > 1e-12;
    };
    while (lo < n && !live(lo)) ++lo;
    while (hi >= 0 && !live(hi)) --hi;
    if (lo > hi) {
        data.support_lo = data.support_hi = x[0];
    } else {
        data.support_lo = data.x[lo];
        data.support_hi = data.x[hi];
    }
    return {grid, data};
}

double support_leakage(const InitialData& data) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < data.x.size(); ++i) {
        if (data.x[i] < data.support_lo || data.x[i] > data.support_hi)
            worst = std::max({worst, std::abs(data.u0[i]), std::abs(data.u1[i])});
    }
    return worst;
}

} // namespace rwl
