#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rwl/errors.hpp"

namespace rwl {

enum class SpeedFamily { Tanh, Logistic, Arctan, CustomMonotone };

/// A wave speed c(theta): uniformly positive, bounded, nondecreasing, with
/// bounded derivative. Instances are immutable after construction and safe
/// to share across threads.
class WaveSpeed {
public:
    using Fn = std::function<double(double)>;

    /// c(theta) = c0 + delta * tanh(theta), requires c0 > delta > 0.
    static WaveSpeed tanh_speed(double c0, double delta);
    /// c(theta) = c_minus + (c_plus - c_minus) / (1 + exp(-theta)), requires 0 < c_minus < c_plus.
    static WaveSpeed logistic_speed(double c_minus, double c_plus);
    /// c(theta) = c0 + delta * atan(theta), requires c0 > (pi/2) delta > 0.
    static WaveSpeed arctan_speed(double c0, double delta);
    /// User-supplied monotone speed with asserted bounds. The damping
    /// constant is a sampled estimate on [-window, window].
    static WaveSpeed custom(Fn c, Fn c_prime, double c_star, double c_sup,
                            double sample_window = 50.0, int sample_count = 4001);
    /// Constant speed (custom with c' = 0); damping constant is exactly 0.
    static WaveSpeed constant(double c);

    SpeedFamily family() const { return family_; }
    double c_star() const { return c_star_; }
    double c_sup() const { return c_sup_; }
    /// A = sup c'/(2c); a sampled, refined lower estimate of the true sup.
    double damping_A() const { return damping_A_; }
    double sample_window() const { return window_; }
    int sample_count() const { return samples_; }

    /// (c(theta), c'(theta)). Throws NonFiniteInput on NaN or infinity.
    std::pair<double, double> evaluate(double theta) const;

    /// Vectorized evaluation; out arrays are resized to match theta.
    void evaluate(const Eigen::ArrayXd& theta, Eigen::ArrayXd& c, Eigen::ArrayXd& c_prime) const;

    Eigen::ArrayXd speed(const Eigen::ArrayXd& theta) const;

    std::string describe() const;

private:
    WaveSpeed() = default;

    SpeedFamily family_ = SpeedFamily::CustomMonotone;
    double p0_ = 0.0;  // c0 or c_minus
    double p1_ = 0.0;  // delta or c_plus
    Fn c_fn_;
    Fn cp_fn_;
    double c_star_ = 0.0;
    double c_sup_ = 0.0;
    double damping_A_ = 0.0;
    double window_ = 50.0;
    int samples_ = 4001;

    friend double damping_constant(const WaveSpeed&, double, int);
};

/// Sampled estimate of A = sup c'/(2c) over [-window, window]: dense scan on
/// n_intervals nested subintervals plus a deterministic bracket refinement on
/// a fixed fine lattice. Returns the maximum over every evaluated point, so
/// refining the scan never decreases the result.
double damping_constant(const WaveSpeed& ws, double window, int n_intervals);
double damping_constant(const WaveSpeed& ws);

struct SpeedViolation {
    enum class Kind { Positivity, BelowLower, AboveUpper, Monotonicity };
    Kind kind;
    double theta;
    double value;
    std::string describe() const;
};

struct ValidationReport {
    bool pass = true;
    std::vector<SpeedViolation> violations;  // capped at max_recorded
    std::size_t violation_count = 0;
    std::size_t checked = 0;
    static constexpr std::size_t max_recorded = 16;
};

/// Sample c and c' on [theta_lo, theta_hi] and report violations of
/// positivity, the c_star/c_sup sandwich, or monotonicity. Never throws on a
/// bad speed; the report carries the failures.
ValidationReport validate(const WaveSpeed& ws, double theta_lo, double theta_hi, int n_samples);

} // namespace rwl
