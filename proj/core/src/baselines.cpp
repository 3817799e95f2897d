#include <jerkseg/baselines.hpp>

#include <cmath>
#include <map>
#include <numbers>

namespace jerkseg {

jerk_profile scurve_segment(double a_max, double j_max) {
    if (!(a_max > 0.0) || !(j_max > 0.0)) {
        throw validation_error("InvalidArgument: a_max and j_max must be > 0");
    }
    return jerk_profile({{0.0, j_max}, {a_max / j_max, -j_max}});
}

double zv_terminal_time(const derived_params& dp, double a_max, double j_max) {
    return a_max / j_max + std::numbers::pi / dp.omega_d;
}

jerk_profile zv_segment(const derived_params& dp, double a_max, double j_max) {
    if (!(a_max > 0.0) || !(j_max > 0.0)) {
        throw validation_error("InvalidArgument: a_max and j_max must be > 0");
    }
    const double t_delay = std::numbers::pi / dp.omega_d;
    const double kappa = std::exp(-dp.delta * t_delay);
    const double a1 = 1.0 / (1.0 + kappa);
    const double a2 = kappa / (1.0 + kappa);
    const double t_ramp = a_max / j_max;

    // Convolution of the single ramp with the two shaper impulses; steps at
    // equal times merge (t_ramp may equal t_delay).
    std::map<double, double> steps;
    steps[0.0] += a1 * j_max;
    steps[t_ramp] += -a1 * j_max;
    steps[t_delay] += a2 * j_max;
    steps[t_delay + t_ramp] += -a2 * j_max;

    std::vector<jerk_step> out;
    out.reserve(steps.size());
    for (const auto& [t, a] : steps) {
        if (a != 0.0) out.push_back({t, a});
    }
    return jerk_profile(std::move(out));
}

double default_jerk_limit(double a_max, double omega_d) {
    if (!(a_max >= 0.0) || !(omega_d > 0.0)) {
        throw validation_error("InvalidArgument: a_max >= 0 and omega_d > 0 required");
    }
    return a_max * omega_d / (2.0 * std::numbers::pi);
}

}  // namespace jerkseg
