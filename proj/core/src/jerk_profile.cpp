#include <jerkseg/jerk_profile.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace jerkseg {

jerk_profile::jerk_profile(std::vector<jerk_step> steps, slider_init init)
    : steps_(std::move(steps)), init_(init) {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (!std::isfinite(steps_[i].t) || !std::isfinite(steps_[i].amplitude)) {
            throw validation_error("InvalidProfile: non-finite step");
        }
        if (i == 0 && steps_[i].t < 0.0) {
            throw validation_error("InvalidProfile: first step time must be >= 0");
        }
        if (i > 0 && !(steps_[i].t > steps_[i - 1].t)) {
            throw validation_error("InvalidProfile: step times must be strictly increasing");
        }
    }
    if (!std::isfinite(init_.z) || !std::isfinite(init_.z_dot) || !std::isfinite(init_.z_ddot)) {
        throw validation_error("InvalidProfile: non-finite initial state");
    }
}

double jerk_profile::jerk_at(double t) const {
    double sum = 0.0;
    for (const auto& s : steps_) {
        if (s.t > t) break;
        sum += s.amplitude;
    }
    return sum;
}

double jerk_profile::amplitude_sum() const {
    double sum = 0.0;
    for (const auto& s : steps_) sum += s.amplitude;
    return sum;
}

double jerk_profile::max_abs_jerk() const {
    double sum = 0.0;
    double worst = 0.0;
    for (const auto& s : steps_) {
        sum += s.amplitude;
        worst = std::max(worst, std::abs(sum));
    }
    return worst;
}

bool jerk_profile::within_jerk_limit(double j_lim, double tol) const {
    return max_abs_jerk() <= j_lim + tol;
}

slider_state slider_response(const jerk_profile& profile, double t) {
    const auto& ic = profile.init();
    slider_state s;
    s.z_ddot = ic.z_ddot;
    s.z_dot = ic.z_dot + ic.z_ddot * t;
    s.z = ic.z + ic.z_dot * t + ic.z_ddot * t * t / 2.0;
    for (const auto& step : profile.steps()) {
        const double tau = t - step.t;
        if (tau < 0.0) break;
        s.z_ddot += step.amplitude * tau;
        s.z_dot += 0.5 * step.amplitude * tau * tau;
        s.z += step.amplitude * tau * tau * tau / 6.0;
    }
    return s;
}

base_state base_response(const jerk_profile& profile, double t,
                         const derived_params& dp) {
    if (profile.init().z_ddot != 0.0) {
        throw validation_error(
            "InvalidProfile: base response requires zero initial slider acceleration");
    }
    return base_response(std::span<const jerk_step>(profile.steps()), t, dp);
}

base_state base_response(std::span<const jerk_step> steps, double t,
                         const derived_params& dp) {
    const double w = dp.omega_d;
    const double w0 = dp.omega0;
    const double dl = dp.delta;
    const double ratio = dp.m_s / (dp.m_g * w);

    base_state b{0.0, 0.0, 0.0, 0.0};
    for (const auto& step : steps) {
        const double tau = t - step.t;
        if (tau < 0.0) break;
        const double e = std::exp(-dl * tau);
        const double sn = std::sin(w * tau);
        const double cs = std::cos(w * tau);
        const double a = step.amplitude;
        b.x_ddot += -a * ratio * e * sn;
        b.x_dot += a * (ratio / (w0 * w0)) * (e * (w * cs + dl * sn) - w);
        b.x += a * (ratio / (w0 * w0 * w0 * w0)) *
               (e * ((w * w - dl * dl) * sn - 2.0 * w * dl * cs) - w * w0 * w0 * tau +
                2.0 * dl * w);
        // time derivative of the x_ddot kernel
        b.x_dddot += -a * ratio * e * (w * cs - dl * sn);
    }
    return b;
}

state_vector state_derivative(const state_vector& s, double u,
                              const derived_params& dp) {
    const double k_star = dp.omega0 * dp.omega0;
    const double d_star = 2.0 * dp.delta;
    const double m_star = dp.m_s / dp.m_g;
    state_vector ds;
    ds.x = s.x_dot;
    ds.x_dot = -k_star * s.x - d_star * s.x_dot - m_star * s.z_ddot;
    ds.z = s.z_dot;
    ds.z_dot = s.z_ddot;
    ds.z_ddot = u;
    return ds;
}

sampled_trajectory sample_trajectory(const jerk_profile& profile, double dt,
                                     double t_end, const derived_params& dp,
                                     std::size_t cap) {
    if (!(dt > 0.0)) throw validation_error("InvalidArgument: dt must be > 0");
    if (!(t_end >= 0.0)) throw validation_error("InvalidArgument: t_end must be >= 0");

    const std::size_t n = t_end == 0.0
                              ? 0
                              : static_cast<std::size_t>(
                                    std::max(1.0, std::round(t_end / dt)));
    if (n + 1 > cap) {
        throw numerical_error("GridTooLarge: " + std::to_string(n + 1) +
                              " rows exceed cap " + std::to_string(cap));
    }
    const double step = n == 0 ? 0.0 : t_end / static_cast<double>(n);

    sampled_trajectory out;
    out.t.reserve(n + 1);
    out.states.reserve(n + 1);
    out.x_ddot.reserve(n + 1);
    out.jerk.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = i == n ? t_end : static_cast<double>(i) * step;
        const auto sl = slider_response(profile, t);
        const auto ba = base_response(profile, t, dp);
        state_vector sv;
        sv.x = ba.x;
        sv.x_dot = ba.x_dot;
        sv.z = sl.z;
        sv.z_dot = sl.z_dot;
        sv.z_ddot = sl.z_ddot;
        out.t.push_back(t);
        out.states.push_back(sv);
        out.x_ddot.push_back(ba.x_ddot);
        out.jerk.push_back(profile.jerk_at(t));
    }
    return out;
}

}  // namespace jerkseg
