#include <jerkseg/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace jerkseg {

namespace {

state_vector axpy(const state_vector& y, double h, const state_vector& d) {
    return {y.x + h * d.x, y.x_dot + h * d.x_dot, y.z + h * d.z,
            y.z_dot + h * d.z_dot, y.z_ddot + h * d.z_ddot};
}

// One classical RK4 step with constant input u over [t, t+h].
state_vector rk4_step(const state_vector& y, double u, double h,
                      const derived_params& dp) {
    const state_vector k1 = state_derivative(y, u, dp);
    const state_vector k2 = state_derivative(axpy(y, h / 2.0, k1), u, dp);
    const state_vector k3 = state_derivative(axpy(y, h / 2.0, k2), u, dp);
    const state_vector k4 = state_derivative(axpy(y, h, k3), u, dp);
    state_vector out = y;
    out.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    out.x_dot += h / 6.0 * (k1.x_dot + 2.0 * k2.x_dot + 2.0 * k3.x_dot + k4.x_dot);
    out.z += h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
    out.z_dot += h / 6.0 * (k1.z_dot + 2.0 * k2.z_dot + 2.0 * k3.z_dot + k4.z_dot);
    out.z_ddot += h / 6.0 * (k1.z_ddot + 2.0 * k2.z_ddot + 2.0 * k3.z_ddot + k4.z_ddot);
    return out;
}

}  // namespace

sampled_trajectory rk4_integrate(const system_params& sys,
                                 const jerk_profile& profile, double dt,
                                 double t_end, std::size_t cap) {
    if (!(dt > 0.0)) throw validation_error("InvalidArgument: dt must be > 0");
    if (!(t_end >= 0.0)) throw validation_error("InvalidArgument: t_end must be >= 0");
    const derived_params dp = derive_params(sys);

    const std::size_t n = t_end == 0.0
                              ? 0
                              : static_cast<std::size_t>(
                                    std::max(1.0, std::round(t_end / dt)));
    if (n + 1 > cap) {
        throw numerical_error("GridTooLarge: " + std::to_string(n + 1) +
                              " rows exceed cap " + std::to_string(cap));
    }
    const double step = n == 0 ? 0.0 : t_end / static_cast<double>(n);

    state_vector y;
    y.z = profile.init().z;
    y.z_dot = profile.init().z_dot;
    y.z_ddot = profile.init().z_ddot;

    sampled_trajectory out;
    out.t.reserve(n + 1);
    out.states.reserve(n + 1);
    out.x_ddot.reserve(n + 1);
    out.jerk.reserve(n + 1);

    const double k_star = dp.omega0 * dp.omega0;
    const double d_star = 2.0 * dp.delta;
    const double m_star = dp.m_s / dp.m_g;
    const auto push = [&](double t, const state_vector& sv) {
        out.t.push_back(t);
        out.states.push_back(sv);
        out.x_ddot.push_back(-k_star * sv.x - d_star * sv.x_dot - m_star * sv.z_ddot);
        out.jerk.push_back(profile.jerk_at(t));
    };
    push(0.0, y);

    const auto& steps = profile.steps();
    std::size_t next_event = 0;
    double t = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double t_next = i == n ? t_end : static_cast<double>(i) * step;
        // split exactly at jerk discontinuities inside the cell
        while (next_event < steps.size() && steps[next_event].t <= t) ++next_event;
        double a = t;
        std::size_t ev = next_event;
        while (ev < steps.size() && steps[ev].t < t_next) {
            const double b = steps[ev].t;
            if (b > a) y = rk4_step(y, profile.jerk_at(a), b - a, dp);
            a = b;
            ++ev;
        }
        if (t_next > a) y = rk4_step(y, profile.jerk_at(a), t_next - a, dp);
        t = t_next;
        push(t, y);
    }
    return out;
}

brute_force_result brute_force_n4(const system_params& sys, double a_max,
                                  double j_max, double grid_res) {
    if (!(a_max > 0.0) || !(j_max > 0.0) || !(grid_res > 0.0)) {
        throw validation_error("InvalidArgument: a_max, j_max, grid_res must be > 0");
    }
    const derived_params dp = derive_params(sys);
    const double g = grid_res;
    const double t_lo = a_max / j_max;
    const double t_hi = t_lo + std::numbers::pi / dp.omega_d;
    const std::complex<double> pole(dp.delta, dp.omega_d);
    const double m_star = dp.m_s / dp.m_g;

    // (x, x_dot) residuals at t_f are linear images of the oscillatory defect
    // w = sum a_i e^{-delta tau_i} e^{j omega_d tau_i}; reconstruct |w| from
    // the two closed-form residuals and compare against the first-order bound
    // that rounding the continuum optimum onto the grid can produce.
    const std::size_t n_tf =
        static_cast<std::size_t>(std::floor((t_hi - t_lo) / g));
    brute_force_result best;
    std::size_t candidates = 0;

    for (std::size_t i_tf = 0; i_tf <= n_tf; ++i_tf) {
        const double t_f = t_lo + static_cast<double>(i_tf) * g;
        const double dt_abs = (j_max * t_f - a_max) / (2.0 * j_max);
        if (dt_abs <= 0.0) continue;

        const std::complex<double> e_tf = std::exp(pole * t_f);
        // second-order remainder of the cell model below
        const double slack = 2.0 * dp.omega0 * dp.omega0 * g * g *
                             std::exp(dp.delta * t_f);
        bool found = false;
        double found_score = 0.0;
        double found_t2 = 0.0;
        double found_rx = 0.0;
        double found_rxd = 0.0;

        for (std::size_t i2 = 1;; ++i2) {
            const double t2 = static_cast<double>(i2) * g;
            const double t3 = t2 + dt_abs;
            if (t3 >= t_f) break;
            ++candidates;

            const jerk_step steps[4] = {{0.0, j_max},
                                        {t2, -2.0 * j_max},
                                        {t3, 2.0 * j_max},
                                        {t_f, -j_max}};
            const auto ba = base_response(std::span<const jerk_step>(steps), t_f, dp);
            const double rx = std::abs(ba.x + a_max * dp.m_s / (dp.m_g * dp.omega0 * dp.omega0));
            const double rxd = std::abs(ba.x_dot);

            // oscillatory defect of the candidate, recovered from the
            // closed-form residual pair (normalized amplitudes and angles)
            const double w_im = -(dp.omega_d / m_star) * ba.x_ddot;
            const double w_re = (dp.omega0 * dp.omega0 / m_star) * ba.x_dot +
                                (dp.delta / m_star) * ba.x_ddot;
            const double scale = 1.0 / (j_max * std::exp(-dp.delta * t_f));
            const std::complex<double> defect =
                std::conj(std::complex<double>(w_re, w_im) * scale /
                          std::exp(std::complex<double>(0.0, dp.omega_d * t_f)));

            // The cell is feasible when the first-order model admits a zero
            // for some in-cell displacement (u of t2, v of t_f, each within
            // half a grid step); that keeps the smallest feasible t_f within
            // one cell of the continuum optimum.
            const std::complex<double> e_t2 = std::exp(pole * t2);
            const std::complex<double> e_t3 = std::exp(pole * t3);
            const std::complex<double> grad_u = pole * 2.0 * (e_t3 - e_t2);
            const std::complex<double> grad_v = pole * (e_t3 - e_tf);
            const double det = grad_u.real() * grad_v.imag() -
                               grad_u.imag() * grad_v.real();
            double u = 0.0;
            double v = 0.0;
            if (std::abs(det) > 1e-12) {
                u = (-defect.real() * grad_v.imag() + defect.imag() * grad_v.real()) / det;
                v = (-grad_u.real() * defect.imag() + grad_u.imag() * defect.real()) / det;
                u = std::clamp(u, -0.5 * g, 0.5 * g);
                v = std::clamp(v, -0.5 * g, 0.5 * g);
            }
            const double cell_residual =
                std::abs(defect + u * grad_u + v * grad_v);

            if (cell_residual <= slack && (!found || cell_residual < found_score)) {
                found = true;
                found_score = cell_residual;
                found_t2 = t2;
                found_rx = rx;
                found_rxd = rxd;
            }
        }
        if (found) {
            best.t2 = found_t2;
            best.t3 = found_t2 + dt_abs;
            best.t_f = t_f;
            best.residual_x = found_rx;
            best.residual_x_dot = found_rxd;
            best.candidates = candidates;
            return best;
        }
    }
    throw numerical_error("NoFeasible: no grid candidate satisfies the terminal "
                          "conditions at this resolution");
}

}  // namespace jerkseg
