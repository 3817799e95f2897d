#include <jerkseg/planner.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

namespace jerkseg {

namespace {

template <typename Real>
constexpr Real pi_v = std::numbers::pi_v<Real>;

// Interior step coefficients alternate -2, +2, ... starting negative; the
// first and last steps carry +1 and -1. Segments start and terminate with
// positive jerk.
double interior_coeff(std::size_t j) { return (j % 2 == 0) ? -2.0 : 2.0; }

std::vector<double> coefficient_pattern(int n) {
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(n));
    c.push_back(1.0);
    for (int j = 0; j < n - 2; ++j) c.push_back(interior_coeff(static_cast<std::size_t>(j)));
    c.push_back(-1.0);
    return c;
}

template <typename Real>
std::complex<Real> ell_m1_impl(Real phi_f, Real p1) {
    return Real(1) - std::exp(std::complex<Real>(p1, Real(1)) * phi_f);
}

template <typename Real>
std::complex<Real> ell_m2_bar_impl(const basic_switching_structure<Real>& s,
                                   Real p1) {
    std::complex<Real> sum{Real(0), Real(0)};
    for (std::size_t j = 0; j < s.delta_phi.size(); ++j) {
        const Real c = Real(interior_coeff(j));
        sum += c * std::exp(-std::complex<Real>(p1, Real(1)) * s.delta_phi[j]);
    }
    return -sum;
}

// Largest representative of psi_bar modulo 2 pi that does not exceed phi_f.
template <typename Real>
Real wrap_below(Real psi_bar, Real phi_f) {
    return psi_bar +
           Real(2) * pi_v<Real> *
               std::floor((phi_f - psi_bar) / (Real(2) * pi_v<Real>));
}

template <typename Real>
struct error_eval {
    Real error = Real(0);
    Real psi = Real(0);  // absolute angle of the last interior switch
    basic_switching_structure<Real> structure;
};

template <typename Real>
error_eval<Real> evaluate_error(Real phi_f, Real a_max_star, Real p1,
                                structure_mode mode,
                                const switching_table* table) {
    error_eval<Real> ev;
    if (table != nullptr) {
        if constexpr (std::is_same_v<Real, double>) {
            ev.structure = table->query(phi_f);
        } else {
            ev.structure = solve_structure<Real>(phi_f, a_max_star, p1, mode);
        }
    } else {
        ev.structure = solve_structure<Real>(phi_f, a_max_star, p1, mode);
    }
    const std::complex<Real> l1 = ell_m1_impl(phi_f, p1);
    if (ev.structure.n_el == 0) {
        ev.error = std::norm(l1);
        ev.psi = phi_f;
        return ev;
    }
    const std::complex<Real> l2b = ell_m2_bar_impl(ev.structure, p1);
    if (std::abs(l2b) < Real(1e-14)) {
        // Collapsed polygon: the limit of the length mismatch is |l1|^2.
        ev.error = std::norm(l1);
        ev.psi = phi_f;
        return ev;
    }
    ev.psi = wrap_below(std::arg(l1) - std::arg(l2b), phi_f);
    const Real scale = std::exp(p1 * ev.psi);
    ev.error = std::norm(l1) - scale * scale * std::norm(l2b);
    return ev;
}

template <typename Real>
struct search_result {
    Real phi_f = Real(0);
    int evals = 0;
    search_orientation orientation = search_orientation::standard;
    std::vector<double> trace;
};

// Bounded line search over [a*, a* + pi]. The bracket orientation is probed
// once at the (slightly inset) interval ends; "standard" means the error is
// positive on the left and negative on the right, in which case a negative
// error moves phi_f down, exactly as in the printed update rule.
template <typename Real>
search_result<Real> line_search(Real a_max_star, Real p1, int n_iter,
                                structure_mode mode,
                                const switching_table* table,
                                bool record_trace) {
    const Real span = pi_v<Real>;
    const Real inset = span * Real(1000) * std::numeric_limits<Real>::epsilon();
    const Real e_left =
        evaluate_error<Real>(a_max_star + inset, a_max_star, p1, mode, table).error;
    const Real e_right =
        evaluate_error<Real>(a_max_star + span - inset, a_max_star, p1, mode, table)
            .error;

    search_result<Real> res;
    if (e_left >= Real(0) && e_right < Real(0)) {
        res.orientation = search_orientation::standard;
    } else if (e_left < Real(0) && e_right >= Real(0)) {
        res.orientation = search_orientation::flipped;
    } else {
        throw planning_error(
            "PlanningFailed: length error has no sign change over the search "
            "interval (non-generic parameter regime)");
    }
    const bool flip = res.orientation == search_orientation::flipped;

    Real phi = a_max_star + span / Real(2);
    if (record_trace) {
        res.trace.reserve(static_cast<std::size_t>(n_iter) + 1);
        res.trace.push_back(double(phi));
    }
    for (int k = 1; k <= n_iter; ++k) {
        const Real err =
            evaluate_error<Real>(phi, a_max_star, p1, mode, table).error;
        ++res.evals;
        const Real step = std::ldexp(span, -(k + 1));
        const bool decrease = flip ? !(err < Real(0)) : (err < Real(0));
        phi = decrease ? phi - step : phi + step;
        if (record_trace) res.trace.push_back(double(phi));
    }
    res.phi_f = phi;
    return res;
}

}  // namespace

std::complex<double> ell_m1(double phi_f, double p1) {
    return ell_m1_impl<double>(phi_f, p1);
}

std::complex<double> ell_m2_bar(const switching_structure& s, double p1) {
    return ell_m2_bar_impl<double>(s, p1);
}

double match_angle(double phi_f, const switching_structure& s, double p1) {
    const auto l1 = ell_m1_impl<double>(phi_f, p1);
    const auto l2b = ell_m2_bar_impl<double>(s, p1);
    if (std::abs(l1) < 1e-14 || std::abs(l2b) < 1e-14) {
        throw numerical_error("DegenerateVector: polygon side magnitude below 1e-14");
    }
    return wrap_below(std::arg(l1) - std::arg(l2b), phi_f);
}

double length_error(double phi_f, double a_max_star, double p1,
                    structure_mode mode) {
    return evaluate_error<double>(phi_f, a_max_star, p1, mode, nullptr).error;
}

jerk_profile jerk_segment::profile() const {
    std::vector<jerk_step> steps;
    steps.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        steps.push_back({times[i], coeffs[i] * j_max});
    }
    return jerk_profile(std::move(steps));
}

jerk_segment plan_segment(const system_params& sys, double a_max, double j_max,
                          const planner_settings& settings) {
    if (!(a_max > 0.0) || !(j_max > 0.0)) {
        throw validation_error("InvalidArgument: a_max and j_max must be > 0");
    }
    if (settings.n_iter < 1) {
        throw validation_error("InvalidArgument: n_iter must be >= 1");
    }
    const derived_params dp = derive_params(sys);
    const double a_star = dp.omega_d * a_max / j_max;

    std::optional<switching_table> table;
    if (settings.use_table && !settings.single_precision) {
        table.emplace(a_star, dp.p1, 64, settings.mode);
    }
    const switching_table* table_ptr = table ? &*table : nullptr;

    jerk_segment seg;
    seg.a_max = a_max;
    seg.j_max = j_max;

    if (settings.single_precision) {
        const auto res = line_search<float>(
            static_cast<float>(a_star), static_cast<float>(dp.p1),
            settings.n_iter, settings.mode, nullptr, settings.record_trace);
        seg.phi_f = double(res.phi_f);
        seg.line_search_evals = res.evals;
        seg.orientation = res.orientation;
        seg.phi_trace = res.trace;
    } else {
        const auto res =
            line_search<double>(a_star, dp.p1, settings.n_iter, settings.mode,
                                table_ptr, settings.record_trace);
        seg.phi_f = res.phi_f;
        seg.line_search_evals = res.evals;
        seg.orientation = res.orientation;
        seg.phi_trace = res.trace;
    }

    // Assemble switching times at the final refinement in double precision.
    seg.phi_f = std::max(seg.phi_f, a_star);
    seg.t_f = seg.phi_f / dp.omega_d;
    seg.structure =
        solve_structure<double>(seg.phi_f, a_star, dp.p1, settings.mode);

    if (seg.structure.n_el == 0) {
        seg.times = {0.0, seg.t_f};
    } else {
        const double psi = match_angle(seg.phi_f, seg.structure, dp.p1);
        seg.times.reserve(seg.structure.delta_phi.size() + 2);
        seg.times.push_back(0.0);
        for (const double dphi : seg.structure.delta_phi) {
            seg.times.push_back((psi - dphi) / dp.omega_d);
        }
        seg.times.push_back(seg.t_f);
        for (std::size_t i = 1; i < seg.times.size(); ++i) {
            if (!(seg.times[i] > seg.times[i - 1])) {
                throw planning_error(
                    "PlanningFailed: assembled switching times are not "
                    "strictly increasing");
            }
        }
    }
    seg.coeffs = coefficient_pattern(seg.n());
    seg.overshoot = detect_overshoot(seg);
    return seg;
}

verification_report verify_segment(const jerk_segment& seg,
                                   const system_params& sys,
                                   double terminal_tol, double switching_tol) {
    const derived_params dp = derive_params(sys);
    const jerk_profile prof = seg.profile();
    verification_report rep;

    const auto sl = slider_response(prof, seg.t_f);
    const auto ba = base_response(prof, seg.t_f, dp);
    rep.residual_x = std::abs(ba.x + seg.a_max * dp.m_s / (dp.m_g * dp.omega0 * dp.omega0));
    rep.residual_x_dot = std::abs(ba.x_dot);
    rep.residual_z_ddot = std::abs(sl.z_ddot - seg.a_max);
    rep.terminal_ok = rep.residual_x < terminal_tol &&
                      rep.residual_x_dot < terminal_tol &&
                      rep.residual_z_ddot < terminal_tol;

    std::complex<double> closure{0.0, 0.0};
    for (std::size_t i = 0; i < seg.times.size(); ++i) {
        closure += seg.coeffs[i] *
                   std::exp(std::complex<double>(dp.p1, 1.0) * dp.omega_d *
                            seg.times[i]);
    }
    rep.closure_residual = std::abs(closure);

    if (seg.structure.n_el == 0) {
        // No interior switches: the switching law is trivially satisfied.
        rep.switching_law_ok = seg.n() == 2;
        rep.c1 = 0.0;
        rep.shift = 0.0;
    } else {
        // Reconstruct the shift that places the last interior switch on the
        // anchored top zero, then demand every interior switch be a zero and
        // the jerk sign oppose the switching function between switches.
        rep.c1 = seg.structure.c1;
        const auto top =
            zeros_near_maximum(rep.c1, dp.p1, seg.structure.n_el - 1);
        const double phi_last = dp.omega_d * seg.times[seg.times.size() - 2];
        rep.shift = top.right - phi_last;

        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < seg.times.size(); ++i) {
            const double phi = dp.omega_d * seg.times[i] + rep.shift;
            worst = std::max(worst, std::abs(switching_fn(phi, rep.c1, dp.p1)));
        }
        rep.switching_residual = worst;

        bool signs_ok = true;
        double running = 0.0;
        for (std::size_t i = 0; i + 1 < seg.times.size() && signs_ok; ++i) {
            running += seg.coeffs[i] * seg.j_max;
            for (int q = 1; q <= 7 && signs_ok; ++q) {
                const double t = seg.times[i] + (seg.times[i + 1] - seg.times[i]) *
                                                    q / 8.0;
                const double lam =
                    switching_fn(dp.omega_d * t + rep.shift, rep.c1, dp.p1);
                // positive jerk requires lambda < 0, negative jerk lambda > 0
                if (running > 0.0 ? lam >= 0.0 : lam <= 0.0) signs_ok = false;
            }
        }
        rep.switching_law_ok =
            rep.c1 > 0.0 && worst < switching_tol && signs_ok;
    }

    rep.jerk_bound_ok = prof.within_jerk_limit(seg.j_max, seg.j_max * 1e-12);
    return rep;
}

overshoot_report detect_overshoot(const jerk_segment& seg) {
    const jerk_profile prof = seg.profile();
    overshoot_report rep;
    rep.max_accel = 0.0;
    rep.argmax_t = 0.0;
    // z_ddot is piecewise linear between switch times, so the maximum sits on
    // a vertex.
    for (const double t : seg.times) {
        const double acc = slider_response(prof, t).z_ddot;
        if (acc > rep.max_accel) {
            rep.max_accel = acc;
            rep.argmax_t = t;
        }
    }
    rep.exceeds = rep.max_accel > seg.a_max * (1.0 + 1e-12);
    return rep;
}

}  // namespace jerkseg
