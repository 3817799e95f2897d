#pragma once

#include <complex>
#include <vector>

#include <jerkseg/jerk_profile.hpp>
#include <jerkseg/switching.hpp>
#include <jerkseg/system.hpp>

namespace jerkseg {

/// Maximum of the slider acceleration over [0, t_f]. The terminal value is
/// always attained, but the interior acceleration is unconstrained and can
/// exceed it on part of the parameter range.
struct overshoot_report {
    double max_accel = 0.0;
    double argmax_t = 0.0;
    bool exceeds = false;
};

/// Per-check results of verify_segment.
struct verification_report {
    double residual_x = 0.0;        ///< |x(t_f) + a_max m_s / k| [m]
    double residual_x_dot = 0.0;    ///< |x_dot(t_f)| [m/s]
    double residual_z_ddot = 0.0;   ///< |z_ddot(t_f) - a_max| [m/s^2]
    double closure_residual = 0.0;  ///< |sum a*_i e^{(p1+j) phi_i}|
    double switching_residual = 0.0;  ///< max |switching_fn| at interior switches
    double c1 = 0.0;                ///< offset witnessing the switching law
    double shift = 0.0;             ///< angle shift witnessing the switching law
    bool terminal_ok = false;
    bool switching_law_ok = false;  ///< zeros match and sign pattern is bang-bang
    bool jerk_bound_ok = false;

    bool all_ok() const { return terminal_ok && switching_law_ok && jerk_bound_ok; }
};

/// Which orientation of the line-search update was used (see
/// planner_settings::plan notes): "standard" decreases phi_f on negative
/// error, as printed in the reference pseudocode.
enum class search_orientation { standard, flipped };

/// A planned time-optimal jerk segment: the slider acceleration ramps from 0
/// to a_max while the base ends the motion at rest in its new equilibrium.
struct jerk_segment {
    double a_max = 0.0;
    double j_max = 0.0;
    double t_f = 0.0;
    double phi_f = 0.0;               ///< omega_d * t_f [rad]
    std::vector<double> times;        ///< t_1 = 0 < ... < t_n = t_f
    std::vector<double> coeffs;       ///< normalized step amplitudes (+1, -2, +2, ..., -1)
    switching_structure structure;
    overshoot_report overshoot;

    // line-search diagnostics
    int line_search_evals = 0;
    search_orientation orientation = search_orientation::standard;
    std::vector<double> phi_trace;    ///< phi_f,try after each refinement

    int n() const { return static_cast<int>(times.size()); }

    /// The segment as a jerk step profile with physical amplitudes.
    jerk_profile profile() const;
};

/// Triangle side of the closure condition, 1 - e^{(p1+j) phi_f}; fixed by the
/// terminal angle alone.
std::complex<double> ell_m1(double phi_f, double p1);

/// Interior polygon side expressed in relative angles:
/// -sum a*_i e^{-(p1+j) dphi_i} over the interior coefficients.
std::complex<double> ell_m2_bar(const switching_structure& s, double p1);

/// Places the last interior switch: rotates the polygon to be parallel to the
/// triangle side and picks the largest representative of the matching angle
/// (mod 2 pi) not exceeding phi_f, so the result lies in (phi_f - 2 pi,
/// phi_f]. Throws numerical_error("DegenerateVector...") when either side
/// has magnitude below 1e-14.
double match_angle(double phi_f, const switching_structure& s, double p1);

/// Signed squared-length mismatch of the two matched sides; the line-search
/// objective. Solves the switching structure for phi_f internally. A
/// degenerate polygon (no negative sections) yields |ell_m1|^2.
double length_error(double phi_f, double a_max_star, double p1,
                    structure_mode mode = structure_mode::automatic);

struct planner_settings {
    int n_iter = 48;                ///< number of line-search refinements
    bool single_precision = false;  ///< run the search in float arithmetic
    bool use_table = false;         ///< interpolate structures from a precomputed map
    structure_mode mode = structure_mode::automatic;
    double closure_tol = 1e-8;      ///< |closure sum| accepted for a valid segment
    double terminal_tol = 1e-9;     ///< terminal residuals accepted [SI]
    bool record_trace = true;       ///< store phi_f,try per refinement
};

/// Plans a time-optimal jerk segment by the bounded line search over
/// phi_f in [a*_max, a*_max + pi]:
///
///  - the interval endpoints are probed once to confirm the bracket
///    orientation (positive error on the left, negative on the right);
///    a reversed bracket flips the update rule and is reported,
///  - exactly n_iter error evaluations refine phi_f, halving the step each
///    time,
///  - the final structure is converted to switching times and the
///    coefficient pattern (+1, -2, +2, ..., -1), and an overshoot report is
///    attached.
///
/// Throws planning_error when the error has no sign change over the interval.
jerk_segment plan_segment(const system_params& sys, double a_max, double j_max,
                          const planner_settings& settings = {});

/// Checks a segment against everything the planner promised: terminal
/// residuals by the closed forms, the bang-bang switching law (a C1 and
/// shift exist that put every interior switch on a zero of the switching
/// function with the right sign between switches), and the jerk bound.
verification_report verify_segment(const jerk_segment& seg,
                                   const system_params& sys,
                                   double terminal_tol = 1e-9,
                                   double switching_tol = 1e-8);

/// Maximizes the slider acceleration over [0, t_f]. The acceleration is
/// piecewise linear, so the maximum sits on a switch time or an endpoint.
overshoot_report detect_overshoot(const jerk_segment& seg);

}  // namespace jerkseg
