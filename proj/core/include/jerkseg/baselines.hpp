#pragma once

#include <jerkseg/jerk_profile.hpp>
#include <jerkseg/system.hpp>

namespace jerkseg {

/// Plain jerk-limited ramp to a_max: +j_max for a_max/j_max seconds. Fastest
/// possible transition, but it ignores the base oscillation entirely.
jerk_profile scurve_segment(double a_max, double j_max);

/// S-curve ramp convolved with a two-impulse zero-vibration shaper
/// (weights 1/(1+K) and K/(1+K) with K = e^{-delta pi / omega_d}, second
/// impulse delayed by half the damped period). Reaches a_max with the base
/// at rest at a_max/j_max + pi/omega_d, the feasible upper bound for the
/// planner's terminal time.
jerk_profile zv_segment(const derived_params& dp, double a_max, double j_max);

/// Terminal time of the zv baseline.
double zv_terminal_time(const derived_params& dp, double a_max, double j_max);

/// Starting jerk limit for a plant without prior operating experience:
/// a_max * omega_d / (2 pi), i.e. reach a_max within one oscillation period.
double default_jerk_limit(double a_max, double omega_d);

}  // namespace jerkseg
