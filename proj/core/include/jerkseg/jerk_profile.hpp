#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <jerkseg/errors.hpp>
#include <jerkseg/system.hpp>

namespace jerkseg {

/// A single step of the piecewise-constant jerk input: at time t the jerk
/// value jumps by `amplitude`.
struct jerk_step {
    double t;          ///< step time [s]
    double amplitude;  ///< jerk increment [m/s^3]
};

/// Initial slider state. Base initial conditions are always zero; profiles
/// with a nonzero initial slider acceleration cannot be fed to the base
/// response, which assumes a quiescent base.
struct slider_init {
    double z = 0.0;
    double z_dot = 0.0;
    double z_ddot = 0.0;
};

/// Piecewise-constant jerk input expressed as a sum of Heaviside steps,
/// the common representation for every motion primitive in this library.
///
/// Step times are strictly increasing with t1 >= 0. The step at its own
/// time is already active (H(0) = 1, continuous from the right).
class jerk_profile {
  public:
    jerk_profile() = default;
    explicit jerk_profile(std::vector<jerk_step> steps, slider_init init = {});

    const std::vector<jerk_step>& steps() const { return steps_; }
    const slider_init& init() const { return init_; }
    bool empty() const { return steps_.empty(); }
    std::size_t size() const { return steps_.size(); }

    /// Time of the last step (0 for an empty profile).
    double end_time() const { return steps_.empty() ? 0.0 : steps_.back().t; }

    /// Running jerk value sum_{t_i <= t} a_i.
    double jerk_at(double t) const;

    /// Sum of all step amplitudes; zero for a "closed" profile, which leaves
    /// the jerk at zero after the last step.
    double amplitude_sum() const;

    /// Largest |running jerk| over all intervals.
    double max_abs_jerk() const;

    /// True when the running jerk never exceeds `j_lim` in magnitude.
    bool within_jerk_limit(double j_lim, double tol = 0.0) const;

  private:
    std::vector<jerk_step> steps_;
    slider_init init_;
};

struct slider_state {
    double z;
    double z_dot;
    double z_ddot;
};

struct base_state {
    double x;
    double x_dot;
    double x_ddot;
    double x_dddot;
};

/// Closed-form slider response to the step profile at time t >= 0: each step
/// contributes a cubic in (t - t_i), gated by the Heaviside function.
slider_state slider_response(const jerk_profile& profile, double t);

/// Closed-form base response: a damped sinusoid per jerk step plus secular
/// terms, all gated by the Heaviside function. Zero base initial conditions
/// are assumed; a profile with nonzero initial slider acceleration is
/// rejected because it would drive the base outside this solution family.
base_state base_response(const jerk_profile& profile, double t,
                         const derived_params& dp);

/// Same response for a bare step sequence (zero initial conditions).
base_state base_response(std::span<const jerk_step> steps, double t,
                         const derived_params& dp);

/// Plant state used by the state-space form: [x, x_dot, z, z_dot, z_ddot].
struct state_vector {
    double x = 0.0;
    double x_dot = 0.0;
    double z = 0.0;
    double z_dot = 0.0;
    double z_ddot = 0.0;
};

/// Right-hand side of the state-space model with jerk input u:
///   x_ddot = -k* x - d* x_dot - m* z_ddot,  z^(3) = u
/// with k* = k/m_g, d* = d/m_g and m* = m_s/m_g.
state_vector state_derivative(const state_vector& s, double u,
                              const derived_params& dp);

/// Uniformly sampled trajectory of both bodies plus the jerk input.
struct sampled_trajectory {
    std::vector<double> t;
    std::vector<state_vector> states;
    std::vector<double> x_ddot;
    std::vector<double> jerk;

    std::size_t rows() const { return t.size(); }
};

inline constexpr std::size_t default_grid_cap = std::size_t{1} << 24;

/// Evaluates the closed-form responses on a uniform grid over [0, t_end].
/// The step is adjusted to the nearest value that divides t_end evenly so the
/// grid contains both endpoints. Throws numerical_error("GridTooLarge...")
/// when the row count would exceed `cap`.
sampled_trajectory sample_trajectory(const jerk_profile& profile, double dt,
                                     double t_end, const derived_params& dp,
                                     std::size_t cap = default_grid_cap);

}  // namespace jerkseg
