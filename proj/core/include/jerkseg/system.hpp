#pragma once

#include <jerkseg/errors.hpp>

namespace jerkseg {

/// Physical constants of the two-mass plant: a slider of mass m_s rides on a
/// base of mass m_b that is connected to ground through a spring k and a
/// viscous damper d.
struct system_params {
    double m_s;  ///< slider mass [kg]
    double m_b;  ///< base mass [kg]
    double k;    ///< stiffness [N/m]
    double d;    ///< viscous damping [kg/s]
};

/// Modal quantities derived from system_params. m_s is carried along because
/// the base response scales with the slider/total mass ratio.
struct derived_params {
    double m_s;      ///< slider mass [kg]
    double m_g;      ///< total mass m_s + m_b [kg]
    double delta;    ///< damping rate d / (2 m_g) [1/s]
    double omega0;   ///< undamped angular frequency sqrt(k / m_g) [rad/s]
    double omega_d;  ///< damped angular frequency sqrt(omega0^2 - delta^2) [rad/s]
    double p1;       ///< normalized damping delta / omega_d [-]
};

/// Kinematic bounds of the slider drive.
struct kinematic_limits {
    double v_lim;  ///< [m/s]
    double a_lim;  ///< [m/s^2]
    double j_lim;  ///< [m/s^3]
};

/// Computes the modal quantities of an underdamped plant.
///
/// Throws validation_error("NonPositiveParameter...") when a mass or the
/// stiffness is not strictly positive or the damping is negative, and
/// validation_error("NotUnderdamped...") when d^2 >= 4 k m_g.
derived_params derive_params(const system_params& p);

/// Validates limits (all strictly positive).
void validate_limits(const kinematic_limits& lim);

}  // namespace jerkseg
