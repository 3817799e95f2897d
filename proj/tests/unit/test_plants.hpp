#pragma once

#include <jerkseg/system.hpp>

// Shared plant definitions used across the test suites: the production-scale
// machine and the laboratory rig, with their kinematic limits.
namespace testplants {

inline jerkseg::system_params machine() { return {25.0, 500.0, 15e6, 5e3}; }
inline jerkseg::system_params machine_undamped() { return {25.0, 500.0, 15e6, 0.0}; }
inline jerkseg::system_params machine_low_damping(double fraction) {
    return {25.0, 500.0, 15e6, 5e3 * fraction};
}
inline jerkseg::system_params lab() { return {4.6546, 26.9057, 117499.0, 50.4}; }

inline jerkseg::kinematic_limits machine_limits() { return {1.5, 20.0, 800.0}; }
inline jerkseg::kinematic_limits lab_limits() { return {0.45, 6.0, 200.0}; }

}  // namespace testplants
