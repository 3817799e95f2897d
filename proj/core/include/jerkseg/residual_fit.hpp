#pragma once

#include <span>

#include <jerkseg/errors.hpp>
#include <jerkseg/system.hpp>

namespace jerkseg {

/// Parameters of a fitted decaying oscillation
/// a0 e^{-delta tau} sin(omega_d tau + phi0), tau = t - t_start.
struct residual_fit_result {
    double a0 = 0.0;       ///< amplitude [m]
    double delta = 0.0;    ///< damping rate [1/s]
    double omega_d = 0.0;  ///< damped frequency [rad/s]
    double phi0 = 0.0;     ///< phase [rad]
    double rms = 0.0;      ///< root-mean-square residual of the fit [m]
    int iterations = 0;
    std::size_t samples = 0;
};

/// Fits the residual oscillation of a (t, x) series for t >= t_start by
/// damped Gauss-Newton, initialized from the plant's modal parameters and a
/// linear amplitude/phase solve.
///
/// Requires at least 8 samples at or after t_start. An identically zero
/// signal returns a0 = 0 with phase 0 by convention. Throws
/// numerical_error("FitDiverged...") when the final RMS exceeds the input
/// amplitude.
residual_fit_result fit_residual(std::span<const double> t,
                                 std::span<const double> x, double t_start,
                                 const derived_params& dp);

}  // namespace jerkseg
