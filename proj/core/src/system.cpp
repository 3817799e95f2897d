#include <jerkseg/system.hpp>

#include <cmath>
#include <string>

namespace jerkseg {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw validation_error(std::string("NonPositiveParameter: ") + name +
                               " must be strictly positive and finite");
    }
}

}  // namespace

derived_params derive_params(const system_params& p) {
    require_positive(p.m_s, "m_s");
    require_positive(p.m_b, "m_b");
    require_positive(p.k, "k");
    if (!(p.d >= 0.0) || !std::isfinite(p.d)) {
        throw validation_error("NonPositiveParameter: d must be non-negative and finite");
    }

    const double m_g = p.m_s + p.m_b;
    if (!(p.d * p.d < 4.0 * p.k * m_g)) {
        throw validation_error("NotUnderdamped: d^2 >= 4 k m_g");
    }

    derived_params dp;
    dp.m_s = p.m_s;
    dp.m_g = m_g;
    dp.delta = p.d / (2.0 * m_g);
    dp.omega0 = std::sqrt(p.k / m_g);
    dp.omega_d = std::sqrt(dp.omega0 * dp.omega0 - dp.delta * dp.delta);
    dp.p1 = dp.delta / dp.omega_d;
    return dp;
}

void validate_limits(const kinematic_limits& lim) {
    require_positive(lim.v_lim, "v_lim");
    require_positive(lim.a_lim, "a_lim");
    require_positive(lim.j_lim, "j_lim");
}

}  // namespace jerkseg
