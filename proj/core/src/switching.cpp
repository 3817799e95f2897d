#include <jerkseg/switching.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace jerkseg {

namespace {

template <typename Real>
constexpr Real pi_v = std::numbers::pi_v<Real>;

// Dispatch below this damping to the closed-form symmetric structure.
constexpr double zero_damping_threshold = 1e-9;

template <typename Real>
Real theta_of(Real p1) {
    return std::acos(p1 / std::sqrt(p1 * p1 + Real(1)));
}

template <typename Real>
Real max_angle_of(Real p1, int k) {
    return Real(2 * k + 1) * pi_v<Real> - theta_of(p1);
}

// Bisection on a bracket with opposite signs at the ends; runs until the
// midpoint is no longer representable between the ends.
template <typename Real, typename F>
Real bisect_zero(F&& f, Real lo, Real hi) {
    const bool lo_neg = f(lo) < Real(0);
    for (int i = 0; i < 200; ++i) {
        const Real mid = (lo + hi) / Real(2);
        if (mid == lo || mid == hi) break;
        if ((f(mid) < Real(0)) == lo_neg) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / Real(2);
}

template <typename Real>
struct zero_pair_t {
    Real left;
    Real right;
};

template <typename Real>
zero_pair_t<Real> zeros_near_maximum_impl(Real c1, Real p1, int k) {
    if (!(c1 > Real(0))) {
        throw validation_error("InvalidArgument: c1 must be > 0");
    }
    const Real pm = max_angle_of(p1, k);
    const auto lam = [c1, p1](Real phi) {
        return std::exp(p1 * phi) * std::sin(phi) - c1;
    };
    const Real v = lam(pm);
    if (v < Real(0)) {
        throw numerical_error("NoZero: maximum " + std::to_string(k) +
                              " lies below the offset");
    }
    if (v == Real(0)) return {pm, pm};  // tangent: coincident double zero
    const Real margin = Real(1e-12);
    const Real left = bisect_zero<Real>(lam, pm - pi_v<Real> + margin, pm);
    const Real right = bisect_zero<Real>(lam, pm, pm + pi_v<Real> - margin);
    return {left, right};
}

// 2 n_el zeros around the maxima k = 0 .. n_el-1 plus the summed width.
template <typename Real>
struct zero_set {
    Real c1 = Real(0);
    std::vector<Real> zeros;
    Real width = Real(0);
};

// The left zero of the bottom hump parametrizes c1 = e^{p1 phi2} sin(phi2)
// monotonically and, unlike bisecting c1 itself, resolves near-tangent
// widths to machine precision.
template <typename Real>
zero_set<Real> zeros_from_phi2(Real phi2, int n_el, Real p1) {
    zero_set<Real> zs;
    zs.c1 = std::exp(p1 * phi2) * std::sin(phi2);
    const Real pm0 = max_angle_of(p1, 0);
    const auto lam = [&zs, p1](Real phi) {
        return std::exp(p1 * phi) * std::sin(phi) - zs.c1;
    };
    Real left0 = phi2;
    Real right0;
    if (lam(pm0) <= Real(0)) {  // numerically tangent at the bottom maximum
        left0 = pm0;
        right0 = pm0;
    } else {
        right0 = bisect_zero<Real>(lam, pm0, pm0 + pi_v<Real> - Real(1e-12));
    }
    zs.zeros.push_back(left0);
    zs.zeros.push_back(right0);
    zs.width = right0 - left0;
    for (int k = 1; k < n_el; ++k) {
        const auto z = zeros_near_maximum_impl<Real>(zs.c1, p1, k);
        zs.zeros.push_back(z.left);
        zs.zeros.push_back(z.right);
        zs.width += z.right - z.left;
    }
    return zs;
}

// Solves for the zero set whose negative sections total `target`, by
// bisection on the bottom-hump left zero. The width decreases from
// n_el * pi towards the tangent limit as phi2 grows.
template <typename Real>
zero_set<Real> solve_width(Real target, int n_el, Real p1) {
    const Real pm0 = max_angle_of(p1, 0);
    const Real w_floor = zeros_from_phi2(pm0, n_el, p1).width;
    if (target < w_floor) {
        throw numerical_error("NotBracketed: requested width below the tangent limit for " +
                              std::to_string(n_el) + " sections");
    }
    const Real width_tol = Real(500) * std::numeric_limits<Real>::epsilon() *
                           (Real(1) + std::abs(target));
    Real lo = Real(1e-12);
    Real hi = pm0;
    zero_set<Real> zs;
    for (int i = 0; i < 200; ++i) {
        const Real mid = (lo + hi) / Real(2);
        if (mid == lo || mid == hi) break;
        zs = zeros_from_phi2(mid, n_el, p1);
        if (std::abs(zs.width - target) <= width_tol) return zs;
        if (zs.width > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return zeros_from_phi2((lo + hi) / Real(2), n_el, p1);
}

template <typename Real>
basic_switching_structure<Real> structure_from_zeros(const zero_set<Real>& zs,
                                                     int n_el) {
    basic_switching_structure<Real> s;
    s.n_el = n_el;
    s.c1 = zs.c1;
    s.delta_phi_abs = zs.width;
    const Real top = zs.zeros.back();
    s.delta_phi.reserve(zs.zeros.size());
    for (const Real z : zs.zeros) s.delta_phi.push_back(top - z);
    return s;
}

// delta = 0 admits a closed form: every negative section has the same width
// and the sections sit one period apart.
template <typename Real>
basic_switching_structure<Real> zero_damping_structure(Real phi_f, Real target,
                                                       structure_mode mode) {
    const int n_el =
        mode == structure_mode::force_single
            ? 1
            : std::max(1, static_cast<int>(std::ceil(double(phi_f) /
                                                     (2.0 * pi_v<double>))));
    const Real w = target / Real(n_el);
    basic_switching_structure<Real> s;
    s.n_el = n_el;
    s.c1 = std::cos(w / Real(2));
    s.delta_phi_abs = target;
    s.delta_phi.reserve(2 * n_el);
    for (int k = 1; k <= n_el; ++k) {
        const Real base = Real(2) * pi_v<Real> * Real(n_el - k);
        s.delta_phi.push_back(base + w);
        s.delta_phi.push_back(base);
    }
    return s;
}

template <typename Real>
basic_switching_structure<Real> solve_structure_impl(Real phi_f, Real a_max_star,
                                                     Real p1,
                                                     structure_mode mode) {
    if (!(phi_f > Real(0)) || a_max_star < Real(0)) {
        throw validation_error("InvalidArgument: phi_f must be > 0 and a_max_star >= 0");
    }
    const Real target = (phi_f - a_max_star) / Real(2);
    if (target <= Real(0)) {
        if (target < -Real(16) * std::numeric_limits<Real>::epsilon() *
                          (Real(1) + a_max_star)) {
            throw numerical_error("OutOfRange: phi_f below a_max_star");
        }
        return basic_switching_structure<Real>{};  // degenerate, no negative section
    }
    if (!(target < pi_v<Real> / Real(2))) {
        throw numerical_error("OutOfRange: negative width must stay below pi/2");
    }

    if (p1 < Real(zero_damping_threshold)) {
        return zero_damping_structure<Real>(phi_f, target, mode);
    }

    // A window shorter than one period admits exactly one negative section.
    if (mode == structure_mode::force_single || phi_f <= Real(2) * pi_v<Real>) {
        return structure_from_zeros(solve_width(target, 1, p1), 1);
    }

    // Largest section count whose earliest relative angle still fits in the
    // window. Widths spread one period apart, so the count is bounded.
    const int cap = static_cast<int>(double(phi_f) / (2.0 * pi_v<double>)) + 2;
    basic_switching_structure<Real> best;
    bool have = false;
    for (int n_hat = 1; n_hat <= cap; ++n_hat) {
        zero_set<Real> zs;
        try {
            zs = solve_width(target, n_hat, p1);
        } catch (const numerical_error&) {
            break;  // width no longer bracketable with this many sections
        }
        const Real spread = zs.zeros.back() - zs.zeros.front();
        if (spread < phi_f) {
            best = structure_from_zeros(zs, n_hat);
            have = true;
        } else {
            break;
        }
    }
    if (!have) {
        throw numerical_error("NotBracketed: no section count admits the required width");
    }
    return best;
}

}  // namespace

template <typename Real>
Real switching_fn(Real phi, Real c1, Real p1) {
    return std::exp(p1 * phi) * std::sin(phi) - c1;
}

double maxima_phase_offset(double p1) {
    if (!(p1 >= 0.0)) throw validation_error("InvalidArgument: p1 must be >= 0");
    return theta_of(p1);
}

std::vector<double> maxima_angles(double p1, int k_first, int k_last) {
    if (!(p1 >= 0.0)) throw validation_error("InvalidArgument: p1 must be >= 0");
    std::vector<double> out;
    for (int k = k_first; k <= k_last; ++k) out.push_back(max_angle_of(p1, k));
    return out;
}

zero_pair zeros_near_maximum(double c1, double p1, int k) {
    const auto z = zeros_near_maximum_impl<double>(c1, p1, k);
    return {z.left, z.right};
}

switching_structure relative_angles_general(double c1, int n_el, double p1) {
    if (n_el < 1) throw validation_error("InvalidArgument: n_el must be >= 1");
    zero_set<double> zs;
    zs.c1 = c1;
    for (int k = 0; k < n_el; ++k) {
        const auto z = zeros_near_maximum_impl<double>(c1, p1, k);
        zs.zeros.push_back(z.left);
        zs.zeros.push_back(z.right);
        zs.width += z.right - z.left;
    }
    return structure_from_zeros(zs, n_el);
}

int count_segments(double c1, double phi_f, double p1) {
    if (!(c1 > 0.0) || !(phi_f > 0.0)) {
        throw validation_error("InvalidArgument: c1 and phi_f must be > 0");
    }
    // Smallest anchored maximum clearing the offset; all higher ones clear
    // too since the envelope grows.
    const double theta = theta_of(p1);
    const double m0 = switching_fn(max_angle_of(p1, 0), 0.0, p1);
    int k0 = 0;
    if (c1 > m0) {
        if (p1 == 0.0) {
            throw numerical_error("NoZero: no maximum clears the offset");
        }
        const double sin_theta = std::sin(theta);
        const double phi_req = std::log(c1 / sin_theta) / p1;
        k0 = static_cast<int>(std::ceil((phi_req + theta) / (2.0 * std::numbers::pi) - 0.5));
        if (k0 > 1'000'000) {
            throw numerical_error("NoZero: offset clears no reachable maximum");
        }
    }

    int best = 0;
    for (int n_hat = 1;; ++n_hat) {
        const auto low = zeros_near_maximum_impl<double>(c1, p1, k0);
        const auto high =
            zeros_near_maximum_impl<double>(c1, p1, k0 + n_hat - 1);
        if (high.right - low.left < phi_f) {
            best = n_hat;
        } else {
            break;
        }
        if (n_hat > 1000) break;
    }
    if (best == 0) {
        throw numerical_error("NoZero: even a single section does not fit the window");
    }
    return best;
}

double total_negative_width(double c1, int n_el, double p1) {
    if (n_el < 1) throw validation_error("InvalidArgument: n_el must be >= 1");
    double w = 0.0;
    for (int k = 0; k < n_el; ++k) {
        const auto z = zeros_near_maximum_impl<double>(c1, p1, k);
        w += z.right - z.left;
    }
    return w;
}

double delta_phi_abs(double phi_f, double a_max_star) {
    if (phi_f < a_max_star) {
        throw numerical_error("OutOfRange: phi_f below a_max_star");
    }
    const double w = (phi_f - a_max_star) / 2.0;
    if (!(w < std::numbers::pi / 2.0)) {
        throw numerical_error("OutOfRange: negative width must stay below pi/2");
    }
    return w;
}

template <typename Real>
basic_switching_structure<Real> solve_structure(Real phi_f, Real a_max_star,
                                                Real p1, structure_mode mode) {
    return solve_structure_impl<Real>(phi_f, a_max_star, p1, mode);
}

switching_table::switching_table(double a_max_star, double p1, int n_points,
                                 structure_mode mode)
    : a_star_(a_max_star), p1_(p1), mode_(mode) {
    if (n_points < 2) throw validation_error("InvalidArgument: n_points must be >= 2");
    phi_.resize(n_points);
    nodes_.resize(n_points);
    // keep the top node inside the open upper bound of the width constraint
    const double span = std::numbers::pi * (1.0 - 1e-9);
    const double h = span / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        phi_[i] = a_max_star + i * h;
        nodes_[i] = solve_structure<double>(phi_[i], a_max_star, p1, mode);
    }
}

switching_structure switching_table::query(double phi_f) const {
    const double h = phi_[1] - phi_[0];
    const double pos = (phi_f - a_star_) / h;
    const int i = std::clamp(static_cast<int>(pos), 0,
                             static_cast<int>(phi_.size()) - 2);
    const auto& a = nodes_[i];
    const auto& b = nodes_[i + 1];
    if (a.n_el != b.n_el || a.n_el == 0) {
        return solve_structure<double>(phi_f, a_star_, p1_, mode_);
    }
    const double alpha = (phi_f - phi_[i]) / h;
    switching_structure out;
    out.n_el = a.n_el;
    out.c1 = (1.0 - alpha) * a.c1 + alpha * b.c1;
    out.delta_phi_abs = (1.0 - alpha) * a.delta_phi_abs + alpha * b.delta_phi_abs;
    out.delta_phi.resize(a.delta_phi.size());
    for (std::size_t j = 0; j < a.delta_phi.size(); ++j) {
        out.delta_phi[j] = (1.0 - alpha) * a.delta_phi[j] + alpha * b.delta_phi[j];
    }
    return out;
}

template double switching_fn<double>(double, double, double);
template float switching_fn<float>(float, float, float);
template basic_switching_structure<double> solve_structure<double>(
    double, double, double, structure_mode);
template basic_switching_structure<float> solve_structure<float>(
    float, float, float, structure_mode);

}  // namespace jerkseg
