#pragma once

#include <vector>

#include <jerkseg/errors.hpp>

namespace jerkseg {

/// Relative switching structure for a candidate terminal angle: the number of
/// negative-jerk sections, the switching-function offset C1 that produces
/// them, and the switching angles relative to the last interior switch.
///
/// delta_phi holds one entry per interior switch (2 n_el entries), measured
/// backwards from the last one, so it is non-increasing ... 0. The total
/// width of all negative sections is delta_phi_abs.
///
/// n_el == 0 marks the degenerate structure without negative sections
/// (terminal angle equal to the normalized acceleration).
template <typename Real>
struct basic_switching_structure {
    int n_el = 0;
    Real c1 = Real(0);
    std::vector<Real> delta_phi;
    Real delta_phi_abs = Real(0);

    /// Total number of jerk steps of the corresponding profile.
    int n() const { return n_el == 0 ? 2 : 2 * n_el + 2; }
};

using switching_structure = basic_switching_structure<double>;

/// Normalized switching function e^{p1 phi} sin(phi) - c1. Its zeros on the
/// relevant interval are the interior switching angles.
template <typename Real>
Real switching_fn(Real phi, Real c1, Real p1);

/// Phase offset Theta = arccos(p1 / sqrt(p1^2 + 1)) that locates the maxima
/// of e^{p1 phi} sin(phi).
double maxima_phase_offset(double p1);

/// Angles of the local maxima of e^{p1 phi} sin(phi):
/// phi_{m,k} = (2k + 1) pi - Theta for k in [k_first, k_last].
std::vector<double> maxima_angles(double p1, int k_first, int k_last);

struct zero_pair {
    double left;
    double right;
};

/// The two zeros of the switching function bracketing the k-th maximum,
/// found by bisection on the monotone flanks. Throws
/// numerical_error("NoZero...") when the maximum lies below c1; a tangent
/// maximum yields a coincident pair.
zero_pair zeros_near_maximum(double c1, double p1, int k);

/// Relative switching angles for a prescribed section count, anchored at the
/// maxima k = 0 .. n_el-1. Requires all n_el maxima to clear c1.
switching_structure relative_angles_general(double c1, int n_el, double p1);

/// Largest section count n_hat whose earliest relative switching angle still
/// fits inside [-phi_f, 0] for the given offset. Throws
/// numerical_error("NoZero...") when no maximum clears c1.
int count_segments(double c1, double phi_f, double p1);

/// Sum of the widths of all negative sections for the given offset;
/// strictly decreasing in c1 for a fixed section count.
double total_negative_width(double c1, int n_el, double p1);

/// Required total negative width (phi_f - a_max_star) / 2. Throws
/// numerical_error("OutOfRange...") outside [0, pi/2).
double delta_phi_abs(double phi_f, double a_max_star);

/// How solve_structure chooses the section count.
enum class structure_mode {
    automatic,     ///< as many sections as the window admits
    force_single,  ///< always one negative section
};

/// Solves for the switching structure of a candidate terminal angle phi_f:
/// finds C1 such that the negative sections total (phi_f - a_max_star)/2.
///
/// Dispatches to the closed-form symmetric solution when p1 is numerically
/// zero (p1 < 1e-9) and to a single-section shortcut when the window is
/// shorter than one oscillation period. Throws
/// numerical_error("NotBracketed...") when no C1 achieves the required
/// width.
template <typename Real>
basic_switching_structure<Real> solve_structure(
    Real phi_f, Real a_max_star, Real p1,
    structure_mode mode = structure_mode::automatic);

/// Opt-in precomputed structure map over phi_f in [a_max_star, a_max_star+pi]
/// with linear interpolation between nodes. Queries falling between nodes of
/// unequal section count fall back to exact solving.
class switching_table {
  public:
    switching_table(double a_max_star, double p1, int n_points = 64,
                    structure_mode mode = structure_mode::automatic);

    switching_structure query(double phi_f) const;

    double a_max_star() const { return a_star_; }

  private:
    double a_star_;
    double p1_;
    structure_mode mode_;
    std::vector<double> phi_;
    std::vector<switching_structure> nodes_;
};

extern template double switching_fn<double>(double, double, double);
extern template float switching_fn<float>(float, float, float);
extern template basic_switching_structure<double> solve_structure<double>(
    double, double, double, structure_mode);
extern template basic_switching_structure<float> solve_structure<float>(
    float, float, float, structure_mode);

}  // namespace jerkseg
