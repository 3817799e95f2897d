#include <jerkseg/residual_fit.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace jerkseg {

residual_fit_result fit_residual(std::span<const double> t,
                                 std::span<const double> x, double t_start,
                                 const derived_params& dp) {
    if (t.size() != x.size()) {
        throw validation_error("InvalidArgument: t and x must have equal length");
    }
    std::vector<double> tau;
    std::vector<double> xs;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= t_start) {
            tau.push_back(t[i] - t_start);
            xs.push_back(x[i]);
        }
    }
    const std::size_t n = tau.size();
    if (n < 8) {
        throw validation_error("InvalidArgument: need at least 8 samples at or after t_start");
    }

    residual_fit_result res;
    res.samples = n;

    double amp_in = 0.0;
    for (const double v : xs) amp_in = std::max(amp_in, std::abs(v));
    if (amp_in == 0.0) {
        // zero signal: amplitude zero, phase unconstrained, reported as 0
        res.delta = dp.delta;
        res.omega_d = dp.omega_d;
        return res;
    }

    // Linear init for amplitude and phase at the plant's modal parameters.
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::exp(-dp.delta * tau[i]);
        const double f1 = e * std::sin(dp.omega_d * tau[i]);
        const double f2 = e * std::cos(dp.omega_d * tau[i]);
        s11 += f1 * f1;
        s12 += f1 * f2;
        s22 += f2 * f2;
        b1 += f1 * xs[i];
        b2 += f2 * xs[i];
    }
    const double det = s11 * s22 - s12 * s12;
    double c1 = 0.0, c2 = 0.0;
    if (std::abs(det) > 1e-300) {
        c1 = (b1 * s22 - b2 * s12) / det;
        c2 = (b2 * s11 - b1 * s12) / det;
    }
    Eigen::Vector4d th(std::hypot(c1, c2), dp.delta, dp.omega_d,
                       std::atan2(c2, c1));

    const auto residuals = [&](const Eigen::Vector4d& p, Eigen::VectorXd& r) {
        for (std::size_t i = 0; i < n; ++i) {
            r(static_cast<Eigen::Index>(i)) =
                p(0) * std::exp(-p(1) * tau[i]) * std::sin(p(2) * tau[i] + p(3)) -
                xs[i];
        }
    };

    Eigen::VectorXd r(n);
    Eigen::VectorXd r_try(n);
    Eigen::MatrixXd jac(n, 4);
    residuals(th, r);
    double cost = r.squaredNorm();
    double lambda = 1e-10;
    int iter = 0;

    // Gauss-Newton with Levenberg damping.
    for (; iter < 200; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            const double e = std::exp(-th(1) * tau[i]);
            const double arg = th(2) * tau[i] + th(3);
            const double s = std::sin(arg);
            const double c = std::cos(arg);
            const auto row = static_cast<Eigen::Index>(i);
            jac(row, 0) = e * s;
            jac(row, 1) = -th(0) * tau[i] * e * s;
            jac(row, 2) = th(0) * tau[i] * e * c;
            jac(row, 3) = th(0) * e * c;
        }
        const Eigen::Matrix4d h =
            jac.transpose() * jac + lambda * Eigen::Matrix4d::Identity();
        const Eigen::Vector4d step = h.ldlt().solve(-jac.transpose() * r);
        if (!step.allFinite()) break;
        const Eigen::Vector4d th_try = th + step;
        residuals(th_try, r_try);
        const double cost_try = r_try.squaredNorm();
        if (cost_try <= cost) {
            th = th_try;
            r.swap(r_try);
            cost = cost_try;
            lambda = std::max(lambda * 0.3, 1e-14);
        } else {
            lambda *= 10.0;
            if (lambda > 1e8) break;
        }
        if (step.norm() < 1e-12 * (1.0 + th.norm())) break;
    }

    // canonical form: positive amplitude
    if (th(0) < 0.0) {
        th(0) = -th(0);
        th(3) += std::numbers::pi;
    }
    res.a0 = th(0);
    res.delta = th(1);
    res.omega_d = th(2);
    res.phi0 = th(3);
    res.rms = std::sqrt(cost / static_cast<double>(n));
    res.iterations = iter;

    if (res.rms > amp_in) {
        throw numerical_error("FitDiverged: fit residual exceeds the input amplitude");
    }
    return res;
}

}  // namespace jerkseg
