#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include <jerkseg/oracle.hpp>
#include <jerkseg/planner.hpp>

#include "test_plants.hpp"

using namespace jerkseg;

namespace {
constexpr double pi = std::numbers::pi;

jerk_segment plan_machine(double a_max, planner_settings st = {}) {
    return plan_segment(testplants::machine(), a_max, 800.0, st);
}
}  // namespace

TEST_CASE("ell_m1 values") {
    CHECK(std::abs(ell_m1(2.0 * pi, 0.0)) < 1e-14);
    CHECK(ell_m1(pi, 0.0).real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(ell_m1(pi, 0.0).imag()) < 1e-14);
}

TEST_CASE("ell_m2_bar on hand-built structures") {
    switching_structure s;
    s.n_el = 1;
    SUBCASE("coincident switches cancel") {
        s.delta_phi = {0.0, 0.0};
        CHECK(std::abs(ell_m2_bar(s, 0.0)) < 1e-15);
    }
    SUBCASE("half-period section") {
        s.delta_phi = {pi, 0.0};
        const auto v = ell_m2_bar(s, 0.0);
        CHECK(v.real() == doctest::Approx(-4.0).epsilon(1e-14));
        CHECK(std::abs(v.imag()) < 1e-14);
    }
}

TEST_CASE("match_angle wraps into (phi_f - 2pi, phi_f]") {
    const auto dp = derive_params(testplants::machine());
    for (double a_max : {1.0, 8.0, 20.0, 33.0}) {
        const auto seg = plan_machine(a_max);
        const double psi = match_angle(seg.phi_f, seg.structure, dp.p1);
        CHECK(psi <= seg.phi_f);
        CHECK(psi > seg.phi_f - 2.0 * pi);
        // psi is the angle of the last interior switch
        CHECK(psi == doctest::Approx(dp.omega_d * seg.times[seg.times.size() - 2])
                         .epsilon(1e-9));
    }
}

TEST_CASE("match_angle rejects degenerate polygons") {
    switching_structure s;
    s.n_el = 1;
    s.delta_phi = {0.0, 0.0};
    CHECK_THROWS_AS(match_angle(1.0, s, 0.0), numerical_error);
}

TEST_CASE("length error vanishes at the planned root and only there") {
    const auto dp = derive_params(testplants::machine());
    for (double a_max : {20.0, 40.0}) {
        const double a_star = dp.omega_d * a_max / 800.0;
        const auto seg = plan_machine(a_max);
        CHECK(std::abs(length_error(seg.phi_f, a_star, dp.p1)) < 1e-9);
        // positive left of the root, negative right of it
        CHECK(length_error(seg.phi_f - 0.05, a_star, dp.p1) > 0.0);
        CHECK(length_error(seg.phi_f + 0.05, a_star, dp.p1) < 0.0);
    }
}

TEST_CASE("planned machine segment matches the frozen reference") {
    const auto seg = plan_machine(20.0);
    REQUIRE(seg.n() == 4);
    CHECK(seg.structure.n_el == 1);
    // values pinned against an independent prototype of the same equations
    CHECK(seg.t_f == doctest::Approx(0.031004787914624).epsilon(1e-10));
    CHECK(seg.times[1] == doctest::Approx(0.0149179862689493).epsilon(1e-8));
    CHECK(seg.times[2] == doctest::Approx(0.0179203802262613).epsilon(1e-8));
    CHECK(seg.structure.c1 == doctest::Approx(1.012195258169).epsilon(1e-8));
    CHECK(seg.coeffs == std::vector<double>{1.0, -2.0, 2.0, -1.0});
    CHECK(seg.orientation == search_orientation::standard);
}

TEST_CASE("planned segments satisfy every invariant") {
    const auto sys = testplants::machine();
    const auto dp = derive_params(sys);
    for (double a_max : {1.0, 5.0, 10.0, 20.0, 40.0}) {
        CAPTURE(a_max);
        const auto seg = plan_machine(a_max);

        // terminal-time bounds
        CHECK(seg.t_f >= a_max / 800.0);
        CHECK(seg.t_f < a_max / 800.0 + pi / dp.omega_d);

        // switch-count bound
        const int bound = 2 * static_cast<int>(
                                  std::ceil(a_max / 800.0 * dp.omega_d / (2.0 * pi)));
        CHECK(seg.n() - 2 <= bound);

        // terminal-acceleration identity
        const double dt_abs = seg.structure.delta_phi_abs / dp.omega_d;
        CHECK(std::abs(800.0 * seg.t_f - 2.0 * 800.0 * dt_abs - a_max) < 1e-9);

        // closure of the step polygon
        std::complex<double> closure;
        for (std::size_t i = 0; i < seg.times.size(); ++i) {
            closure += seg.coeffs[i] * std::exp(std::complex<double>(dp.p1, 1.0) *
                                                dp.omega_d * seg.times[i]);
        }
        CHECK(std::abs(closure) < 1e-8);

        // full verification report
        const auto rep = verify_segment(seg, sys);
        CHECK(rep.terminal_ok);
        CHECK(rep.switching_law_ok);
        CHECK(rep.jerk_bound_ok);
        CHECK(rep.closure_residual < 1e-8);
        CHECK(rep.switching_residual < 1e-8);
    }
}

TEST_CASE("planning is deterministic and counts its evaluations") {
    planner_settings st;
    st.n_iter = 37;
    const auto a = plan_machine(20.0, st);
    const auto b = plan_machine(20.0, st);
    CHECK(a.line_search_evals == 37);
    CHECK(a.phi_trace.size() == 38);  // initial value plus one entry per refinement
    CHECK(a.t_f == b.t_f);
    CHECK(a.times == b.times);
    CHECK(a.phi_trace == b.phi_trace);
}

TEST_CASE("tiny target accelerations collapse the segment") {
    // t_f -> 0 via the cube-root law phi_f ~ (32 a*)^(1/3)
    const auto dp = derive_params(testplants::machine());
    const auto seg = plan_machine(1e-6);
    CHECK(seg.t_f < pi / dp.omega_d);
    CHECK(seg.phi_f == doctest::Approx(0.018902).epsilon(1e-3));
    CHECK(seg.structure.delta_phi_abs < 1e-2);
    const auto rep = verify_segment(seg, testplants::machine(), 1e-9);
    CHECK(rep.terminal_ok);
}

TEST_CASE("planner input validation") {
    CHECK_THROWS_AS(plan_machine(-1.0), validation_error);
    CHECK_THROWS_AS(plan_segment(testplants::machine(), 20.0, 0.0), validation_error);
    planner_settings st;
    st.n_iter = 0;
    CHECK_THROWS_AS(plan_machine(20.0, st), validation_error);
}

TEST_CASE("verification catches corrupted segments") {
    auto seg = plan_machine(20.0);
    SUBCASE("non-closed coefficient pattern") {
        seg.coeffs[1] = -1.5;  // sum no longer zero
        const auto rep = verify_segment(seg, testplants::machine());
        CHECK_FALSE(rep.terminal_ok);
        CHECK(rep.closure_residual > 1e-3);
    }
    SUBCASE("shifted interior switch") {
        seg.times[1] += 2e-4;
        const auto rep = verify_segment(seg, testplants::machine());
        CHECK_FALSE(rep.terminal_ok);
        CHECK_FALSE(rep.switching_law_ok);
    }
}

TEST_CASE("the jerk sign pattern is +j, -j, +j across the sections") {
    const auto seg = plan_machine(20.0);
    const auto prof = seg.profile();
    const double mid01 = 0.5 * (seg.times[0] + seg.times[1]);
    const double mid12 = 0.5 * (seg.times[1] + seg.times[2]);
    const double mid23 = 0.5 * (seg.times[2] + seg.times[3]);
    CHECK(prof.jerk_at(mid01) == doctest::Approx(800.0));
    CHECK(prof.jerk_at(mid12) == doctest::Approx(-800.0));
    CHECK(prof.jerk_at(mid23) == doctest::Approx(800.0));
}

TEST_CASE("overshoot detection") {
    SUBCASE("single ramp peaks at the end") {
        jerk_segment ramp;
        ramp.a_max = 20.0;
        ramp.j_max = 800.0;
        ramp.t_f = 0.025;
        ramp.phi_f = 0.0;
        ramp.times = {0.0, 0.025};
        ramp.coeffs = {1.0, -1.0};
        const auto rep = detect_overshoot(ramp);
        CHECK(rep.max_accel == doctest::Approx(20.0));
        CHECK(rep.argmax_t == doctest::Approx(0.025));
        CHECK_FALSE(rep.exceeds);
    }
    SUBCASE("twice the rated acceleration does not overshoot on the machine") {
        const auto seg = plan_machine(40.0);
        CHECK_FALSE(seg.overshoot.exceeds);
        CHECK(seg.overshoot.max_accel == doctest::Approx(40.0).epsilon(1e-9));
    }
    SUBCASE("the edge interval overshoots") {
        const auto seg = plan_machine(32.0);
        CHECK(seg.overshoot.exceeds);
        CHECK(seg.overshoot.max_accel > 32.0);
        CHECK(seg.overshoot.argmax_t < seg.t_f);
        // the report maximum is attained by the sampled trajectory
        const auto dp = derive_params(testplants::machine());
        const auto tr = sample_trajectory(seg.profile(), 1e-5, seg.t_f, dp);
        double grid_max = 0.0;
        for (const auto& sv : tr.states) grid_max = std::max(grid_max, sv.z_ddot);
        CHECK(grid_max <= seg.overshoot.max_accel + 1e-9);
    }
    SUBCASE("reduced damping overshoots near the rated doubling") {
        const auto seg =
            plan_segment(testplants::machine_low_damping(0.1), 30.0, 800.0);
        CHECK(seg.overshoot.exceeds);
    }
}

TEST_CASE("single-precision mode still produces a valid segment") {
    planner_settings st;
    st.single_precision = true;
    st.n_iter = 18;
    const auto seg = plan_machine(20.0, st);
    CHECK(seg.n() == 4);
    // float refinement localizes the root to about pi * 2^-19
    CHECK(std::abs(seg.t_f - 0.031004787914624) < 1e-4);
    const auto rep = verify_segment(seg, testplants::machine(), 1e-2, 1e-2);
    CHECK(rep.terminal_ok);
}

TEST_CASE("stress sweep: every regime plans a verifiable segment") {
    // dense acceleration grid across four plants covering heavy damping,
    // weak damping, no damping and the laboratory scale
    const std::array<std::pair<system_params, double>, 4> plants{{
        {testplants::machine(), 800.0},
        {testplants::machine_low_damping(0.1), 800.0},
        {testplants::machine_undamped(), 800.0},
        {testplants::lab(), 200.0},
    }};
    planner_settings st;
    st.record_trace = false;
    for (const auto& [sys, j_max] : plants) {
        const auto dp = derive_params(sys);
        const double a_top = 2.0 * (j_max == 800.0 ? 20.0 : 6.0);
        for (int i = 0; i < 60; ++i) {
            const double a_max = 0.1 + (a_top - 0.1) * i / 59.0;
            CAPTURE(sys.d);
            CAPTURE(a_max);
            const auto seg = plan_segment(sys, a_max, j_max, st);
            REQUIRE(seg.t_f >= a_max / j_max);
            REQUIRE(seg.t_f < a_max / j_max + pi / dp.omega_d);
            const auto rep = verify_segment(seg, sys, 1e-9, 1e-8);
            REQUIRE(rep.terminal_ok);
            REQUIRE(rep.switching_law_ok);
            REQUIRE(rep.jerk_bound_ok);
        }
    }
}

TEST_CASE("table-backed planning matches exact planning closely") {
    planner_settings exact;
    planner_settings tabled;
    tabled.use_table = true;
    const auto a = plan_machine(20.0, exact);
    const auto b = plan_machine(20.0, tabled);
    CHECK(std::abs(a.t_f - b.t_f) < 1e-5);
    const auto rep = verify_segment(b, testplants::machine(), 1e-3, 1e-2);
    CHECK(rep.terminal_ok);
}
