#pragma once

#include <iosfwd>
#include <string>

#include <jerkseg/system.hpp>

namespace jerkseg::cli {

struct planner_config {
    int n_iter = 48;
    bool single_precision = false;
    bool precompute = false;
    double closure_tol = 1e-8;
    double terminal_tol = 1e-9;
};

/// Everything a command needs: the plant, its kinematic limits and the
/// planner settings. Loaded from a sectioned key = value document.
struct plan_config {
    system_params plant{};
    kinematic_limits limits{};
    planner_config planner{};
};

bool operator==(const planner_config& a, const planner_config& b);
bool operator==(const plan_config& a, const plan_config& b);

/// Parses a config document:
///   [plant]    m_s, m_b, k, d
///   [limits]   v_lim, a_lim, j_lim
///   [planner]  n_iter, single_precision, precompute, closure_tol, terminal_tol
/// Unknown keys or sections, missing keys, malformed numbers and violated
/// invariants all raise validation_error with the offending item named.
plan_config parse_config(std::istream& in);
plan_config parse_config_string(const std::string& text);
plan_config load_config(const std::string& path);

/// Writes the effective configuration in the same syntax, so the emitted
/// block re-parses to an identical configuration.
void emit_config(std::ostream& out, const plan_config& cfg);

/// Fixed 17-significant-digit formatting used by every emitter, so equal
/// doubles always print to equal bytes.
std::string format_double(double v);

}  // namespace jerkseg::cli
