#include "config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace jerkseg::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct raw_config {
    std::map<std::string, std::string> values;  // "section.key" -> text
};

raw_config read_raw(std::istream& in) {
    raw_config raw;
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw validation_error("ConfigError: unterminated section header at line " +
                                       std::to_string(line_no));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw validation_error("ConfigError: expected key = value at line " +
                                   std::to_string(line_no));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty() || key.empty()) {
            throw validation_error("ConfigError: key outside a section at line " +
                                   std::to_string(line_no));
        }
        raw.values[section + "." + key] = value;
    }
    return raw;
}

double take_double(raw_config& raw, const std::string& name) {
    const auto it = raw.values.find(name);
    if (it == raw.values.end()) {
        throw validation_error("ConfigError: missing key " + name);
    }
    const std::string text = it->second;
    raw.values.erase(it);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw validation_error("ConfigError: malformed number for " + name + ": " + text);
    }
    return v;
}

bool take_bool(raw_config& raw, const std::string& name) {
    const auto it = raw.values.find(name);
    if (it == raw.values.end()) {
        throw validation_error("ConfigError: missing key " + name);
    }
    const std::string text = it->second;
    raw.values.erase(it);
    if (text == "true") return true;
    if (text == "false") return false;
    throw validation_error("ConfigError: expected true/false for " + name + ": " + text);
}

int take_int(raw_config& raw, const std::string& name) {
    const double v = take_double(raw, name);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        throw validation_error("ConfigError: expected an integer for " + name);
    }
    return i;
}

}  // namespace

bool operator==(const planner_config& a, const planner_config& b) {
    return a.n_iter == b.n_iter && a.single_precision == b.single_precision &&
           a.precompute == b.precompute && a.closure_tol == b.closure_tol &&
           a.terminal_tol == b.terminal_tol;
}

bool operator==(const plan_config& a, const plan_config& b) {
    return a.plant.m_s == b.plant.m_s && a.plant.m_b == b.plant.m_b &&
           a.plant.k == b.plant.k && a.plant.d == b.plant.d &&
           a.limits.v_lim == b.limits.v_lim && a.limits.a_lim == b.limits.a_lim &&
           a.limits.j_lim == b.limits.j_lim && a.planner == b.planner;
}

plan_config parse_config(std::istream& in) {
    raw_config raw = read_raw(in);
    plan_config cfg;
    cfg.plant.m_s = take_double(raw, "plant.m_s");
    cfg.plant.m_b = take_double(raw, "plant.m_b");
    cfg.plant.k = take_double(raw, "plant.k");
    cfg.plant.d = take_double(raw, "plant.d");
    cfg.limits.v_lim = take_double(raw, "limits.v_lim");
    cfg.limits.a_lim = take_double(raw, "limits.a_lim");
    cfg.limits.j_lim = take_double(raw, "limits.j_lim");
    cfg.planner.n_iter = take_int(raw, "planner.n_iter");
    cfg.planner.single_precision = take_bool(raw, "planner.single_precision");
    cfg.planner.precompute = take_bool(raw, "planner.precompute");
    cfg.planner.closure_tol = take_double(raw, "planner.closure_tol");
    cfg.planner.terminal_tol = take_double(raw, "planner.terminal_tol");
    if (!raw.values.empty()) {
        throw validation_error("ConfigError: unknown key " + raw.values.begin()->first);
    }
    // surface violated invariants with the field names
    derive_params(cfg.plant);
    validate_limits(cfg.limits);
    if (cfg.planner.n_iter < 1) {
        throw validation_error("ConfigError: planner.n_iter must be >= 1");
    }
    if (!(cfg.planner.closure_tol > 0.0) || !(cfg.planner.terminal_tol > 0.0)) {
        throw validation_error("ConfigError: planner tolerances must be > 0");
    }
    return cfg;
}

plan_config parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

plan_config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("ConfigError: cannot open " + path);
    return parse_config(in);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_config(std::ostream& out, const plan_config& cfg) {
    out << "[plant]\n";
    out << "m_s = " << format_double(cfg.plant.m_s) << "\n";
    out << "m_b = " << format_double(cfg.plant.m_b) << "\n";
    out << "k = " << format_double(cfg.plant.k) << "\n";
    out << "d = " << format_double(cfg.plant.d) << "\n";
    out << "\n[limits]\n";
    out << "v_lim = " << format_double(cfg.limits.v_lim) << "\n";
    out << "a_lim = " << format_double(cfg.limits.a_lim) << "\n";
    out << "j_lim = " << format_double(cfg.limits.j_lim) << "\n";
    out << "\n[planner]\n";
    out << "n_iter = " << cfg.planner.n_iter << "\n";
    out << "single_precision = " << (cfg.planner.single_precision ? "true" : "false") << "\n";
    out << "precompute = " << (cfg.planner.precompute ? "true" : "false") << "\n";
    out << "closure_tol = " << format_double(cfg.planner.closure_tol) << "\n";
    out << "terminal_tol = " << format_double(cfg.planner.terminal_tol) << "\n";
}

}  // namespace jerkseg::cli
