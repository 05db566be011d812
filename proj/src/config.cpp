// config.cpp

#include "metasurf/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace metasurf {

namespace {

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& text, int line_no, const std::string& key) {
    char* end = nullptr;
    const std::string t = trim(text);
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        fail(ErrorKind::io, "config value is a number",
             "line " + std::to_string(line_no) + ": value of '" + key + "' is not a number: '" +
                 t + "'");
    return v;
}

Resonator parse_resonator(const std::string& body, int line_no) {
    Resonator r;
    bool seen[4] = {false, false, false, false};
    std::istringstream is(body);
    std::string tok;
    while (is >> tok) {
        const size_t eq = tok.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::io, "resonator fields are key=value",
                 "line " + std::to_string(line_no) + ": expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const double val = parse_number(tok.substr(eq + 1), line_no, key);
        if (key == "h") {
            r.h = val;
            seen[0] = true;
        } else if (key == "l") {
            r.l = val;
            seen[1] = true;
        } else if (key == "xi") {
            r.xi = val;
            seen[2] = true;
        } else if (key == "eps") {
            r.eps = val;
            seen[3] = true;
        } else {
            fail(ErrorKind::io, "resonator keys are h,l,xi,eps",
                 "line " + std::to_string(line_no) + ": unknown resonator field '" + key + "'");
        }
    }
    for (int i = 0; i < 4; ++i)
        if (!seen[i])
            fail(ErrorKind::io, "resonator needs h,l,xi,eps",
                 "line " + std::to_string(line_no) + ": resonator is missing a field (need h, l, xi, eps)");
    return r;
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    cfg.cell.delta = 1.0;
    cfg.wave = {0.0, 0.0, 1.0};
    bool saw_k = false, saw_theta = false;

    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::io, "config lines are key = value",
                 "line " + std::to_string(line_no) + ": expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "delta")
            cfg.cell.delta = parse_number(value, line_no, key);
        else if (key == "k") {
            cfg.wave.k = parse_number(value, line_no, key);
            saw_k = true;
        } else if (key == "theta") {
            cfg.wave.theta = parse_number(value, line_no, key);
            saw_theta = true;
        } else if (key == "I0")
            cfg.wave.intensity = parse_number(value, line_no, key);
        else if (key == "nodes")
            cfg.nodes = static_cast<int>(parse_number(value, line_no, key));
        else if (key == "resonator")
            cfg.cell.resonators.push_back(parse_resonator(value, line_no));
        else
            fail(ErrorKind::io, "known config keys",
                 "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!saw_k) fail(ErrorKind::io, "config provides k", "missing required key 'k'");
    if (!saw_theta) fail(ErrorKind::io, "config provides theta", "missing required key 'theta'");
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::io, "config file readable", "cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string Config::serialize() const {
    std::ostringstream os;
    os << "delta = " << csv_double(cell.delta) << "\n";
    os << "k = " << csv_double(wave.k) << "\n";
    os << "theta = " << csv_double(wave.theta) << "\n";
    os << "I0 = " << csv_double(wave.intensity) << "\n";
    os << "nodes = " << nodes << "\n";
    for (const Resonator& r : cell.resonators)
        os << "resonator = h=" << csv_double(r.h) << " l=" << csv_double(r.l)
           << " xi=" << csv_double(r.xi) << " eps=" << csv_double(r.eps) << "\n";
    return os.str();
}

void Config::save(const std::string& path) const {
    std::ofstream f(path);
    if (!f) fail(ErrorKind::io, "config file writable", "cannot write config file: " + path);
    f << serialize();
}

ToleranceProfile ToleranceProfile::by_name(const std::string& name) {
    ToleranceProfile p;
    if (name == "default") {
        p.name = name;
    } else if (name == "strict") {
        p.name = name;
        p.ewald_tol = 1e-12;
        p.spectral_tol = 1e-12;
        p.extraction_tail_safety = 4.0;
        p.fit_residual_tol = 1e-3;
        p.cond_limit = 1e11;
    } else if (name == "fast") {
        p.name = name;
        p.ewald_tol = 1e-8;
        p.spectral_tol = 1e-8;
        p.extraction_tail_safety = 30.0;
        p.fit_residual_tol = 2e-2;
        p.cond_limit = 1e13;
    } else {
        fail(ErrorKind::invalid_argument, "tolerance profile in {strict, default, fast}",
             "unknown tolerance profile: " + name);
    }
    return p;
}

std::string ToleranceProfile::describe() const {
    std::ostringstream os;
    os << "{\"name\":\"" << name << "\",\"ewald_tol\":" << ewald_tol
       << ",\"spectral_tol\":" << spectral_tol
       << ",\"extraction_tail_safety\":" << extraction_tail_safety
       << ",\"fit_residual_tol\":" << fit_residual_tol << ",\"cond_limit\":" << cond_limit
       << ",\"eig_margin_rel\":" << eig_margin_rel << ",\"wood_band_rel\":" << wood_band_rel
       << ",\"standoff_panels\":" << standoff_panels << "}";
    return os.str();
}

std::string RunManifest::to_json() const {
    std::ostringstream os;
    os << "{\"tool\":\"" << tool << "\",\"version\":\"" << version << "\",\"config_hash\":\""
       << config_hash << "\",\"profile\":\"" << profile << "\",\"threads\":" << threads;
    os << ",\"timings\":{";
    for (size_t i = 0; i < timings.size(); ++i) {
        if (i) os << ",";
        os << "\"" << timings[i].first << "\":" << timings[i].second;
    }
    os << "},\"warnings\":[";
    for (size_t i = 0; i < warnings.size(); ++i) {
        if (i) os << ",";
        os << "\"" << warnings[i] << "\"";
    }
    os << "]}";
    return os.str();
}

std::string tool_version() { return "0.1.0"; }

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int worker_count_from_env() {
    const char* v = std::getenv("METASURF_THREADS");
    if (!v) return 1;
    const int n = std::atoi(v);
    return n >= 1 ? n : 1;
}

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace metasurf
