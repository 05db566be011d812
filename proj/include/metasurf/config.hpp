// metasurf/config.hpp
//
// Run configuration: the key/value geometry file, tolerance profiles, and
// the manifest embedded in every output for reproducibility.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "metasurf/geometry.hpp"

namespace metasurf {

struct Config {
    UnitCell cell;
    WaveParams wave;
    int nodes = 300;

    static Config parse(const std::string& text);
    static Config load(const std::string& path);
    std::string serialize() const;
    void save(const std::string& path) const;
};

struct ToleranceProfile {
    std::string name = "default";
    double ewald_tol = 1e-10;         // Ewald truncation target
    double spectral_tol = 1e-10;      // spectral-sum tail target
    double extraction_tail_safety = 10.0;  // dual-height disagreement multiplier
    double fit_residual_tol = 5e-3;   // small-k extrapolation residual (relative)
    double cond_limit = 1e12;         // Nystrom conditioning refusal
    double eig_margin_rel = 1e-3;     // Neumann-eigenvalue exclusion band
    double wood_band_rel = 1e-2;      // Wood-anomaly refusal band
    double standoff_panels = 3.0;     // boundary standoff in mesh spacings

    static ToleranceProfile by_name(const std::string& name);
    std::string describe() const;
};

struct RunManifest {
    std::string tool = "metasurf";
    std::string version;
    std::string config_hash;
    std::string profile;
    int threads = 1;
    std::vector<std::pair<std::string, double>> timings;
    std::vector<std::string> warnings;

    std::string to_json() const;
};

std::string tool_version();
std::string fnv1a_hex(const std::string& bytes);

// Worker count: METASURF_THREADS if set, otherwise 1 (serial, reproducible).
int worker_count_from_env();

// 17-significant-digit float formatting used by every CSV writer.
std::string csv_double(double v);

}  // namespace metasurf
