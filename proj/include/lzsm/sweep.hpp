#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lzsm/chaos.hpp"
#include "lzsm/params.hpp"

namespace lzsm {

enum class Method { static_solver, harmonic, effective, floquet };

// Swept quantity. Axis values are linear between min and max in the unit the
// name declares (ordinary MHz, or dBm for drive power).
struct Axis {
    std::string name;  // delta | zeta | omega_mod | F | power_dBm
    double min = 0.0;
    double max = 0.0;
    int points = 1;

    double value(int i) const {
        return points > 1 ? min + (max - min) * i / (points - 1) : min;
    }
};

struct ChaosConfig {
    std::string source = "floquet";  // floquet | ginibre | uniform | file
    std::string file;                // eigenvalue CSV ("re,im") for source=file
    int rmt_n = 512;
    int rmt_samples = 10;
    int k_local = 30;
    int bins = 40;
    // Liouvillian spectra are symmetric under conjugation; spacing statistics
    // keep Im > 0 only so the mirror pairs do not fake small spacings.
    bool half_plane = true;
    bool run_ssqt = true;
};

struct SweepConfig {
    int schema_version = 1;
    std::string task = "lzsm";       // spectro | lzsm | chaos
    ModelParams base;                // after MHz -> rad/us ingestion
    double power_dbm = 0.0;          // fixed input power; used when has_power
    bool has_power = false;
    std::vector<Axis> axes;          // one or two
    Method method = Method::harmonic;
    int cutoff = 0;                  // 0 = adaptive
    int harmonics = 0;               // 0 = adaptive
    int map_steps = 64;
    double map_tol = 1e-7;
    std::uint64_t seed = 1;
    ChaosConfig chaos;
    std::string output;              // default output directory (CLI may override)
    std::string config_echo;         // raw JSON text for metadata
};

// Parses and validates a config file (schema_version must be 1, axis names
// and ranges checked, device preset or explicit parameter block required).
// Throws std::invalid_argument with a precise message on violations.
SweepConfig load_config(const std::string& path);

struct SweepRow {
    double axis1 = 0.0, axis2 = 0.0;
    double delta_mhz = 0.0, zeta_mhz = 0.0, omega_mhz = 0.0, f_mhz = 0.0;
    double n_avg = 0.0;
    cplx s21{0.0, 0.0};
    int cutoff_used = 0;
    int harmonics_used = 0;
    std::string status = "ok";
};

struct RunResult {
    std::vector<SweepRow> rows;
    int exit_code = 0;  // 0 ok, 1 degraded (>10% of points failed), 2 refused
    std::string message;
};

// Grid sweep: writes results.csv, metadata.json and SVG plots into out_dir.
// Output bytes are independent of the worker count.
RunResult run(const SweepConfig& cfg, const std::string& out_dir, int jobs);

// Spectral statistics task: writes eigenvalues.csv, spacings.csv, csr.json,
// histogram.svg, cloud.svg and (for Floquet sources) ssqt.json. Refuses
// Floquet sources above cutoff 48 unless force is set.
RunResult chaos_run(const SweepConfig& cfg, const std::string& out_dir, int jobs, bool force);

} // namespace lzsm
