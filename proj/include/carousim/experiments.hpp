// Batch experiment runner: Monte Carlo variance propagation, flicker gain
// trajectories, constant-Allan-variance ensembles, and static gyro-log
// analysis. Every report embeds the config and seed needed to regenerate it
// byte-identically.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "carousim/allan.hpp"
#include "carousim/gyrolog.hpp"
#include "carousim/rng.hpp"

#include "json.hpp"

namespace carousim {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
    std::string experiment;          // rrw-variance | flicker-variance |
                                     // flicker-gain | const-avar-check |
                                     // static-analysis
    std::size_t realizations = 1000;
    std::size_t samples_per_rev = 200;  // N
    double period = 2.0;                // T seconds
    std::size_t bins = 50;              // m
    double sigma2 = 1.0;                // driving-noise variance
    double d = 0.5;                     // flicker order
    std::size_t levels = 10;            // const-avar-check sequence levels
    Seed seed;
    std::string out = "experiment";     // output path prefix
    std::string format = "csv";

    // static-analysis only
    std::string input;
    std::string axis_x = "gx";
    std::string axis_y = "gy";
    double warmup_skip = 0.0;           // seconds excluded from Allan analysis
    double tau_white = 1.0;             // seconds
    double tau_rrw = 100.0;             // seconds
};

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

// Runs the configured experiment and returns the written files (CSV series
// plus one JSON provenance sidecar).
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config);

struct StaticAnalysisResult {
    std::vector<std::filesystem::path> files;
    GyroErrorParams params_x;
    GyroErrorParams params_y;
    double exceedance_fraction = 0.0;   // carouseled bins outside the 2-sigma band
    double terminal_angle_avg_x = 0.0;  // radians after the last bin
    double terminal_angle_avg_y = 0.0;
    double terminal_angle_carousel = 0.0;
};

// Static-log analysis: averaged and carouseled bin series with predicted
// 2-sigma intervals, per-axis Allan curves, estimated error parameters, and
// integrated angles. The carouseling rotation is virtual (applied in
// software); this is exact for a static log because the true rate is zero.
StaticAnalysisResult analyze_static(const GyroLog& log,
                                    const ExperimentConfig& config);

}  // namespace carousim
