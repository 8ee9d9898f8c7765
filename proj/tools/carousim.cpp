// carousim: batch front-end for gyro error-process synthesis, carouseling
// simulation, Allan analysis, and static-log reports.
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "carousim/allan.hpp"
#include "carousim/carousel.hpp"
#include "carousim/constavar.hpp"
#include "carousim/experiments.hpp"
#include "carousim/gyrolog.hpp"
#include "carousim/noise.hpp"

namespace {

using carousim::ExperimentConfig;
using carousim::Seed;
using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(const std::string& path, const carousim::SampleSeries& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t,value\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << fmt(static_cast<double>(i + 1) * s.sample_interval) << ','
            << fmt(s.values[i]) << '\n';
}

void write_sidecar(const std::string& path, Seed seed, const json& config) {
    json j;
    j["seed"] = {{"master", seed.master}, {"stream", seed.stream}};
    j["prng"] = carousim::Rng::algorithm;
    j["config"] = config;
    j["version"] = carousim::kVersion;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

int cmd_gen_noise(const std::string& kind, std::size_t n, double variance,
                  double d, double bias, std::size_t levels, Seed seed,
                  double dt, const std::string& out_prefix) {
    carousim::SampleSeries series;
    if (kind == "white")
        series = carousim::gen_white(n, variance, seed, dt);
    else if (kind == "rrw")
        series = carousim::gen_rrw(n, variance, seed, dt);
    else if (kind == "flicker")
        series = carousim::gen_flicker(n, variance, d, seed,
                                       carousim::ConvolutionPath::Auto, dt);
    else if (kind == "bias")
        series = carousim::gen_bias(n, bias, dt);
    else if (kind == "const-avar")
        series = carousim::SampleSeries{carousim::gen_S(levels).values, dt,
                                        "const-avar"};
    else if (kind == "const-avar-stochastic")
        series = carousim::SampleSeries{carousim::gen_R(levels, seed).values, dt,
                                        "const-avar-stochastic"};
    else
        throw CLI::ValidationError("--kind", "unknown noise kind '" + kind + "'");

    write_series_csv(out_prefix + ".csv", series);
    write_sidecar(out_prefix + ".json", seed,
                  json{{"command", "gen-noise"},
                       {"kind", kind},
                       {"n", n},
                       {"variance", variance},
                       {"d", d},
                       {"bias", bias},
                       {"levels", levels},
                       {"sample_interval", dt}});
    std::cout << "wrote " << out_prefix << ".csv (" << series.size()
              << " samples)\n";
    return 0;
}

int cmd_allan(const std::string& input, const std::string& axis,
              std::size_t min_bins, const std::string& out_prefix) {
    const carousim::GyroLog log = carousim::ingest_csv(input);
    const carousim::SampleSeries series = log.axis(axis);
    const auto taus = carousim::default_tau_grid(series.size(), min_bins);
    const carousim::AllanCurve curve = carousim::allan_variance(series, taus);
    std::ofstream out(out_prefix + ".csv");
    if (!out) throw std::runtime_error("cannot write " + out_prefix + ".csv");
    out << "tau,avar,bins\n";
    for (const auto& p : curve.points)
        out << fmt(p.tau) << ',' << fmt(p.avar) << ',' << p.bins << '\n';
    write_sidecar(out_prefix + ".json", Seed{},
                  json{{"command", "allan"},
                       {"input", input},
                       {"axis", axis},
                       {"min_bins", min_bins}});
    std::cout << "wrote " << out_prefix << ".csv (" << curve.points.size()
              << " points)\n";
    for (const auto& w : curve.warnings) std::cerr << "warning: " << w << '\n';
    return 0;
}

int cmd_predict(double white_x, double white_y, double rrw_x, double rrw_y,
                std::size_t n, double period, std::size_t bins,
                const std::string& mode, const std::string& out_prefix) {
    carousim::GyroErrorParams px{white_x, rrw_x, 0.0, 0.0};
    carousim::GyroErrorParams py{white_y, rrw_y, 0.0, 0.0};
    const carousim::CarouselConfig config{n, period};
    const carousim::AveragingMode m = mode == "carouseled"
                                          ? carousim::AveragingMode::Carouseled
                                          : carousim::AveragingMode::Averaged;
    const carousim::IntervalPrediction pred =
        carousim::predict_interval(px, py, config, bins, m);
    std::ofstream out(out_prefix + ".csv");
    if (!out) throw std::runtime_error("cannot write " + out_prefix + ".csv");
    out << "bin,variance,two_sigma\n";
    for (std::size_t t = 0; t < bins; ++t)
        out << (t + 1) << ',' << fmt(pred.variance[t]) << ','
            << fmt(pred.two_sigma[t]) << '\n';
    write_sidecar(out_prefix + ".json", Seed{},
                  json{{"command", "predict"},
                       {"white_x", white_x},
                       {"white_y", white_y},
                       {"rrw_x", rrw_x},
                       {"rrw_y", rrw_y},
                       {"samples_per_rev", n},
                       {"period", period},
                       {"bins", bins},
                       {"mode", mode}});
    std::cout << "wrote " << out_prefix << ".csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"carousim: MEMS gyro error-process synthesis and carouseling "
                 "analysis"};
    app.require_subcommand(1);

    std::uint64_t seed_master = 0, seed_stream = 0;
    std::string out = "carousim_out";
    std::string format = "csv";
    app.add_option("--seed", seed_master, "master seed (64-bit)")
        ->capture_default_str();
    app.add_option("--stream", seed_stream, "seed stream id")
        ->capture_default_str();
    app.add_option("--out", out, "output path prefix")->capture_default_str();
    app.add_option("--format", format, "report format (csv)")
        ->capture_default_str();
    // Let --seed/--out and friends appear after the subcommand name.
    app.fallthrough();

    // gen-noise
    auto* gen = app.add_subcommand(
        "gen-noise", "generate one error-process realization as CSV");
    std::string kind = "white";
    std::size_t n = 1000, levels = 10;
    double variance = 1.0, d = 0.5, bias = 0.0, dt = 1.0;
    gen->add_option("--kind", kind,
                    "white | rrw | flicker | bias | const-avar | "
                    "const-avar-stochastic")
        ->capture_default_str();
    gen->add_option("--n", n, "sample count")->capture_default_str();
    gen->add_option("--variance", variance, "driving-noise variance")
        ->capture_default_str();
    gen->add_option("--d", d, "fractional integration order (flicker)")
        ->capture_default_str();
    gen->add_option("--bias", bias, "bias value, rad/s")->capture_default_str();
    gen->add_option("--levels", levels, "levels for const-avar kinds (length 2^n)")
        ->capture_default_str();
    gen->add_option("--dt", dt, "sample interval, s")->capture_default_str();

    // simulate
    auto* sim = app.add_subcommand(
        "simulate",
        "run a Monte Carlo experiment (rrw-variance, flicker-variance, "
        "flicker-gain, const-avar-check, static-analysis); CSV columns are "
        "documented per experiment in the user guide");
    std::string config_path;
    std::string experiment;
    std::size_t realizations = 1000, samples_per_rev = 200, bins = 50;
    double period = 2.0, sigma2 = 1.0;
    sim->add_option("--config", config_path, "JSON ExperimentConfig file");
    sim->add_option("--experiment", experiment, "experiment name");
    sim->add_option("--realizations", realizations, "Monte Carlo realizations")
        ->capture_default_str();
    sim->add_option("--N", samples_per_rev, "samples per revolution")
        ->capture_default_str();
    sim->add_option("--T", period, "revolution period, s")->capture_default_str();
    sim->add_option("--bins", bins, "revolutions / averaging bins")
        ->capture_default_str();
    sim->add_option("--sigma2", sigma2, "driving-noise variance")
        ->capture_default_str();
    sim->add_option("--d", d, "fractional integration order")
        ->capture_default_str();
    sim->add_option("--levels", levels, "const-avar-check levels")
        ->capture_default_str();

    // allan
    auto* allan = app.add_subcommand(
        "allan", "non-overlapping Allan variance of a gyro-log axis");
    std::string input, axis = "gx";
    std::size_t min_bins = 9;
    allan->add_option("--in", input, "input gyro log CSV (t,gx,gy,gz)")
        ->required();
    allan->add_option("--axis", axis, "axis column")->capture_default_str();
    allan->add_option("--min-bins", min_bins, "minimum bins per tau point")
        ->capture_default_str();

    // predict
    auto* predict = app.add_subcommand(
        "predict", "closed-form white+RRW variance per bin for a gyro pair");
    double white_x = 3e-7, white_y = 1e-7, rrw_x = 3e-10, rrw_y = 2e-10;
    std::string mode = "carouseled";
    predict->add_option("--white-x", white_x, "x-gyro Allan value at 1 s")
        ->capture_default_str();
    predict->add_option("--white-y", white_y, "y-gyro Allan value at 1 s")
        ->capture_default_str();
    predict->add_option("--rrw-x", rrw_x, "x-gyro RRW, (rad/s)^2/s")
        ->capture_default_str();
    predict->add_option("--rrw-y", rrw_y, "y-gyro RRW, (rad/s)^2/s")
        ->capture_default_str();
    predict->add_option("--N", samples_per_rev, "samples per revolution")
        ->capture_default_str();
    predict->add_option("--T", period, "revolution period, s")
        ->capture_default_str();
    predict->add_option("--bins", bins, "bins to predict")->capture_default_str();
    predict->add_option("--mode", mode, "averaged | carouseled")
        ->capture_default_str();

    // ingest-check
    auto* ingest = app.add_subcommand(
        "ingest-check", "validate a gyro log CSV and report its sample rate");
    bool deg_units = false;
    ingest->add_option("--in", input, "input gyro log CSV")->required();
    ingest->add_flag("--units-deg", deg_units, "input rates are in deg/s");

    // analyze-static
    auto* analyze = app.add_subcommand(
        "analyze-static",
        "averaged/carouseled bin series, Allan curves, error parameters, 2-sigma "
        "intervals and integrated angles for a static log");
    std::string axis_x = "gx", axis_y = "gy";
    double warmup_skip = 0.0, tau_white = 1.0, tau_rrw = 100.0;
    analyze->add_option("--in", input, "input gyro log CSV")->required();
    analyze->add_option("--axis-x", axis_x, "x-gyro column")->capture_default_str();
    analyze->add_option("--axis-y", axis_y, "y-gyro column")->capture_default_str();
    analyze->add_option("--N", samples_per_rev, "samples per revolution")
        ->capture_default_str();
    analyze->add_option("--T", period, "revolution period, s")
        ->capture_default_str();
    analyze->add_option("--warmup-skip", warmup_skip,
                        "seconds excluded from Allan analysis")
        ->capture_default_str();
    analyze->add_option("--tau-white", tau_white, "tau for the white reading, s")
        ->capture_default_str();
    analyze->add_option("--tau-rrw", tau_rrw, "tau for the RRW reading, s")
        ->capture_default_str();
    analyze->add_flag("--units-deg", deg_units, "input rates are in deg/s");

    CLI11_PARSE(app, argc, argv);

    const Seed seed{seed_master, seed_stream};
    try {
        if (gen->parsed())
            return cmd_gen_noise(kind, n, variance, d, bias, levels, seed, dt, out);
        if (sim->parsed()) {
            ExperimentConfig config;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in)
                    throw std::runtime_error("cannot open config " + config_path);
                config = carousim::config_from_json(json::parse(in));
            } else {
                if (experiment.empty())
                    throw CLI::ValidationError(
                        "--experiment", "required unless --config is given");
                config.experiment = experiment;
                config.realizations = realizations;
                config.samples_per_rev = samples_per_rev;
                config.period = period;
                config.bins = bins;
                config.sigma2 = sigma2;
                config.d = d;
                config.levels = levels;
                config.seed = seed;
                config.out = out;
                config.format = format;
            }
            // Common flags override the config file when set explicitly.
            if (app.count("--seed")) config.seed.master = seed_master;
            if (app.count("--stream")) config.seed.stream = seed_stream;
            if (app.count("--out")) config.out = out;
            const auto files = carousim::run_experiment(config);
            for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
            return 0;
        }
        if (allan->parsed()) return cmd_allan(input, axis, min_bins, out);
        if (predict->parsed())
            return cmd_predict(white_x, white_y, rrw_x, rrw_y, samples_per_rev,
                               period, bins, mode, out);
        if (ingest->parsed()) {
            const carousim::GyroLog log = carousim::ingest_csv(input, deg_units);
            std::cout << "ok: " << log.size() << " samples, "
                      << fmt(log.sample_rate) << " Hz inferred\n";
            for (const auto& w : log.warnings) std::cerr << "warning: " << w << '\n';
            return 0;
        }
        if (analyze->parsed()) {
            const carousim::GyroLog log = carousim::ingest_csv(input, deg_units);
            ExperimentConfig config;
            config.experiment = "static-analysis";
            config.samples_per_rev = samples_per_rev;
            config.period = period;
            config.axis_x = axis_x;
            config.axis_y = axis_y;
            config.warmup_skip = warmup_skip;
            config.tau_white = tau_white;
            config.tau_rrw = tau_rrw;
            config.input = input;
            config.seed = seed;
            config.out = out;
            const auto result = carousim::analyze_static(log, config);
            for (const auto& f : result.files)
                std::cout << "wrote " << f.string() << '\n';
            std::cout << "exceedance fraction: " << fmt(result.exceedance_fraction)
                      << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
