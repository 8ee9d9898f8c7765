#include "carousim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "carousim/constavar.hpp"
#include "carousim/kernels.hpp"
#include "carousim/noise.hpp"

namespace carousim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Shortest-exact decimal formatting keeps reports byte-stable across reruns.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::string& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
        out_ << header << '\n';
    }
    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) out_ << ',';
            out_ << fmt(v);
            first = false;
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

// Per-bin running mean/variance accumulator over the realization ensemble.
struct EnsembleStats {
    explicit EnsembleStats(std::size_t bins) : sum(bins, 0.0), sumsq(bins, 0.0) {}
    std::vector<double> sum, sumsq;
    std::size_t count = 0;

    void accumulate(std::span<const double> values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            sum[i] += values[i];
            sumsq[i] += values[i] * values[i];
        }
        ++count;
    }
    double variance(std::size_t i) const {
        const double n = static_cast<double>(count);
        const double mean = sum[i] / n;
        return (sumsq[i] - n * mean * mean) / (n - 1.0);
    }
};

void write_sidecar(const fs::path& path, const ExperimentConfig& config,
                   const json& results) {
    json j;
    j["seed"] = {{"master", config.seed.master}, {"stream", config.seed.stream}};
    j["prng"] = Rng::algorithm;
    j["config"] = to_json(config);
    j["version"] = kVersion;
    j["kernel_backend"] = kernels::backend_name();
    if (!results.is_null()) j["results"] = results;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

// Exact ||F'w||^2 for a weight vector supported on one block of a length-n
// realization; O(n * block) instead of O(n^2).
double flicker_block_quadratic_form(std::size_t n, std::size_t block_start,
                                    std::span<const double> block_weights,
                                    double d) {
    const FractionalMatrix fm = flicker_coefficients(n, d);
    const std::span<const double> coeff(fm.coefficients);
    const std::size_t block_end = block_start + block_weights.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < block_end; ++i) {
        const std::size_t t0 = std::max(i, block_start);
        const double g = kernels::dot(coeff.subspan(t0 - i, block_end - t0),
                                      block_weights.subspan(t0 - block_start));
        acc += g * g;
    }
    return acc;
}

std::vector<fs::path> run_rrw_or_flicker(const ExperimentConfig& config,
                                         bool flicker) {
    const std::size_t n = config.samples_per_rev;
    const std::size_t total = config.bins * n;
    const CarouselConfig carousel{n, config.period};
    const double dt = carousel.sample_interval();

    EnsembleStats averaged(config.bins), carouseled(config.bins);
    for (std::size_t r = 0; r < config.realizations; ++r) {
        const Seed sr = substream(config.seed, r);
        SampleSeries ex, ey;
        if (flicker) {
            ex = gen_flicker(total, config.sigma2, config.d, substream(sr, 0),
                             ConvolutionPath::Auto, dt);
            ey = gen_flicker(total, config.sigma2, config.d, substream(sr, 1),
                             ConvolutionPath::Auto, dt);
        } else {
            ex = gen_rrw(total, config.sigma2, substream(sr, 0), dt);
            ey = gen_rrw(total, config.sigma2, substream(sr, 1), dt);
        }
        averaged.accumulate(direct_average(ex, n).values);
        carouseled.accumulate(carousel_average(ex, ey, carousel).values);
    }

    // Closed-form predictions per bin.
    std::vector<double> avg_pred(config.bins), car_pred(config.bins);
    if (flicker) {
        const CoefficientVectors cv = CoefficientVectors::make(n);
        for (std::size_t t = 0; t < config.bins; ++t) {
            avg_pred[t] = config.sigma2 *
                          flicker_block_quadratic_form(total, t * n, cv.ones,
                                                       config.d);
            car_pred[t] =
                config.sigma2 *
                (flicker_block_quadratic_form(total, t * n, cv.s, config.d) +
                 flicker_block_quadratic_form(total, t * n, cv.c, config.d));
        }
    } else {
        const VariancePrediction avg =
            predict_avg_rrw(n, config.bins, config.sigma2);
        const CarouselRrwVariance car =
            predict_carousel_rrw(n, config.sigma2, PredictionMode::Exact);
        avg_pred = avg.per_bin_variance;
        std::fill(car_pred.begin(), car_pred.end(), car.total);
    }

    const fs::path csv = config.out + ".csv";
    CsvWriter w(csv, "bin,averaged_var,averaged_pred,carouseled_var,carouseled_pred");
    for (std::size_t t = 0; t < config.bins; ++t)
        w.row({static_cast<double>(t + 1), averaged.variance(t), avg_pred[t],
               carouseled.variance(t), car_pred[t]});

    const fs::path sidecar = config.out + ".json";
    write_sidecar(sidecar, config, json());
    return {csv, sidecar};
}

std::vector<fs::path> run_flicker_gain(const ExperimentConfig& config) {
    const std::size_t n_max = config.bins * config.samples_per_rev;
    const auto ones =
        flicker_gain_trajectory(n_max, config.d, WeightKind::Ones, 0);
    const auto sine = flicker_gain_trajectory(n_max, config.d, WeightKind::Sine,
                                              config.samples_per_rev);
    const auto cosine = flicker_gain_trajectory(
        n_max, config.d, WeightKind::Cosine, config.samples_per_rev);

    const fs::path csv = config.out + ".csv";
    CsvWriter w(csv, "dimension,gain_ones,gain_sine,gain_cosine");
    for (std::size_t i = 0; i < n_max; ++i)
        w.row({static_cast<double>(i + 1), ones[i], sine[i], cosine[i]});

    const fs::path sidecar = config.out + ".json";
    write_sidecar(sidecar, config, json());
    return {csv, sidecar};
}

std::vector<fs::path> run_const_avar_check(const ExperimentConfig& config) {
    const std::size_t levels = config.levels;
    std::vector<std::size_t> taus;
    for (std::size_t tau = 1; tau < (std::size_t{1} << levels); tau *= 2)
        taus.push_back(tau);

    EnsembleStats two_avar(taus.size());
    double mvue_sum = 0.0, mvue_sumsq = 0.0;
    std::vector<double> per_tau(taus.size());
    for (std::size_t r = 0; r < config.realizations; ++r) {
        const DyadicSequence seq = gen_R(levels, substream(config.seed, r));
        const SampleSeries series{seq.values, 1.0, "gen_R"};
        const AllanCurve curve = allan_variance(series, taus);
        for (std::size_t i = 0; i < taus.size(); ++i)
            per_tau[i] = 2.0 * curve.points[i].avar;
        two_avar.accumulate(per_tau);
        const double m = mvue_c2(seq);
        mvue_sum += m;
        mvue_sumsq += m * m;
    }
    const double nr = static_cast<double>(config.realizations);
    const double mvue_mean = mvue_sum / nr;
    const double mvue_var = (mvue_sumsq - nr * mvue_mean * mvue_mean) / (nr - 1.0);

    const fs::path csv = config.out + ".csv";
    CsvWriter w(csv, "tau,mean_two_avar,var_two_avar");
    for (std::size_t i = 0; i < taus.size(); ++i)
        w.row({static_cast<double>(taus[i]),
               two_avar.sum[i] / nr, two_avar.variance(i)});

    json results;
    results["mvue_mean"] = mvue_mean;
    results["mvue_var"] = mvue_var;
    results["two_avar_tau1_var"] = two_avar.variance(0);
    const fs::path sidecar = config.out + ".json";
    write_sidecar(sidecar, config, results);
    return {csv, sidecar};
}

std::vector<fs::path> run_static_analysis(const ExperimentConfig& config) {
    if (config.input.empty())
        throw std::invalid_argument("static-analysis requires an input log");
    const GyroLog log = ingest_csv(config.input);
    return analyze_static(log, config).files;
}

}  // namespace

json to_json(const ExperimentConfig& c) {
    return json{{"experiment", c.experiment},
                {"realizations", c.realizations},
                {"samples_per_rev", c.samples_per_rev},
                {"period", c.period},
                {"bins", c.bins},
                {"sigma2", c.sigma2},
                {"d", c.d},
                {"levels", c.levels},
                {"seed", {{"master", c.seed.master}, {"stream", c.seed.stream}}},
                {"out", c.out},
                {"format", c.format},
                {"input", c.input},
                {"axis_x", c.axis_x},
                {"axis_y", c.axis_y},
                {"warmup_skip", c.warmup_skip},
                {"tau_white", c.tau_white},
                {"tau_rrw", c.tau_rrw}};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.experiment = j.at("experiment").get<std::string>();
    if (j.contains("realizations")) c.realizations = j["realizations"];
    if (j.contains("samples_per_rev")) c.samples_per_rev = j["samples_per_rev"];
    if (j.contains("period")) c.period = j["period"];
    if (j.contains("bins")) c.bins = j["bins"];
    if (j.contains("sigma2")) c.sigma2 = j["sigma2"];
    if (j.contains("d")) c.d = j["d"];
    if (j.contains("levels")) c.levels = j["levels"];
    if (j.contains("seed")) {
        c.seed.master = j["seed"].value("master", 0ULL);
        c.seed.stream = j["seed"].value("stream", 0ULL);
    }
    if (j.contains("out")) c.out = j["out"];
    if (j.contains("format")) c.format = j["format"];
    if (j.contains("input")) c.input = j["input"];
    if (j.contains("axis_x")) c.axis_x = j["axis_x"];
    if (j.contains("axis_y")) c.axis_y = j["axis_y"];
    if (j.contains("warmup_skip")) c.warmup_skip = j["warmup_skip"];
    if (j.contains("tau_white")) c.tau_white = j["tau_white"];
    if (j.contains("tau_rrw")) c.tau_rrw = j["tau_rrw"];
    return c;
}

std::vector<fs::path> run_experiment(const ExperimentConfig& config) {
    if (config.realizations < 1)
        throw std::invalid_argument("run_experiment: realizations >= 1");
    if (config.experiment == "rrw-variance")
        return run_rrw_or_flicker(config, false);
    if (config.experiment == "flicker-variance")
        return run_rrw_or_flicker(config, true);
    if (config.experiment == "flicker-gain") return run_flicker_gain(config);
    if (config.experiment == "const-avar-check")
        return run_const_avar_check(config);
    if (config.experiment == "static-analysis")
        return run_static_analysis(config);
    throw std::invalid_argument("unknown experiment '" + config.experiment + "'");
}

StaticAnalysisResult analyze_static(const GyroLog& log,
                                    const ExperimentConfig& config) {
    const CarouselConfig carousel{config.samples_per_rev, config.period};
    validate(carousel);
    const std::size_t n = config.samples_per_rev;
    SampleSeries x = log.axis(config.axis_x);
    SampleSeries y = log.axis(config.axis_y);
    if (x.size() < 10 * n)
        throw std::invalid_argument(
            "analyze_static: log shorter than 10 revolutions");

    // Allan analysis on warm-up-trimmed data; the bin series keep everything.
    const std::size_t skip = static_cast<std::size_t>(config.warmup_skip /
                                                      x.sample_interval);
    if (skip + 2 * n > x.size())
        throw std::invalid_argument("analyze_static: warmup_skip leaves no data");
    SampleSeries x_trim{std::vector<double>(x.values.begin() + skip, x.values.end()),
                        x.sample_interval, x.label};
    SampleSeries y_trim{std::vector<double>(y.values.begin() + skip, y.values.end()),
                        y.sample_interval, y.label};
    const std::vector<std::size_t> taus = default_tau_grid(x_trim.size());
    const AllanCurve curve_x = allan_variance(x_trim, taus);
    const AllanCurve curve_y = allan_variance(y_trim, taus);

    StaticAnalysisResult result;
    result.params_x = estimate_params(curve_x, config.tau_white, config.tau_rrw);
    result.params_y = estimate_params(curve_y, config.tau_white, config.tau_rrw);

    const SampleSeries avg_x = direct_average(x, n);
    const SampleSeries avg_y = direct_average(y, n);
    const std::size_t usable = (x.size() / n) * n;
    SampleSeries x_cut{std::vector<double>(x.values.begin(),
                                           x.values.begin() + usable),
                       x.sample_interval, x.label};
    SampleSeries y_cut{std::vector<double>(y.values.begin(),
                                           y.values.begin() + usable),
                       y.sample_interval, y.label};
    const SampleSeries car = carousel_average(x_cut, y_cut, carousel);
    const std::size_t bins = car.size();

    const IntervalPrediction pred_avg_x = predict_interval(
        result.params_x, result.params_y, carousel, bins, AveragingMode::Averaged);
    const IntervalPrediction pred_avg_y = predict_interval(
        result.params_y, result.params_x, carousel, bins, AveragingMode::Averaged);
    const IntervalPrediction pred_car =
        predict_interval(result.params_x, result.params_y, carousel, bins,
                         AveragingMode::Carouseled);

    std::size_t exceed = 0;
    for (std::size_t t = 0; t < bins; ++t)
        if (std::abs(car.values[t]) > pred_car.two_sigma[t]) ++exceed;
    result.exceedance_fraction =
        static_cast<double>(exceed) / static_cast<double>(bins);

    const SampleSeries angle_x = integrate_angle(avg_x, config.period);
    const SampleSeries angle_y = integrate_angle(avg_y, config.period);
    const SampleSeries angle_car = integrate_angle(car, config.period);
    result.terminal_angle_avg_x = angle_x.values.back();
    result.terminal_angle_avg_y = angle_y.values.back();
    result.terminal_angle_carousel = angle_car.values.back();

    const std::string& prefix = config.out;
    {
        CsvWriter w(prefix + "_bins.csv",
                    "bin,t,averaged_x,averaged_y,carouseled,"
                    "two_sigma_avg_x,two_sigma_avg_y,two_sigma_carousel");
        for (std::size_t t = 0; t < bins; ++t)
            w.row({static_cast<double>(t + 1),
                   static_cast<double>(t + 1) * config.period, avg_x.values[t],
                   avg_y.values[t], car.values[t], pred_avg_x.two_sigma[t],
                   pred_avg_y.two_sigma[t], pred_car.two_sigma[t]});
    }
    for (const auto& [curve, suffix] :
         {std::pair{&curve_x, "_allan_x.csv"}, std::pair{&curve_y, "_allan_y.csv"}}) {
        CsvWriter w(prefix + suffix, "tau,avar,bins");
        for (const AllanPoint& p : curve->points)
            w.row({p.tau, p.avar, static_cast<double>(p.bins)});
    }
    {
        CsvWriter w(prefix + "_angle.csv",
                    "bin,t,angle_avg_x,angle_avg_y,angle_carouseled");
        for (std::size_t t = 0; t < bins; ++t)
            w.row({static_cast<double>(t + 1),
                   static_cast<double>(t + 1) * config.period, angle_x.values[t],
                   angle_y.values[t], angle_car.values[t]});
    }

    json results;
    for (const auto& [params, key] : {std::pair{&result.params_x, "params_x"},
                                      std::pair{&result.params_y, "params_y"}}) {
        results[key] = {{"white_variance_at_1s", params->white_variance_at_1s},
                        {"rrw_variance", params->rrw_variance},
                        {"bias_instability", params->bias_instability},
                        {"tau_ref_rrw", params->tau_ref_rrw}};
    }
    results["exceedance_fraction"] = result.exceedance_fraction;
    results["terminal_angle_rad"] = {{"averaged_x", result.terminal_angle_avg_x},
                                     {"averaged_y", result.terminal_angle_avg_y},
                                     {"carouseled", result.terminal_angle_carousel}};
    results["terminal_angle_deg"] = {
        {"averaged_x", result.terminal_angle_avg_x * 180.0 / std::numbers::pi},
        {"averaged_y", result.terminal_angle_avg_y * 180.0 / std::numbers::pi},
        {"carouseled", result.terminal_angle_carousel * 180.0 / std::numbers::pi}};
    write_sidecar(prefix + ".json", config, results);

    result.files = {prefix + "_bins.csv", prefix + "_allan_x.csv",
                    prefix + "_allan_y.csv", prefix + "_angle.csv",
                    prefix + ".json"};
    return result;
}

}  // namespace carousim
