// End-to-end acceptance checks. Each criterion prints a single PASS/FAIL
// line; the process exits nonzero when any criterion fails. Tolerances are
// pinned next to each check.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "carousim/allan.hpp"
#include "carousim/carousel.hpp"
#include "carousim/constavar.hpp"
#include "carousim/experiments.hpp"
#include "carousim/noise.hpp"

using namespace carousim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int index, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", index,
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

struct LineFit {
    double slope = 0.0;
    double slope_se = 0.0;
};

// OLS fit of v against its index with the residual-based standard error of
// the slope.
LineFit fit_line(const std::vector<double>& v) {
    const double m = static_cast<double>(v.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = static_cast<double>(i);
        sx += x;
        sy += v[i];
        sxx += x * x;
        sxy += x * v[i];
    }
    const double denom = m * sxx - sx * sx;
    LineFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.slope * sx) / m;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = v[i] - intercept - fit.slope * static_cast<double>(i);
        ss_res += r * r;
    }
    fit.slope_se = std::sqrt(ss_res / (m - 2.0) * m / denom);
    return fit;
}

struct BinStats {
    std::vector<double> sum, sumsq;
    std::size_t count = 0;

    explicit BinStats(std::size_t bins) : sum(bins, 0.0), sumsq(bins, 0.0) {}

    void add(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            sum[i] += values[i];
            sumsq[i] += values[i] * values[i];
        }
        ++count;
    }

    std::vector<double> variance() const {
        const double m = static_cast<double>(count);
        std::vector<double> v(sum.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (sumsq[i] - sum[i] * sum[i] / m) / (m - 1.0);
        return v;
    }
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criteria 1 and 2: rate-random-walk variance propagation --------------

void criteria_rrw_variance() {
    constexpr std::size_t kRealizations = 1000;
    constexpr std::size_t kN = 200;
    constexpr std::size_t kBins = 50;
    const CarouselConfig config{kN, 2.0};
    const std::vector<ProcessSpec> rrw{{ProcessKind::Rrw, 1.0, 0.0, 0.0}};

    const auto start = std::chrono::steady_clock::now();
    BinStats car(kBins), avg(kBins);
    for (std::size_t r = 0; r < kRealizations; ++r) {
        const CarouselSignal sig = synthesize_pair(
            config, 0.0, 0.0, rrw, rrw, kBins, substream(Seed{1003, 0}, r));
        car.add(carousel_average(sig.x, sig.y, config).values);
        avg.add(direct_average(sig.x, kN).values);
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    const std::vector<double> car_var = car.variance();
    const std::vector<double> avg_var = avg.variance();

    // Criterion 1: flat carouseled variance at N/(2 pi^2), zero trend, < 60 s.
    const double expected_car =
        static_cast<double>(kN) / (2.0 * std::numbers::pi * std::numbers::pi);
    double car_mean = 0.0;
    for (double v : car_var) car_mean += v / static_cast<double>(kBins);
    const LineFit car_fit = fit_line(car_var);
    const bool c1_mean = std::abs(car_mean / expected_car - 1.0) < 0.10;
    const bool c1_trend = std::abs(car_fit.slope) < 3.0 * car_fit.slope_se;
    const bool c1_time = elapsed < 60.0;
    report(1, c1_mean && c1_trend && c1_time,
           fmt("carouseled RRW variance flat: mean %.4f vs %.4f (tol 10%%), "
               "slope %.4g (3 sigma = %.4g), %.1f s (budget 60 s)",
               car_mean, expected_car, car_fit.slope, 3.0 * car_fit.slope_se,
               elapsed));

    // Criterion 2: averaged bin-2 level 4N/3 and per-bin increment N.
    const double expected_bin2 = 4.0 * static_cast<double>(kN) / 3.0;
    const double expected_inc = static_cast<double>(kN);
    const double inc = fit_line(avg_var).slope;
    const bool c2_bin2 = std::abs(avg_var[1] / expected_bin2 - 1.0) < 0.10;
    const bool c2_inc = std::abs(inc / expected_inc - 1.0) < 0.10;
    report(2, c2_bin2 && c2_inc,
           fmt("averaged RRW variance: bin 2 %.1f vs %.1f, increment %.1f vs "
               "%.1f (tol 10%%)",
               avg_var[1], expected_bin2, inc, expected_inc));
}

// ---- criterion 3: asymptotic reduction factor ------------------------------

void criterion_reduction_factor() {
    const double factor = reduction_factor_rrw();
    const bool pass = std::abs(factor - 0.962) < 0.001;
    report(3, pass, fmt("RRW variance reduction factor %.5f vs 0.962 +- 0.001",
                        factor));
}

// ---- criterion 4: additive bias cancels under carouseling ------------------

void criterion_bias_cancellation() {
    const double beta = 0.123;
    bool pass = true;
    double worst = 0.0;
    for (std::size_t n = 2; n <= 64; ++n) {
        const CarouselConfig config{n, 1.0};
        const SampleSeries constant{
            std::vector<double>(n, beta), config.sample_interval(), ""};
        const SampleSeries est = carousel_average(constant, constant, config);
        worst = std::max(worst, std::abs(est.values[0]));
        if (std::abs(est.values[0]) >= 1e-12 * std::abs(beta)) pass = false;
    }
    report(4, pass,
           fmt("bias cancellation for N in 2..64: worst |estimate| %.3g "
               "(limit %.3g)",
               worst, 1e-12 * beta));
}

// ---- criterion 5: white-noise parity ---------------------------------------

void criterion_white_parity() {
    constexpr std::size_t kN = 200;
    constexpr std::size_t kBins = 100'000;
    const CarouselConfig config{kN, 2.0};
    const std::vector<ProcessSpec> white{{ProcessKind::White, 1.0, 0.0, 0.0}};
    const CarouselSignal sig = synthesize_pair(config, 0.0, 0.0, white, white,
                                               kBins, Seed{1005, 0});
    const std::vector<double> car =
        carousel_average(sig.x, sig.y, config).values;
    const std::vector<double> avg = direct_average(sig.x, kN).values;

    auto variance = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return ss / static_cast<double>(v.size() - 1);
    };
    const double expected = 1.0 / static_cast<double>(kN);
    const double var_car = variance(car);
    const double var_avg = variance(avg);
    const bool pass = std::abs(var_car / expected - 1.0) < 0.02 &&
                      std::abs(var_avg / expected - 1.0) < 0.02;
    report(5, pass,
           fmt("white-noise parity at %zu bins: carouseled %.6f, averaged "
               "%.6f vs %.6f (tol 2%%)",
               kBins, var_car, var_avg, expected));
}

// ---- criterion 6: deterministic constant-Allan-variance sequences ----------

void criterion_deterministic_sequences() {
    bool pass = true;
    for (std::size_t n = 1; n <= 14 && pass; ++n) {
        const DyadicSequence seq = gen_S(n);
        for (std::size_t tau = 1; tau < seq.values.size() && pass; tau *= 2) {
            const std::size_t bins = seq.values.size() / tau;
            std::vector<double> means(bins);
            for (std::size_t j = 0; j < bins; ++j) {
                double acc = 0.0;
                for (std::size_t i = 0; i < tau; ++i)
                    acc += seq.values[j * tau + i];
                means[j] = acc / static_cast<double>(tau);
            }
            double stat = 0.0;
            for (std::size_t j = 1; j < bins; ++j) {
                if (std::abs(means[j] - means[j - 1]) != 1.0) pass = false;
                stat += (means[j] - means[j - 1]) * (means[j] - means[j - 1]);
            }
            stat /= 2.0 * static_cast<double>(bins - 1);
            if (stat != 0.5) pass = false;
        }
    }
    report(6, pass,
           "deterministic sequences n <= 14: every dyadic bin-mean difference "
           "is exactly +-1 and the two-sample statistic is exactly 0.5");
}

// ---- criterion 7: stochastic sequences and the MVUE -------------------------

void criterion_stochastic_sequences() {
    constexpr std::size_t kRealizations = 10'000;
    constexpr std::size_t kLevels = 10;
    std::vector<std::size_t> taus;
    for (std::size_t tau = 1; tau < (std::size_t{1} << kLevels); tau *= 2)
        taus.push_back(tau);

    std::vector<double> mean_two_avar(taus.size(), 0.0);
    double tau1_sum = 0, tau1_sumsq = 0, mvue_sum = 0, mvue_sumsq = 0;
    for (std::size_t r = 0; r < kRealizations; ++r) {
        const DyadicSequence seq = gen_R(kLevels, substream(Seed{1007, 0}, r));
        const AllanCurve curve =
            allan_variance(SampleSeries{seq.values, 1.0, ""}, taus);
        for (std::size_t i = 0; i < taus.size(); ++i)
            mean_two_avar[i] += 2.0 * curve.points[i].avar;
        const double t1 = 2.0 * curve.points[0].avar;
        tau1_sum += t1;
        tau1_sumsq += t1 * t1;
        const double mv = mvue_c2(seq);
        mvue_sum += mv;
        mvue_sumsq += mv * mv;
    }
    const double m = static_cast<double>(kRealizations);
    bool unbiased = true;
    double worst = 0.0;
    for (double& v : mean_two_avar) {
        v /= m;
        worst = std::max(worst, std::abs(v - 1.0));
        if (std::abs(v - 1.0) >= 0.03) unbiased = false;
    }
    const double tau1_var = (tau1_sumsq - tau1_sum * tau1_sum / m) / (m - 1.0);
    const double mvue_var = (mvue_sumsq - mvue_sum * mvue_sum / m) / (m - 1.0);
    const bool pass = unbiased && mvue_var < tau1_var;
    report(7, pass,
           fmt("stochastic sequences: worst |2 avar - 1| %.4f (tol 0.03), "
               "MVUE spread %.4f < tau-1 estimator spread %.4f",
               worst, mvue_var, tau1_var));
}

// ---- criterion 8: K-matrix structural identities ----------------------------

void criterion_structural_identities() {
    bool pass = true;

    const KMatrix k2 = build_K(2);
    pass &= k2.entries ==
            std::vector<double>{-0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 0.5, -0.5};

    const double expected_cov[4][4] = {{0.5, 0, -0.5, 0},
                                       {0, 0.5, 0, -0.5},
                                       {-0.5, 0, 0.5, 0},
                                       {0, -0.5, 0, 0.5}};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            double acc = 0.0;
            for (std::size_t i = 0; i < 2; ++i) acc += k2.at(r, i) * k2.at(c, i);
            pass &= acc == expected_cov[r][c];
        }

    const double a[3][4] = {{-1, 1, 0, 0}, {0, -1, 1, 0}, {0, 0, -1, 1}};
    const double expected_akka[3][3] = {{1, 0, -1}, {0, 1, 0}, {-1, 0, 1}};
    double ak[3][2] = {};
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t c = 0; c < 4; ++c) ak[r][i] += a[r][c] * k2.at(c, i);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            double acc = 0.0;
            for (std::size_t i = 0; i < 2; ++i) acc += ak[r][i] * ak[c][i];
            pass &= acc == expected_akka[r][c];
        }

    pass &= pinv_K(2) ==
            std::vector<double>{-0.5, -0.5, 0.5, 0.5, -0.5, 0.5, 0.5, -0.5};

    for (std::size_t n = 1; n <= 12 && pass; ++n) {
        const KMatrix k = build_K(n);
        for (std::size_t r = 0; r < k.rows(); ++r) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += k.at(r, i) * k.at(r, i);
            if (acc != static_cast<double>(n) / 4.0) pass = false;
        }
    }

    const KMatrix k4 = build_K(4);
    for (std::size_t r = 0; r < 16; ++r) {
        const std::size_t gray = r ^ (r >> 1);
        for (std::size_t i = 0; i < 4; ++i)
            pass &= k4.at(r, i) + 0.5 ==
                    static_cast<double>((gray >> (3 - i)) & 1u);
    }

    report(8, pass,
           "structural identities: K_2, K K', A K K' A', pseudoinverse, "
           "diag(K K') = n/4 for n <= 12, Gray-code form of K_16x4");
}

// ---- criterion 9: flicker behavior and synthetic field round trip ----------

void criterion_flicker() {
    // (a) coefficient tail limit.
    const double d = 0.5;
    const FractionalMatrix fm = flicker_coefficients(10'001, d);
    const double limit = 1.0 / std::tgamma(d);
    const double ratio = fm.coefficients[10'000] / std::pow(10'000.0, d - 1.0);
    const bool tail_ok = std::abs(ratio / limit - 1.0) < 0.01;

    // (b) ensemble comparison of carouseled and averaged flicker variance.
    constexpr std::size_t kRealizations = 500;
    constexpr std::size_t kN = 200;
    constexpr std::size_t kBins = 50;
    const CarouselConfig config{kN, 2.0};
    const std::vector<ProcessSpec> flicker{{ProcessKind::Flicker, 1.0, 0.0, d}};
    BinStats car(kBins), avg(kBins);
    for (std::size_t r = 0; r < kRealizations; ++r) {
        const CarouselSignal sig = synthesize_pair(
            config, 0.0, 0.0, flicker, flicker, kBins,
            substream(Seed{1009, 0}, r));
        car.add(carousel_average(sig.x, sig.y, config).values);
        avg.add(direct_average(sig.x, kN).values);
    }
    const std::vector<double> car_var = car.variance();
    const std::vector<double> avg_var = avg.variance();
    const LineFit car_fit = fit_line(car_var);
    const bool trend_ok = std::abs(car_fit.slope) < 3.0 * car_fit.slope_se;
    const double se_scale = std::sqrt(2.0 / (static_cast<double>(kRealizations) - 1.0));
    const double gap = avg_var[kBins - 1] - car_var[kBins - 1];
    const double gap_se =
        se_scale * std::hypot(avg_var[kBins - 1], car_var[kBins - 1]);
    const bool smaller_ok = gap > 3.0 * gap_se;

    // (c) synthetic round trip at the reference gyro noise levels.
    const double fs = 100.0;
    const double white_x = 3e-7, white_y = 1e-7;  // Allan value at 1 s
    const double rrw_x = 3e-10, rrw_y = 2e-10;    // (rad/s)^2 / s
    const double bias = 3e-3;                     // rad/s, warm-up level
    const CarouselConfig field{200, 2.0};
    const std::vector<ProcessSpec> specs_x{
        {ProcessKind::White, white_x * fs, 0.0, 0.0},
        {ProcessKind::Rrw, rrw_x / fs, 0.0, 0.0},
        {ProcessKind::Bias, 0.0, bias, 0.0}};
    const std::vector<ProcessSpec> specs_y{
        {ProcessKind::White, white_y * fs, 0.0, 0.0},
        {ProcessKind::Rrw, rrw_y / fs, 0.0, 0.0},
        {ProcessKind::Bias, 0.0, bias, 0.0}};
    const std::size_t revolutions = 1800;  // one hour at T = 2 s
    const CarouselSignal field_sig = synthesize_pair(
        field, 0.0, 0.0, specs_x, specs_y, revolutions, Seed{1010, 0});
    const SampleSeries avg_rate = direct_average(field_sig.x, 200);
    const SampleSeries car_rate =
        carousel_average(field_sig.x, field_sig.y, field);
    const double angle_avg =
        integrate_angle(avg_rate, field.period).values.back();
    const double angle_car =
        integrate_angle(car_rate, field.period).values.back();
    const double angle_ratio = std::abs(angle_avg) / std::abs(angle_car);
    const bool angle_ok = angle_ratio >= 100.0;

    // Parameter recovery from ten synthetic logs at the x-gyro levels.
    const std::size_t n = 360'000;
    const std::vector<ProcessSpec> recovery{
        {ProcessKind::White, white_x * fs, 0.0, 0.0},
        {ProcessKind::Rrw, rrw_x / fs, 0.0, 0.0}};
    const std::vector<std::size_t> taus{100, 400, 1600, 6400, 25'600};
    std::vector<double> mean_avar(taus.size(), 0.0);
    for (std::size_t r = 0; r < 10; ++r) {
        const SampleSeries log = compose_error(
            recovery, n, substream(Seed{1011, 0}, r), 1.0 / fs);
        const AllanCurve curve = allan_variance(log, taus);
        for (std::size_t i = 0; i < taus.size(); ++i)
            mean_avar[i] += curve.points[i].avar / 10.0;
    }
    AllanCurve mean_curve;
    for (std::size_t i = 0; i < taus.size(); ++i)
        mean_curve.points.push_back(
            {static_cast<double>(taus[i]) / fs, mean_avar[i], n / taus[i]});
    const GyroErrorParams params = estimate_params(mean_curve, 1.0, 256.0);
    const bool recover_ok =
        std::abs(params.white_variance_at_1s / white_x - 1.0) < 0.20 &&
        std::abs(params.rrw_variance / rrw_x - 1.0) < 0.30;

    report(9, tail_ok && trend_ok && smaller_ok && angle_ok && recover_ok,
           fmt("flicker tail ratio %.4f vs %.4f (tol 1%%); carouseled trend "
               "%.3g (3 sigma %.3g); bin-50 gap %.3g > %.3g; angle ratio "
               "%.0fx (need 100x); recovered white %.3g rrw %.3g",
               ratio, limit, car_fit.slope, 3.0 * car_fit.slope_se, gap,
               3.0 * gap_se, angle_ratio, params.white_variance_at_1s,
               params.rrw_variance));
}

// ---- criterion 10: byte-identical reruns -----------------------------------

void criterion_determinism() {
    ExperimentConfig c;
    c.experiment = "rrw-variance";
    c.realizations = 50;
    c.samples_per_rev = 20;
    c.bins = 10;
    c.seed = Seed{4242, 0};
    c.out = (fs::temp_directory_path() / "acceptance_rerun").string();

    const std::vector<fs::path> first = run_experiment(c);
    std::vector<std::string> snapshots;
    for (const fs::path& f : first) snapshots.push_back(slurp(f));
    const std::vector<fs::path> second = run_experiment(c);

    bool pass = first == second && !first.empty();
    for (std::size_t i = 0; pass && i < first.size(); ++i)
        pass = slurp(first[i]) == snapshots[i];
    for (const fs::path& f : first) fs::remove(f);
    report(10, pass,
           fmt("rerun with identical config and seed: %zu report files "
               "byte-identical",
               first.size()));
}

}  // namespace

int main() {
    criteria_rrw_variance();
    criterion_reduction_factor();
    criterion_bias_cancellation();
    criterion_white_parity();
    criterion_deterministic_sequences();
    criterion_stochastic_sequences();
    criterion_structural_identities();
    criterion_flicker();
    criterion_determinism();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
