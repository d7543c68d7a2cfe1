#include "xkerr/analysis.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <stdexcept>

#include "xkerr/numerics.hpp"
#include "xkerr/rng.hpp"

namespace xkerr {

namespace {

void check_gap_index(int n, int k) {
    if (n < 2) throw std::invalid_argument("gaps need n >= 2");
    if (k < 0 || k >= n / 2) throw std::invalid_argument("gap index out of range");
}

}  // namespace

double peak_distance(int n, double theta, double alpha, int k) {
    check_gap_index(n, k);
    double half_step = 0.5 * (n - 1) * theta;
    return 4.0 * alpha * std::sin((n - 2 * k - 1) * half_step) * std::sin(half_step);
}

double peak_distance_approx(int n, double theta, double alpha, int k) {
    check_gap_index(n, k);
    return (n - 2 * k - 1) * (n - 1) * (n - 1) * alpha * theta * theta;
}

ErrorReport error_probabilities(int n, double theta, double alpha) {
    if (n < 1) throw std::invalid_argument("error report needs n >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("probe amplitude must be positive");
    ErrorReport report;
    report.n = n;
    report.theta = theta;
    report.alpha = alpha;
    report.n_alpha = alpha * alpha;
    for (int k = 0; k < n / 2; ++k) {
        GapRecord gap;
        gap.k = k;
        gap.x_d_exact = peak_distance(n, theta, alpha, k);
        gap.x_d_approx = peak_distance_approx(n, theta, alpha, k);
        gap.epsilon = gaussian_overlap_error(gap.x_d_exact);
        report.epsilon_max = std::max(report.epsilon_max, gap.epsilon);
        report.gaps.push_back(gap);
    }
    return report;
}

double error_probability_oracle(int n, double theta, double alpha, int k) {
    check_gap_index(n, k);
    ThresholdSet cuts = thresholds(n, theta, alpha);
    std::vector<double> means = peak_means(n, theta, alpha);
    double cut = cuts.cuts[static_cast<std::size_t>(k)];
    double left = means[static_cast<std::size_t>(k)];
    double right = means[static_cast<std::size_t>(k) + 1];
    // Unit-variance peaks: 45 sigma past the cut the density is identically
    // zero in double precision.
    using quad = boost::math::quadrature::gauss_kronrod<double, 15>;
    auto tail = [](double mu, double a, double b) {
        if (a >= b) return 0.0;
        return quad::integrate([mu](double x) { return normal_pdf(x - mu); }, a, b, 12, 1e-13);
    };
    double upper = tail(left, cut, left + 45.0);
    double lower = tail(right, right - 45.0, cut);
    return 0.5 * (upper + lower);
}

MonteCarloReport monte_carlo_error(const SignalState& signal, double theta, double alpha,
                                   long long trials, RandomStream& rng,
                                   const ProtocolLimits& limits) {
    if (trials < 1) throw std::invalid_argument("trial count must be positive");
    DetectPipeline pipeline(signal, theta, alpha, limits);
    const auto& comps = pipeline.density().components();
    const ThresholdSet& cuts = pipeline.cuts();

    struct Tally {
        double weight = 0.0;
        long long trials = 0;
        long long errors = 0;
    };
    std::map<int, Tally, std::greater<int>> bins;  // left to right means m descending
    for (std::size_t i = 0; i < comps.size(); ++i)
        bins[pipeline.truth_m(i)].weight += comps[i].weight;

    std::uint64_t base = rng.next_u64();
    long long total_errors = 0;
    for (long long t = 0; t < trials; ++t) {
        RandomStream stream(mix_seed(base, static_cast<std::uint64_t>(t)));
        std::size_t c = sample_component(pipeline.density(), stream);
        double x = comps[c].mean + stream.gaussian();
        int want = pipeline.truth_m(c);
        Tally& tally = bins[want];
        ++tally.trials;
        if (classify(cuts, x).m != want) {
            ++tally.errors;
            ++total_errors;
        }
    }

    ErrorReport budget = error_probabilities(signal.n(), theta, alpha);
    const int half = signal.n() / 2;
    const int gap_count = static_cast<int>(budget.gaps.size());

    MonteCarloReport report;
    report.trials = trials;
    report.errors = total_errors;
    report.rate = static_cast<double>(total_errors) / static_cast<double>(trials);
    report.std_error = std::sqrt(report.rate * (1.0 - report.rate) / static_cast<double>(trials));
    for (const auto& [m, tally] : bins) {
        BinStats stats;
        stats.m = m;
        stats.l = half - m;
        stats.weight = tally.weight;
        stats.trials = tally.trials;
        stats.errors = tally.errors;
        if (tally.trials > 0) {
            stats.rate = static_cast<double>(tally.errors) / static_cast<double>(tally.trials);
            stats.std_error =
                std::sqrt(stats.rate * (1.0 - stats.rate) / static_cast<double>(tally.trials));
        }
        int interval = half - m;  // index of this bin's interval, left to right
        if (interval > 0) stats.analytic += budget.gaps[static_cast<std::size_t>(interval - 1)].epsilon;
        if (interval < gap_count) stats.analytic += budget.gaps[static_cast<std::size_t>(interval)].epsilon;
        report.analytic += stats.weight * stats.analytic;
        report.bins.push_back(stats);
    }
    return report;
}

namespace {

OperatingPointReport operating_point(std::optional<int> n) {
    OperatingPointReport report;
    report.n = n;
    report.n_theta = 1e-2;
    // Smallest small-angle gap: (1 - 1/n)^2 alpha (n theta)^2, tending to
    // alpha (n theta)^2 as n grows.  Pick alpha so it equals 4 sqrt 2.
    double shrink = 1.0;
    if (n) {
        shrink = (1.0 - 1.0 / *n) * (1.0 - 1.0 / *n);
        report.theta = report.n_theta / *n;
    }
    double gap_over_budget_sq = 4.0 * std::sqrt(2.0) * 1e4;  // (4 sqrt 2) / (n theta)^2
    report.alpha = gap_over_budget_sq / shrink;
    report.n_alpha = report.alpha * report.alpha;
    report.epsilon_max = gaussian_overlap_error(shrink * report.alpha * report.n_theta * report.n_theta);
    if (n) report.exact = error_probabilities(*n, *report.theta, report.alpha);
    return report;
}

}  // namespace

OperatingPointReport reproduce_operating_point(int n) {
    if (n < 2) throw std::invalid_argument("operating point needs n >= 2");
    return operating_point(n);
}

OperatingPointReport reproduce_asymptotic() { return operating_point(std::nullopt); }

}  // namespace xkerr
