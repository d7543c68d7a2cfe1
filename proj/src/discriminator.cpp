#include "xkerr/discriminator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xkerr/numerics.hpp"

namespace xkerr {

namespace {

// Half the ket asymmetry (n1 - n2)/2 of bin m's wide-side ket: m for even n,
// m + 1/2 for odd n.
double peak_index(int n, int m) { return (n % 2 == 0) ? m : m + 0.5; }

}  // namespace

std::vector<double> peak_means(int n, double theta, double alpha) {
    if (n < 1) throw std::invalid_argument("peak means need n >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("probe amplitude must be positive");
    std::vector<double> means;
    for (int m = n / 2; m >= 0; --m)
        means.push_back(2.0 * alpha * std::cos(peak_index(n, m) * (n - 1) * theta));
    return means;
}

ThresholdSet thresholds(int n, double theta, double alpha) {
    std::vector<double> means = peak_means(n, theta, alpha);
    for (std::size_t i = 0; i + 1 < means.size(); ++i)
        if (means[i + 1] - means[i] < 1e-12)
            throw std::invalid_argument("adjacent peaks are degenerate, no thresholds exist");
    ThresholdSet t;
    t.n = n;
    t.theta = theta;
    t.alpha = alpha;
    const int half = n / 2;
    for (int k = 0; k < half; ++k) {
        double a1 = (0.5 * n - k) * (n - 1) * theta;
        double a2 = (0.5 * n - k - 1) * (n - 1) * theta;
        t.cuts.push_back(alpha * (std::cos(a1) + std::cos(a2)));
    }
    for (int i = 0; i <= half; ++i) t.labels.push_back(IntervalLabel{half - i, i});
    return t;
}

IntervalLabel classify(const ThresholdSet& thresholds, double x) {
    auto it = std::lower_bound(thresholds.cuts.begin(), thresholds.cuts.end(), x);
    return thresholds.labels[static_cast<std::size_t>(it - thresholds.cuts.begin())];
}

double correction_phase(int n, double theta, double alpha, int bin_m, double x) {
    if (bin_m < 0 || bin_m > n / 2) throw std::invalid_argument("bin index out of range");
    double u = peak_index(n, bin_m);
    if (u == 0.0) return 0.0;
    double angle = u * (n - 1) * theta;
    double w = reduce_two_pi(alpha * std::sin(angle) * (x - 2.0 * alpha * std::cos(angle)));
    return w / u;
}

DetectPipeline::DetectPipeline(const SignalState& signal, double theta, double alpha,
                               const ProtocolLimits& limits)
    : joint_(evolve_protocol(signal, theta, alpha, limits)),
      density_(outcome_density(joint_)),
      thresholds_(xkerr::thresholds(signal.n(), theta, alpha)) {
    truth_.reserve(density_.components().size());
    for (const GaussianComponent& c : density_.components())
        truth_.push_back(classify(thresholds_, c.mean).m);
}

MeasurementRecord DetectPipeline::run_at(double x) const {
    IntervalLabel bin = classify(thresholds_, x);
    SignalState conditional = collapse(joint_, x);
    double delta = correction_phase(thresholds_.n, thresholds_.theta, thresholds_.alpha, bin.m, x);
    SignalState output = apply_mode_phase(conditional, 1, delta);
    return MeasurementRecord{x, bin.m, bin.l, delta, std::move(output)};
}

DetectPipeline::Trial DetectPipeline::run(RandomStream& rng) const {
    std::size_t comp = sample_component(density_, rng);
    double x = density_.components()[comp].mean + rng.gaussian();
    return Trial{run_at(x), truth_[comp], comp};
}

MeasurementRecord detect(const SignalState& signal, double theta, double alpha, RandomStream& rng,
                         const ProtocolLimits& limits) {
    DetectPipeline pipeline(signal, theta, alpha, limits);
    return pipeline.run(rng).record;
}

}  // namespace xkerr
