#include "xkerr/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xkerr/errors.hpp"
#include "xkerr/numerics.hpp"

namespace xkerr {

namespace {
constexpr double kQuarterRootTwoPi = 0.63161877774606470129;  // (2 pi)^(-1/4)
constexpr double kInvSqrtTwoPi = 0.39894228040143267794;      // (2 pi)^(-1/2)
}  // namespace

Complex kernel_eval(double alpha, double phi, double x) {
    double mean = 2.0 * alpha * std::cos(phi);
    double dev = x - mean;
    double mag = kQuarterRootTwoPi * std::exp(-0.25 * dev * dev);
    double w = reduce_two_pi(alpha * std::sin(phi) * dev);
    return std::polar(mag, w);
}

OutcomeDensity::OutcomeDensity(std::vector<GaussianComponent> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("outcome density needs components");
    double total = 0.0;
    for (const GaussianComponent& c : components_) {
        if (!(c.weight > 0.0)) throw std::invalid_argument("component weights must be positive");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("component weights must sum to 1");
}

double OutcomeDensity::operator()(double x) const {
    double d = 0.0;
    for (const GaussianComponent& c : components_) {
        double dev = x - c.mean;
        d += c.weight * kInvSqrtTwoPi * std::exp(-0.5 * dev * dev);
    }
    return d;
}

double OutcomeDensity::cdf(double x) const {
    double p = 0.0;
    for (const GaussianComponent& c : components_) p += c.weight * normal_cdf(x - c.mean);
    return p;
}

OutcomeDensity outcome_density(const JointState& joint) {
    if (joint.branches.empty()) throw std::invalid_argument("joint state has no branches");
    std::vector<GaussianComponent> raw;
    raw.reserve(joint.branches.size());
    for (const Branch& b : joint.branches)
        raw.push_back({std::norm(b.amplitude), 2.0 * joint.alpha * std::cos(b.probe_phase)});
    std::sort(raw.begin(), raw.end(),
              [](const GaussianComponent& a, const GaussianComponent& b) { return a.mean < b.mean; });
    // Adjacent means within the merge tolerance belong to one physical peak;
    // +/- phi branches land on bit-identical means, so the first member's
    // mean is the group's mean.
    std::vector<GaussianComponent> merged;
    for (const GaussianComponent& c : raw) {
        if (!merged.empty() && c.mean - merged.back().mean < kMeanMergeTol)
            merged.back().weight += c.weight;
        else
            merged.push_back(c);
    }
    double total = 0.0;
    for (GaussianComponent& c : merged) total += c.weight;
    // The joint state is unit-normalized up to rounding; rescale so the
    // mixture is exactly normalized.
    for (GaussianComponent& c : merged) c.weight /= total;
    return OutcomeDensity(std::move(merged));
}

std::size_t sample_component(const OutcomeDensity& density, RandomStream& rng) {
    double u = rng.uniform01();
    double acc = 0.0;
    const auto& comps = density.components();
    for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
        acc += comps[i].weight;
        if (u < acc) return i;
    }
    return comps.size() - 1;
}

double sample_outcome(const OutcomeDensity& density, RandomStream& rng) {
    std::size_t i = sample_component(density, rng);
    return density.components()[i].mean + rng.gaussian();
}

double sample_outcome(const JointState& joint, RandomStream& rng) {
    return sample_outcome(outcome_density(joint), rng);
}

double collapsed_weight(const JointState& joint, double x) {
    double s = 0.0;
    for (const Branch& b : joint.branches)
        s += std::norm(b.amplitude * kernel_eval(joint.alpha, b.probe_phase, x));
    return s;
}

SignalState collapse(const JointState& joint, double x) {
    if (joint.branches.empty()) throw std::invalid_argument("joint state has no branches");
    double weight = collapsed_weight(joint, x);
    if (!(weight > 1e-300))
        throw NumericalVoidError("conditional state at x has vanishing weight");
    std::map<FockKet, Complex> kets;
    for (const Branch& b : joint.branches)
        kets[b.ket] += b.amplitude * kernel_eval(joint.alpha, b.probe_phase, x);
    return normalize(SignalState(joint.n, std::move(kets)));
}

GridSpec default_grid(const OutcomeDensity& density) {
    double lo = density.components().front().mean;
    double hi = lo;
    for (const GaussianComponent& c : density.components()) {
        lo = std::min(lo, c.mean);
        hi = std::max(hi, c.mean);
    }
    return GridSpec{lo - 6.0, hi + 6.0, 2001};
}

std::vector<std::pair<double, double>> density_grid(const OutcomeDensity& density,
                                                    const GridSpec& grid) {
    if (grid.points < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (!(grid.max > grid.min)) throw std::invalid_argument("grid needs max > min");
    std::vector<std::pair<double, double>> rows;
    rows.reserve(static_cast<std::size_t>(grid.points));
    double step = (grid.max - grid.min) / (grid.points - 1);
    for (int i = 0; i < grid.points; ++i) {
        double x = grid.min + step * i;
        rows.emplace_back(x, density(x));
    }
    return rows;
}

}  // namespace xkerr
