#pragma once

#include <cstdint>
#include <optional>

#include "xkerr/discriminator.hpp"

namespace xkerr {

// One gap between adjacent outcome peaks: its exact width, the small-angle
// approximation to it, and the misidentification probability a midpoint cut
// leaves behind.
struct GapRecord {
    int k = 0;
    double x_d_exact = 0.0;
    double x_d_approx = 0.0;
    double epsilon = 0.0;
};

// Discrimination-error budget of a configuration, one record per gap.
struct ErrorReport {
    int n = 0;
    double theta = 0.0;
    double alpha = 0.0;
    double n_alpha = 0.0;  // mean probe photon number, alpha^2
    std::vector<GapRecord> gaps;
    double epsilon_max = 0.0;
};

// Exact distance between the peaks flanking cut k:
//   4 alpha sin((n - 2k - 1)(n - 1) theta / 2) sin((n - 1) theta / 2).
double peak_distance(int n, double theta, double alpha, int k);

// Small-angle form (n - 2k - 1)(n - 1)^2 alpha theta^2.
double peak_distance_approx(int n, double theta, double alpha, int k);

// Closed-form error budget for every gap, epsilon from the exact distance.
ErrorReport error_probabilities(int n, double theta, double alpha);

// Same quantity for one gap by direct numerical integration of the two
// flanking unit-variance peaks' tail mass across the midpoint cut.  Slower
// than the closed form; exists to check it.
double error_probability_oracle(int n, double theta, double alpha, int k);

// Tallies of one announced bin in a sampled run, keyed by the bin of the
// component each outcome was drawn from.
struct BinStats {
    int m = 0;
    int l = 0;
    double weight = 0.0;  // prior probability of this bin's component(s)
    long long trials = 0;
    long long errors = 0;
    double rate = 0.0;
    double std_error = 0.0;
    double analytic = 0.0;  // adjacent-gap epsilon sum
};

struct MonteCarloReport {
    long long trials = 0;
    long long errors = 0;
    double rate = 0.0;
    double std_error = 0.0;
    double analytic = 0.0;
    std::vector<BinStats> bins;  // left to right; only bins holding weight
};

// Samples `trials` outcomes, classifies each, and compares against the peak
// it was drawn from.  Each trial runs on its own substream derived from one
// draw of rng, so the tally is independent of evaluation order.
MonteCarloReport monte_carlo_error(const SignalState& signal, double theta, double alpha,
                                   long long trials, RandomStream& rng,
                                   const ProtocolLimits& limits = {});

// Probe strength needed at interaction budget n*theta so the smallest gap,
// in its small-angle form, comes out at `target_gap`.
struct OperatingPointReport {
    std::optional<int> n;        // empty for the asymptotic point
    double n_theta = 0.0;
    std::optional<double> theta;
    double alpha = 0.0;
    double n_alpha = 0.0;
    double epsilon_max = 0.0;    // from the small-angle gap, erfc(gap / (2 sqrt 2)) / 2
    std::optional<ErrorReport> exact;
};

// The nominal weak-interaction operating point: n*theta = 10^-2 and alpha
// chosen so the small-angle smallest gap (1 - 1/n)^2 alpha (n theta)^2 equals
// 4 sqrt 2, i.e. epsilon_max = erfc(2)/2.  Includes the exact per-gap budget
// at that configuration.
OperatingPointReport reproduce_operating_point(int n);

// Same point in the large-n limit: the gap coefficient tends to alpha
// (n theta)^2, so alpha = 4 sqrt 2 x 10^4.
OperatingPointReport reproduce_asymptotic();

}  // namespace xkerr
