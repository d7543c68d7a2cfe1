#pragma once

#include "xkerr/homodyne.hpp"

namespace xkerr {

// Which family member an outcome bin announces.  m counts in half-steps from
// the middle of the family (largest separation first), l = floor(n/2) - m
// indexes the defining sum.
struct IntervalLabel {
    int m = 0;
    int l = 0;
    friend bool operator==(const IntervalLabel&, const IntervalLabel&) = default;
};

// Decision boundaries on the measured quadrature.  cuts are ascending;
// labels has one entry per interval, left to right, so labels.size() ==
// cuts.size() + 1.  The leftmost interval belongs to the widest-split pair
// (m = floor(n/2), the NOON-type member).
struct ThresholdSet {
    int n = 0;
    double theta = 0.0;
    double alpha = 0.0;
    std::vector<double> cuts;
    std::vector<IntervalLabel> labels;
};

// Canonical peak positions 2 alpha cos(u_m (n-1) theta), ascending in x
// (descending in m), where u_m = m for even n and m + 1/2 for odd n.
std::vector<double> peak_means(int n, double theta, double alpha);

// Midpoint cuts between adjacent peaks:
//   cut_k = alpha [ cos((n/2 - k)(n-1) theta) + cos((n/2 - k - 1)(n-1) theta) ],
// k = 0 .. floor(n/2) - 1.  Rejects degenerate peaks (adjacent means closer
// than 1e-12).  n = 1 yields no cuts and a single interval.
ThresholdSet thresholds(int n, double theta, double alpha);

// Interval containing x.  A tie with a cut goes to the interval on its left.
IntervalLabel classify(const ThresholdSet& thresholds, double x);

// Feed-forward phase: delta such that exp(i delta n_hat_1) cancels the
// outcome-dependent relative phase of the conditional state in bin m.  Zero
// for the even-n middle bin, which has nothing to correct.
double correction_phase(int n, double theta, double alpha, int bin_m, double x);

// One measurement: the outcome, the announced bin, the applied correction,
// and the corrected conditional state.
struct MeasurementRecord {
    double x;
    int bin_m;
    int bin_l;
    double correction;
    SignalState output;
};

// Full protocol pass with a sampled outcome.
MeasurementRecord detect(const SignalState& signal, double theta, double alpha, RandomStream& rng,
                         const ProtocolLimits& limits = {});

// The per-shot pipeline with the evolve/threshold work hoisted out of the
// trial loop.  Also knows which component each outcome was drawn from, which
// gives trial loops their ground truth.
class DetectPipeline {
  public:
    DetectPipeline(const SignalState& signal, double theta, double alpha,
                   const ProtocolLimits& limits = {});

    struct Trial {
        MeasurementRecord record;
        int truth_m;             // bin of the component the outcome was drawn from
        std::size_t component;   // index into density().components()
    };

    Trial run(RandomStream& rng) const;

    // Measurement forced to land at x; no ground truth attached.
    MeasurementRecord run_at(double x) const;

    const JointState& joint() const { return joint_; }
    const OutcomeDensity& density() const { return density_; }
    const ThresholdSet& cuts() const { return thresholds_; }

    // Bin that the component's own peak sits in.
    int truth_m(std::size_t component) const { return truth_[component]; }

  private:
    JointState joint_;
    OutcomeDensity density_;
    ThresholdSet thresholds_;
    std::vector<int> truth_;
};

}  // namespace xkerr
