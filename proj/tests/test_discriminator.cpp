#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "xkerr/discriminator.hpp"
#include "xkerr/errors.hpp"
#include "xkerr/numerics.hpp"

using namespace xkerr;
using doctest::Approx;

namespace {

SignalState noon(int n) {
    double r = 1.0 / std::sqrt(2.0);
    return SignalState(n, {{{n, 0}, Complex{r, 0.0}}, {{0, n}, Complex{r, 0.0}}});
}

SignalState single_member(int n, int l) {
    InputSpec spec;
    spec.n = n;
    spec.amps.assign(n / 2 + 1, {Complex{0.0, 0.0}, Complex{0.0, 0.0}});
    spec.amps[l] = {Complex{0.6, 0.2}, Complex{-0.3, 0.7}};
    return build_input_state(spec);
}

}  // namespace

TEST_SUITE("discriminator") {

TEST_CASE("threshold positions for small n") {
    // n = 2: one cut at alpha (1 + cos theta)
    ThresholdSet two = thresholds(2, 0.05, 300.0);
    REQUIRE(two.cuts.size() == 1);
    CHECK(two.cuts[0] == Approx(300.0 * (1.0 + std::cos(0.05))).epsilon(1e-14));
    REQUIRE(two.labels.size() == 2);
    CHECK(two.labels[0] == IntervalLabel{1, 0});
    CHECK(two.labels[1] == IntervalLabel{0, 1});

    // n = 3: one cut at alpha (cos theta + cos 3 theta), the midpoint of the peaks
    ThresholdSet three = thresholds(3, 0.02, 150.0);
    REQUIRE(three.cuts.size() == 1);
    CHECK(three.cuts[0] == Approx(150.0 * (std::cos(0.02) + std::cos(0.06))).epsilon(1e-14));
    std::vector<double> peaks = peak_means(3, 0.02, 150.0);
    REQUIRE(peaks.size() == 2);
    CHECK(three.cuts[0] == Approx(0.5 * (peaks[0] + peaks[1])).epsilon(1e-13));

    // n = 4 frozen reference cuts
    ThresholdSet four = thresholds(4, 0.0025, 1000.0);
    REQUIRE(four.cuts.size() == 2);
    CHECK(four.cuts[0] == Approx(support::kCutN4K0).epsilon(1e-14));
    CHECK(four.cuts[1] == Approx(support::kCutN4K1).epsilon(1e-14));
    REQUIRE(four.labels.size() == 3);
    CHECK(four.labels[0] == IntervalLabel{2, 0});
    CHECK(four.labels[1] == IntervalLabel{1, 1});
    CHECK(four.labels[2] == IntervalLabel{0, 2});
}

TEST_CASE("n = 1 has a single interval and no cuts") {
    ThresholdSet one = thresholds(1, 0.05, 100.0);
    CHECK(one.cuts.empty());
    REQUIRE(one.labels.size() == 1);
    CHECK(one.labels[0] == IntervalLabel{0, 0});
    CHECK(classify(one, -1e9) == IntervalLabel{0, 0});
    CHECK(classify(one, 1e9) == IntervalLabel{0, 0});
}

TEST_CASE("degenerate peaks are rejected") {
    CHECK_THROWS_AS(thresholds(2, 0.0, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(thresholds(5, 0.0, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(thresholds(2, 1e-9, 100.0), std::invalid_argument);  // splits below 1e-12
}

TEST_CASE("cuts interleave the peaks and labels step down in m") {
    RandomStream rng(41);
    for (int rep = 0; rep < 30; ++rep) {
        int n = 2 + static_cast<int>(rng.uniform01() * 11);
        double theta = support::uniform_in(rng, 1e-3, 0.1 / n);
        double alpha = support::uniform_in(rng, 10.0, 1000.0);
        ThresholdSet cuts = thresholds(n, theta, alpha);
        std::vector<double> peaks = peak_means(n, theta, alpha);
        REQUIRE(cuts.cuts.size() + 1 == peaks.size());
        REQUIRE(cuts.labels.size() == peaks.size());
        for (std::size_t k = 0; k < cuts.cuts.size(); ++k) {
            CHECK(cuts.cuts[k] > peaks[k]);
            CHECK(cuts.cuts[k] < peaks[k + 1]);
        }
        CHECK(std::is_sorted(cuts.cuts.begin(), cuts.cuts.end()));
        for (std::size_t i = 0; i < cuts.labels.size(); ++i) {
            CHECK(cuts.labels[i].m == n / 2 - static_cast<int>(i));
            CHECK(cuts.labels[i].l == static_cast<int>(i));
        }
    }
}

TEST_CASE("classification is by interval with ties to the left") {
    ThresholdSet two = thresholds(2, 0.05, 300.0);
    CHECK(classify(two, 2 * 300.0) == IntervalLabel{0, 1});                   // at the inner peak
    CHECK(classify(two, 2 * 300.0 * std::cos(0.05)) == IntervalLabel{1, 0});  // at the outer peak
    CHECK(classify(two, -1e6) == IntervalLabel{1, 0});
    CHECK(classify(two, two.cuts[0]) == IntervalLabel{1, 0});  // tie -> lower interval

    ThresholdSet six = thresholds(6, 0.01, 500.0);
    IntervalLabel last = classify(six, -1e9);
    CHECK(last.m == 3);
    for (double x = six.cuts.front() - 1.0; x <= six.cuts.back() + 1.0; x += 0.05) {
        IntervalLabel here = classify(six, x);
        CHECK(here.m <= last.m);  // m never increases as x grows
        last = here;
    }
    CHECK(classify(six, 1e9).m == 0);
}

TEST_CASE("correction phase is zero where nothing needs correcting") {
    // even-n middle bin
    CHECK(correction_phase(4, 0.01, 200.0, 0, 404.0) == 0.0);
    CHECK(correction_phase(2, 0.05, 300.0, 0, 580.0) == 0.0);
    // at the exact peak the phase factor is already unity
    double theta = 0.1, alpha = 200.0;
    double peak = 2 * alpha * std::cos(theta);
    CHECK(correction_phase(2, theta, alpha, 1, peak) == Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(correction_phase(4, 0.01, 200.0, 3, 400.0), std::invalid_argument);
}

TEST_CASE("correction phase matches its definition away from the peak") {
    double theta = 0.1, alpha = 200.0, x = 398.0;
    // n = 2, outer bin: u = 1, delta = reduced(alpha sin((n-1)theta)(x - peak))
    double peak = 2 * alpha * std::cos(theta);
    double expect = reduce_two_pi(alpha * std::sin(theta) * (x - peak));
    CHECK(correction_phase(2, theta, alpha, 1, x) == Approx(expect).epsilon(1e-12));

    // odd n: u = m + 1/2; bin m = 1 of n = 3 has u = 3/2
    double theta3 = 0.03, alpha3 = 400.0;
    double u = 1.5;
    double peak3 = 2 * alpha3 * std::cos(u * 2 * theta3);
    double x3 = peak3 - 2.7;
    double expect3 = reduce_two_pi(alpha3 * std::sin(u * 2 * theta3) * (x3 - peak3)) / u;
    CHECK(correction_phase(3, theta3, alpha3, 1, x3) == Approx(expect3).epsilon(1e-12));
}

TEST_CASE("correction cancels the outcome-dependent relative phase") {
    // collapse a two-ket member at an off-peak x, apply the correction on
    // mode 1, and check the two amplitudes end up in phase again.
    ProtocolLimits loose{0.25};
    double theta = 0.1, alpha = 200.0;
    double r = 1.0 / std::sqrt(2.0);
    SignalState member = noon(2);
    JointState joint = evolve_protocol(member, theta, alpha, loose);
    double x = 398.0;
    SignalState collapsed = collapse(joint, x);
    double delta = correction_phase(2, theta, alpha, 1, x);
    SignalState corrected = apply_mode_phase(collapsed, 1, delta);
    Complex a20 = corrected.amplitude({2, 0});
    Complex a02 = corrected.amplitude({0, 2});
    CHECK(std::abs(std::arg(a20 / a02)) < 1e-10);
    CHECK(std::abs(a20) == Approx(r).epsilon(1e-12));
    CHECK(fidelity(corrected, member) == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("own-bin correction restores a member at any outcome") {
    RandomStream rng(42);
    for (int n = 2; n <= 10; ++n) {
        double theta = 0.08 / n, alpha = 150.0;
        for (int l = 0; l <= n / 2; ++l) {
            SignalState member = single_member(n, l);
            JointState joint = evolve_protocol(member, theta, alpha);
            OutcomeDensity density = outcome_density(joint);
            REQUIRE(density.components().size() == 1);
            double mean = density.components()[0].mean;
            int m = n / 2 - l;
            for (int draw = 0; draw < 10; ++draw) {
                double x = support::uniform_in(rng, mean - 15.0, mean + 15.0);
                SignalState out =
                    apply_mode_phase(collapse(joint, x), 1, correction_phase(n, theta, alpha, m, x));
                CHECK(fidelity(out, member) > 1.0 - 1e-10);
            }
        }
    }
}

TEST_CASE("pipeline announces the member's own bin near its peak") {
    RandomStream rng(43);
    for (int n = 2; n <= 10; ++n) {
        // alpha large enough that every bin is >> 2 wide, so draws within
        // +-1 of a peak always stay inside the member's own interval
        double theta = 0.08 / n, alpha = 3000.0;
        for (int l = 0; l <= n / 2; ++l) {
            SignalState member = single_member(n, l);
            DetectPipeline pipeline(member, theta, alpha);
            double mean = pipeline.density().components()[0].mean;
            for (int draw = 0; draw < 5; ++draw) {
                double x = support::uniform_in(rng, mean - 1.0, mean + 1.0);
                MeasurementRecord record = pipeline.run_at(x);
                CHECK(record.bin_l == l);
                CHECK(record.bin_m == n / 2 - l);
                CHECK(record.correction == correction_phase(n, theta, alpha, record.bin_m, x));
                CHECK(fidelity(record.output, member) > 1.0 - 1e-10);
            }
        }
    }
}

TEST_CASE("n = 1 detection passes the input through untouched") {
    SignalState input(1, {{{1, 0}, Complex{0.8, 0.0}}, {{0, 1}, Complex{0.0, 0.6}}});
    RandomStream rng(7);
    MeasurementRecord record = detect(input, 0.05, 80.0, rng);
    CHECK(record.bin_m == 0);
    CHECK(record.bin_l == 0);
    CHECK(record.correction == 0.0);
    CHECK(fidelity(record.output, input) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("detection error rate of the widest pair matches the overlap integral") {
    ProtocolLimits loose{0.25};
    double theta = 0.1, alpha = 200.0;
    DetectPipeline pipeline(noon(2), theta, alpha, loose);
    RandomStream rng(20202);
    const int trials = 100000;
    int errors = 0;
    for (int t = 0; t < trials; ++t) {
        DetectPipeline::Trial trial = pipeline.run(rng);
        if (trial.record.bin_m != trial.truth_m) ++errors;
    }
    double d = 2 * alpha * (1.0 - std::cos(theta));
    double eps = gaussian_overlap_error(d);
    double sigma = std::sqrt(eps * (1.0 - eps) / trials);
    CHECK(std::abs((double)errors / trials - eps) < 3 * sigma);
}

TEST_CASE("announced labels stay consistent and the photon number survives") {
    RandomStream rng(555);
    InputSpec spec = support::random_input_spec(5, rng);
    SignalState state = build_input_state(spec);
    DetectPipeline pipeline(state, 0.015, 120.0);
    for (int t = 0; t < 200; ++t) {
        DetectPipeline::Trial trial = pipeline.run(rng);
        CHECK(trial.record.bin_l == 5 / 2 - trial.record.bin_m);
        CHECK(trial.record.output.n() == 5);
        CHECK(trial.truth_m == pipeline.truth_m(trial.component));
    }
}

TEST_CASE("detection is deterministic under a fixed seed") {
    SignalState state = noon(3);
    RandomStream a(31415), b(31415);
    for (int t = 0; t < 50; ++t) {
        MeasurementRecord ra = detect(state, 0.02, 90.0, a);
        MeasurementRecord rb = detect(state, 0.02, 90.0, b);
        CHECK(ra.x == rb.x);
        CHECK(ra.bin_m == rb.bin_m);
        CHECK(ra.correction == rb.correction);
        CHECK(fidelity(ra.output, rb.output) == Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("forcing an impossible outcome reports a numerical void") {
    DetectPipeline pipeline(noon(2), 0.01, 50.0, ProtocolLimits{});
    CHECK_THROWS_AS(pipeline.run_at(1e4), NumericalVoidError);
}

}  // TEST_SUITE
