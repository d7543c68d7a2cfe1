#pragma once

#include "xkerr/circuit.hpp"
#include "xkerr/rng.hpp"

namespace xkerr {

// Projecting |alpha e^{i phi}> onto the x quadrature eigenstate <x| gives
//   (2 pi)^{-1/4} exp(-(x - 2 alpha cos phi)^2 / 4) * exp(i w(x)),
//   w(x) = alpha sin(phi) (x - 2 alpha cos phi)  reduced mod 2 pi,
// up to a global phase common to all branches (dropped here).
Complex kernel_eval(double alpha, double phi, double x);

// One unit-variance Gaussian of the homodyne outcome mixture.
struct GaussianComponent {
    double weight = 0.0;
    double mean = 0.0;
};

// Probability density of the measured quadrature: branches whose probes sit
// at the same cos(phi) merge into one Gaussian; distinct signal kets kill all
// cross terms, so the density is an incoherent mixture.
class OutcomeDensity {
  public:
    explicit OutcomeDensity(std::vector<GaussianComponent> components);

    const std::vector<GaussianComponent>& components() const { return components_; }

    double operator()(double x) const;  // density at x
    double cdf(double x) const;

  private:
    std::vector<GaussianComponent> components_;
};

// Mixture induced by the joint state.  Branch means 2 alpha cos(phi) are
// grouped when closer than kMeanMergeTol (the +/- phi pairs merge exactly).
OutcomeDensity outcome_density(const JointState& joint);

inline constexpr double kMeanMergeTol = 1e-9;

// Draws a component index by weight, then an outcome from that component.
std::size_t sample_component(const OutcomeDensity& density, RandomStream& rng);
double sample_outcome(const OutcomeDensity& density, RandomStream& rng);

// Convenience form; loops should build the density once instead.
double sample_outcome(const JointState& joint, RandomStream& rng);

// Squared norm of the unnormalized conditional state at outcome x.
double collapsed_weight(const JointState& joint, double x);

// Conditional signal state given outcome x: amplitudes weighted by the
// kernel, then renormalized.  Throws NumericalVoidError when the weight
// underflows to nothing, i.e. x sits impossibly far from every peak.
SignalState collapse(const JointState& joint, double x);

// Evaluation grid for density tabulation.
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 2001;
};

// [smallest mean - 6, largest mean + 6] with 2001 points.
GridSpec default_grid(const OutcomeDensity& density);

std::vector<std::pair<double, double>> density_grid(const OutcomeDensity& density,
                                                    const GridSpec& grid);

}  // namespace xkerr
