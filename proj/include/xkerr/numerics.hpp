#pragma once

#include <cmath>

namespace xkerr {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Signed remainder of phase by 2*pi, in (-2*pi, 2*pi).  Phases only ever feed
// complex exponentials or get compared modulo 2*pi, so the branch of the
// reduction carries no physics.
inline double reduce_two_pi(double phase) { return std::fmod(phase, kTwoPi); }

// Tail weight past a symmetric cut halfway between two unit-variance peaks a
// distance d apart: erfc(d / (2 sqrt 2)) / 2.
inline double gaussian_overlap_error(double distance) {
    return 0.5 * std::erfc(distance / (2.0 * 1.4142135623730950488));
}

// Standard normal CDF.
inline double normal_cdf(double t) { return 0.5 * std::erfc(-t / 1.4142135623730950488); }

// Standard normal density.
inline double normal_pdf(double t) { return 0.39894228040143267794 * std::exp(-0.5 * t * t); }

}  // namespace xkerr
