#pragma once

#include "xkerr/states.hpp"

namespace xkerr {

// One term of the signal-probe superposition after the interaction: the
// signal ket, its amplitude, and the phase-space rotation its coherent probe
// picked up.  probe_phase is kept unreduced; only cos/sin of it matter.
struct Branch {
    FockKet ket;
    Complex amplitude;
    double probe_phase = 0.0;
};

// Signal entangled with the probe:  sum_k  amp_k |ket_k> |alpha e^{i phi_k}>.
// Branches stay unit-normalized in the signal amplitudes.
struct JointState {
    int n = 0;
    double alpha = 0.0;
    std::vector<Branch> branches;

    double total_weight() const;
};

// Guard rails on the interaction strength.  The protocol lives in the weak
// regime; the cap on n * theta is a safety default, not a physical wall, so
// callers may raise it deliberately.
struct ProtocolLimits {
    double max_n_theta = 0.1;
};

// Couples a fresh coherent probe of real amplitude alpha > 0 to every ket.
JointState attach_probe(const SignalState& signal, double alpha);

// Cross-Kerr coupling between the probe and one signal mode: each branch's
// probe rotates by rate * (occupation of that mode).
JointState apply_cross_kerr(JointState joint, int mode, double rate);

// Fixed compensating rotation of the probe, the same for every branch.
JointState apply_probe_rotation(JointState joint, double phase);

// The full interaction: probe attached, cross-Kerr of rate theta on mode 1
// and n*theta on mode 2, then the compensating rotation -n(n+1)theta/2.
// After it, the branch holding |n1, n2> carries probe phase
// -(n1 - n2)(n - 1) theta / 2, which evolve_protocol checks.
JointState evolve_protocol(const SignalState& signal, double theta, double alpha,
                           const ProtocolLimits& limits = {});

// Closed-form probe phase of the branch holding `ket` after evolve_protocol.
double expected_branch_phase(int n, const FockKet& ket, double theta);

}  // namespace xkerr
