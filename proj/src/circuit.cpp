#include "xkerr/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xkerr {

double JointState::total_weight() const {
    double s = 0.0;
    for (const Branch& b : branches) s += std::norm(b.amplitude);
    return s;
}

JointState attach_probe(const SignalState& signal, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("probe amplitude must be positive");
    if (std::abs(signal.squared_norm() - 1.0) > 1e-9)
        throw std::invalid_argument("signal must be normalized before the probe attaches");
    JointState joint;
    joint.n = signal.n();
    joint.alpha = alpha;
    joint.branches.reserve(signal.kets().size());
    for (const auto& [ket, amp] : signal.kets()) joint.branches.push_back(Branch{ket, amp, 0.0});
    return joint;
}

JointState apply_cross_kerr(JointState joint, int mode, double rate) {
    if (mode != 1 && mode != 2) throw std::invalid_argument("signal mode must be 1 or 2");
    for (Branch& b : joint.branches)
        b.probe_phase += rate * ((mode == 1) ? b.ket.n1 : b.ket.n2);
    return joint;
}

JointState apply_probe_rotation(JointState joint, double phase) {
    for (Branch& b : joint.branches) b.probe_phase += phase;
    return joint;
}

double expected_branch_phase(int n, const FockKet& ket, double theta) {
    return -0.5 * (ket.n1 - ket.n2) * (n - 1) * theta;
}

JointState evolve_protocol(const SignalState& signal, double theta, double alpha,
                           const ProtocolLimits& limits) {
    if (theta < 0.0) throw std::invalid_argument("interaction phase theta must be >= 0");
    double n_theta = signal.n() * theta;
    if (n_theta > limits.max_n_theta)
        throw std::invalid_argument("n*theta = " + std::to_string(n_theta) +
                                    " exceeds the weak-interaction cap " +
                                    std::to_string(limits.max_n_theta));
    JointState joint = attach_probe(signal, alpha);
    joint = apply_cross_kerr(std::move(joint), 1, theta);
    joint = apply_cross_kerr(std::move(joint), 2, signal.n() * theta);
    joint = apply_probe_rotation(std::move(joint), -0.5 * signal.n() * (signal.n() + 1) * theta);
    // The three steps telescope to -(n1 - n2)(n - 1) theta / 2 per branch up
    // to rounding; drift beyond a few ulps would mean the steps are wrong.
    for (const Branch& b : joint.branches) {
        double want = expected_branch_phase(joint.n, b.ket, theta);
        double tol = 1e-12 * (std::abs(want) + signal.n() * (signal.n() + 1) * theta) + 1e-300;
        if (std::abs(b.probe_phase - want) > tol)
            throw std::logic_error("branch phase drifted from its closed form");
    }
    return joint;
}

}  // namespace xkerr
