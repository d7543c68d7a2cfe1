#include "xkerr/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xkerr {

SignalState::SignalState(int n, std::map<FockKet, Complex> kets) : n_(n), kets_(std::move(kets)) {
    if (n_ < 1) throw std::invalid_argument("signal state needs n >= 1 photons");
    for (auto it = kets_.begin(); it != kets_.end();) {
        const FockKet& k = it->first;
        if (k.n1 < 0 || k.n2 < 0)
            throw std::invalid_argument("negative mode occupation");
        if (k.n1 + k.n2 != n_)
            throw std::invalid_argument("ket |" + std::to_string(k.n1) + "," + std::to_string(k.n2) +
                                        "> breaks the fixed total of " + std::to_string(n_));
        if (it->second == Complex{0.0, 0.0})
            it = kets_.erase(it);
        else
            ++it;
    }
}

Complex SignalState::amplitude(const FockKet& ket) const {
    auto it = kets_.find(ket);
    return it == kets_.end() ? Complex{0.0, 0.0} : it->second;
}

double SignalState::squared_norm() const {
    double s = 0.0;
    for (const auto& [ket, amp] : kets_) s += std::norm(amp);
    return s;
}

SignalState build_input_state(const InputSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("input spec needs n >= 1");
    const std::size_t want = static_cast<std::size_t>(spec.n / 2) + 1;
    if (spec.amps.size() != want)
        throw std::invalid_argument("input spec for n = " + std::to_string(spec.n) + " needs " +
                                    std::to_string(want) + " amplitude pairs, got " +
                                    std::to_string(spec.amps.size()));
    std::map<FockKet, Complex> kets;
    for (int l = 0; l <= spec.n / 2; ++l) {
        const auto& [a, b] = spec.amps[static_cast<std::size_t>(l)];
        kets[FockKet{spec.n - l, l}] += a;
        kets[FockKet{l, spec.n - l}] += b;
    }
    for (auto it = kets.begin(); it != kets.end();) {
        if (std::abs(it->second) <= kAmplitudeTol)
            it = kets.erase(it);
        else
            ++it;
    }
    if (kets.empty())
        throw std::invalid_argument("input amplitudes cancel to the zero vector");
    return normalize(SignalState(spec.n, std::move(kets)));
}

SignalState normalize(const SignalState& u) {
    double s = u.squared_norm();
    if (!(s > kNormFloor)) throw std::invalid_argument("cannot normalize a zero-norm state");
    double inv = 1.0 / std::sqrt(s);
    std::map<FockKet, Complex> kets = u.kets();
    for (auto& [ket, amp] : kets) amp *= inv;
    return SignalState(u.n(), std::move(kets));
}

double fidelity(const SignalState& u, const SignalState& v) {
    if (u.n() != v.n())
        throw std::invalid_argument("fidelity between states of different photon number");
    Complex overlap{0.0, 0.0};
    for (const auto& [ket, amp] : u.kets()) overlap += std::conj(amp) * v.amplitude(ket);
    double f = std::norm(overlap);
    return f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
}

SignalState apply_mode_phase(const SignalState& u, int mode, double delta) {
    if (mode != 1 && mode != 2) throw std::invalid_argument("signal mode must be 1 or 2");
    std::map<FockKet, Complex> kets = u.kets();
    for (auto& [ket, amp] : kets) {
        int occ = (mode == 1) ? ket.n1 : ket.n2;
        amp *= std::polar(1.0, delta * occ);
    }
    return SignalState(u.n(), std::move(kets));
}

std::optional<SignalState> component_state(const SignalState& u, int l) {
    if (l < 0 || l > u.n() / 2) throw std::invalid_argument("family index l out of range");
    std::map<FockKet, Complex> kets;
    for (const FockKet& k : {FockKet{u.n() - l, l}, FockKet{l, u.n() - l}}) {
        Complex a = u.amplitude(k);
        if (a != Complex{0.0, 0.0}) kets[k] = a;
    }
    if (kets.empty()) return std::nullopt;
    SignalState restricted(u.n(), std::move(kets));
    if (!(restricted.squared_norm() > kNormFloor)) return std::nullopt;
    return normalize(restricted);
}

}  // namespace xkerr
