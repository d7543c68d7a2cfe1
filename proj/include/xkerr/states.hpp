#pragma once

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace xkerr {

using Complex = std::complex<double>;

// Amplitudes at or below this magnitude are treated as zero when states are
// assembled, and amplitude equality is judged against it.
inline constexpr double kAmplitudeTol = 1e-12;

// Squared norms below this are indistinguishable from zero in double
// precision once underflow is in play; normalization refuses them.
inline constexpr double kNormFloor = 1e-300;

// Photon occupation (n1, n2) of the two signal modes.
struct FockKet {
    int n1 = 0;
    int n2 = 0;
    friend auto operator<=>(const FockKet&, const FockKet&) = default;
};

// Defining amplitudes of a family member: the state is
//   sum_l  a_l |n-l, l>  +  b_l |l, n-l>,   l = 0 .. floor(n/2),
// with amps[l] = (a_l, b_l).  For even n the l = n/2 pair names the same ket
// twice, so a and b add on |n/2, n/2>.
struct InputSpec {
    int n = 0;
    std::vector<std::pair<Complex, Complex>> amps;
};

// Pure state of the two signal modes with a fixed total photon number.
// Exact-zero amplitudes are never stored.
class SignalState {
  public:
    SignalState(int n, std::map<FockKet, Complex> kets);

    int n() const { return n_; }
    const std::map<FockKet, Complex>& kets() const { return kets_; }

    // Amplitude of a ket, zero if absent.
    Complex amplitude(const FockKet& ket) const;

    double squared_norm() const;

  private:
    int n_;
    std::map<FockKet, Complex> kets_;
};

// Resolves the defining sum into per-ket amplitudes, merging the doubled
// even-n middle ket, then normalizes.  Rejects a spec whose amplitudes cancel
// to the zero vector.
SignalState build_input_state(const InputSpec& spec);

// Scales u to unit norm.  Rejects vanishing norm.
SignalState normalize(const SignalState& u);

// |<u|v>|^2 for unit-normalized u and v, clamped to [0, 1].
double fidelity(const SignalState& u, const SignalState& v);

// Applies exp(i delta n_hat) on one signal mode (mode is 1 or 2): each ket
// picks up delta times its occupation of that mode.
SignalState apply_mode_phase(const SignalState& u, int mode, double delta);

// The l-th family member contained in u: the restriction of u to the kets
// |n-l, l> and |l, n-l>, renormalized.  Empty when u has no support there.
std::optional<SignalState> component_state(const SignalState& u, int l);

}  // namespace xkerr
