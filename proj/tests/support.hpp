#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "xkerr/rng.hpp"
#include "xkerr/states.hpp"

// Path of the command-line binary, passed to the test runner as --cli=PATH.
extern std::string g_cli_path;

namespace support {

// Frozen high-precision reference values (40-digit arithmetic, rounded to
// shortest-roundtrip doubles).
inline constexpr double kErfc2Half = 0.002338867490523632919;        // erfc(2)/2
inline constexpr double kQOfOne = 0.15865525393145705141;            // erfc(1/sqrt 2)/2 = Q(1)
inline constexpr double kQuarterRootTwoPi = 0.63161877774606470129;  // (2 pi)^(-1/4)
inline constexpr double kErfcInvTenth = 1.1630871536766740867;       // erfcinv(0.1)

// kernel at alpha = 200, phi = 0.1, x = 399
inline constexpr double kKernelMag = 0.49231481217066488814;
inline constexpr double kKernelPhase = 1.0838606928991762765;  // reduced mod 2 pi
// cuts for n = 4, theta = 0.0025, alpha = 1000
inline constexpr double kCutN4K0 = 1999.8593772411948701;
inline constexpr double kCutN4K1 = 1999.9718751318356903;
// operating-point amplitudes
inline constexpr double kAlphaN2 = 226274.16997969520781;        // 16 sqrt 2 x 10^4
inline constexpr double kAlphaAsymptotic = 56568.542494923801952;  // 4 sqrt 2 x 10^4

// Adaptive quadrature of f over [a, b] split at the given interior anchor
// points, so no narrow peak between anchors is stepped over.
template <typename F>
double integrate_piecewise(F f, double a, double b, std::vector<double> anchors) {
    anchors.push_back(a);
    anchors.push_back(b);
    std::sort(anchors.begin(), anchors.end());
    double total = 0.0;
    using quad = boost::math::quadrature::gauss_kronrod<double, 15>;
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
        double lo = std::max(anchors[i], a);
        double hi = std::min(anchors[i + 1], b);
        if (hi > lo) total += quad::integrate(f, lo, hi, 12, 1e-13);
    }
    return total;
}

// Uniform draw in [lo, hi).
inline double uniform_in(xkerr::RandomStream& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.uniform01();
}

// A generic member-family input: every (a_l, b_l) drawn from the complex
// unit square, redrawn if everything cancels below the resolve tolerance.
inline xkerr::InputSpec random_input_spec(int n, xkerr::RandomStream& rng) {
    xkerr::InputSpec spec;
    spec.n = n;
    for (int l = 0; l <= n / 2; ++l)
        spec.amps.push_back({xkerr::Complex{uniform_in(rng, -1.0, 1.0), uniform_in(rng, -1.0, 1.0)},
                             xkerr::Complex{uniform_in(rng, -1.0, 1.0), uniform_in(rng, -1.0, 1.0)}});
    double biggest = 0.0;
    for (const auto& [a, b] : spec.amps) biggest = std::max({biggest, std::abs(a), std::abs(b)});
    if (biggest < 0.1) spec.amps[0].first = xkerr::Complex{1.0, 0.0};
    return spec;
}

// Scratch directory for files a test writes and reads back.
inline std::filesystem::path test_dir() {
    static std::filesystem::path dir = [] {
        auto p = std::filesystem::temp_directory_path() /
                 ("xkerr_tests_" + std::to_string(::getpid()));
        std::filesystem::create_directories(p);
        return p;
    }();
    return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

// Runs the real binary with a shell-formatted argument string.
inline CliRun run_cli(const std::string& args) {
    static int counter = 0;
    auto out_path = test_dir() / ("cli_out_" + std::to_string(counter) + ".txt");
    auto err_path = test_dir() / ("cli_err_" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = "\"" + g_cli_path + "\" " + args + " > \"" + out_path.string() + "\" 2> \"" +
                      err_path.string() + "\"";
    int status = std::system(cmd.c_str());
    CliRun run;
    run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    run.out = read_file(out_path);
    run.err = read_file(err_path);
    return run;
}

}  // namespace support
