#include "xkerr/serialize.hpp"

#include <charconv>
#include <stdexcept>

namespace xkerr {

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

Json state_to_json(const SignalState& state) {
    Json kets = Json::array();
    for (const auto& [ket, amp] : state.kets())
        kets.push_back(Json::array({ket.n1, ket.n2, amp.real(), amp.imag()}));
    return kets;
}

InputSpec input_spec_from_json(const Json& spec) {
    if (!spec.is_object()) throw std::invalid_argument("input spec must be a JSON object");
    if (!spec.contains("n") || !spec["n"].is_number_integer())
        throw std::invalid_argument("input spec needs an integer field \"n\"");
    InputSpec parsed;
    parsed.n = spec["n"].get<int>();
    if (parsed.n < 1) throw std::invalid_argument("input spec needs n >= 1");
    if (!spec.contains("amps") || !spec["amps"].is_array())
        throw std::invalid_argument("input spec needs an array field \"amps\"");
    const Json& amps = spec["amps"];
    const std::size_t want = static_cast<std::size_t>(parsed.n / 2) + 1;
    if (amps.size() != want)
        throw std::invalid_argument("input spec for n = " + std::to_string(parsed.n) + " needs " +
                                    std::to_string(want) + " amplitude rows [re_a, im_a, re_b, im_b]");
    for (const Json& row : amps) {
        if (!row.is_array() || row.size() != 4)
            throw std::invalid_argument("each amplitude row must be [re_a, im_a, re_b, im_b]");
        for (const Json& v : row)
            if (!v.is_number()) throw std::invalid_argument("amplitude entries must be numbers");
        parsed.amps.emplace_back(Complex{row[0].get<double>(), row[1].get<double>()},
                                 Complex{row[2].get<double>(), row[3].get<double>()});
    }
    return parsed;
}

Json input_spec_to_json(const InputSpec& spec) {
    Json amps = Json::array();
    for (const auto& [a, b] : spec.amps)
        amps.push_back(Json::array({a.real(), a.imag(), b.real(), b.imag()}));
    return Json{{"n", spec.n}, {"amps", amps}};
}

Json record_to_json(const MeasurementRecord& record) {
    return Json{{"x", record.x},
                {"bin_m", record.bin_m},
                {"bin_l", record.bin_l},
                {"correction", record.correction},
                {"output", state_to_json(record.output)}};
}

namespace {

Json gap_to_json(const GapRecord& gap) {
    return Json{{"k", gap.k},
                {"x_d_exact", gap.x_d_exact},
                {"x_d_approx", gap.x_d_approx},
                {"epsilon", gap.epsilon}};
}

}  // namespace

Json error_report_to_json(const ErrorReport& report) {
    Json gaps = Json::array();
    for (const GapRecord& gap : report.gaps) gaps.push_back(gap_to_json(gap));
    return Json{{"n", report.n},          {"theta", report.theta},
                {"alpha", report.alpha},  {"n_alpha", report.n_alpha},
                {"gaps", gaps},           {"epsilon_max", report.epsilon_max}};
}

Json monte_carlo_to_json(const MonteCarloReport& report) {
    Json bins = Json::array();
    for (const BinStats& b : report.bins)
        bins.push_back(Json{{"m", b.m},
                            {"l", b.l},
                            {"weight", b.weight},
                            {"trials", b.trials},
                            {"errors", b.errors},
                            {"rate", b.rate},
                            {"std_error", b.std_error},
                            {"analytic", b.analytic}});
    return Json{{"trials", report.trials},       {"errors", report.errors},
                {"rate", report.rate},           {"std_error", report.std_error},
                {"analytic", report.analytic},   {"bins", bins}};
}

Json operating_point_to_json(const OperatingPointReport& report) {
    Json out{{"n_theta", report.n_theta},
             {"alpha", report.alpha},
             {"n_alpha", report.n_alpha},
             {"epsilon_max", report.epsilon_max}};
    out["n"] = report.n ? Json(*report.n) : Json(nullptr);
    out["theta"] = report.theta ? Json(*report.theta) : Json(nullptr);
    out["exact"] = report.exact ? error_report_to_json(*report.exact) : Json(nullptr);
    return out;
}

Json density_to_json(const OutcomeDensity& density) {
    Json means = Json::array();
    Json weights = Json::array();
    for (const GaussianComponent& c : density.components()) {
        means.push_back(c.mean);
        weights.push_back(c.weight);
    }
    return Json{{"means", means}, {"weights", weights}};
}

Json thresholds_to_json(const ThresholdSet& thresholds) {
    Json labels = Json::array();
    for (const IntervalLabel& label : thresholds.labels)
        labels.push_back(Json{{"m", label.m}, {"l", label.l}});
    return Json{{"cuts", thresholds.cuts}, {"labels", labels}};
}

std::string error_report_csv(const ErrorReport& report) {
    std::string out = "n,theta,alpha,n_alpha,k,x_d_exact,x_d_approx,epsilon,epsilon_max\n";
    std::string prefix = std::to_string(report.n) + "," + format_double(report.theta) + "," +
                         format_double(report.alpha) + "," + format_double(report.n_alpha) + ",";
    std::string suffix = "," + format_double(report.epsilon_max) + "\n";
    if (report.gaps.empty())
        return out + prefix + ",,,," + format_double(report.epsilon_max) + "\n";
    for (const GapRecord& gap : report.gaps)
        out += prefix + std::to_string(gap.k) + "," + format_double(gap.x_d_exact) + "," +
               format_double(gap.x_d_approx) + "," + format_double(gap.epsilon) + suffix;
    return out;
}

std::string density_csv(const std::vector<std::pair<double, double>>& rows) {
    std::string out = "x,density\n";
    for (const auto& [x, d] : rows) out += format_double(x) + "," + format_double(d) + "\n";
    return out;
}

}  // namespace xkerr
