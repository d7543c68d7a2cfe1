#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "xkerr/analysis.hpp"

namespace xkerr {

using Json = nlohmann::json;

// Signal states serialize as [[n1, n2, re, im], ...] in ket order.
Json state_to_json(const SignalState& state);

// {"n": int, "amps": [[re_a, im_a, re_b, im_b], ...]} with one row per l,
// l ascending, amps.size() == floor(n/2) + 1.
InputSpec input_spec_from_json(const Json& spec);
Json input_spec_to_json(const InputSpec& spec);

Json record_to_json(const MeasurementRecord& record);
Json error_report_to_json(const ErrorReport& report);
Json monte_carlo_to_json(const MonteCarloReport& report);
Json operating_point_to_json(const OperatingPointReport& report);
Json density_to_json(const OutcomeDensity& density);
Json thresholds_to_json(const ThresholdSet& thresholds);

// One row per gap with the configuration repeated on every row.
std::string error_report_csv(const ErrorReport& report);

// "x,density" rows.
std::string density_csv(const std::vector<std::pair<double, double>>& rows);

// Shortest-roundtrip decimal form of a double, the same as the JSON dump.
std::string format_double(double value);

}  // namespace xkerr
