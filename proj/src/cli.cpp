#include "xkerr/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xkerr/errors.hpp"
#include "xkerr/serialize.hpp"

namespace xkerr {

namespace {

void emit_error(const char* code, const std::string& message) {
    Json err{{"schema_version", kSchemaVersion},
             {"error", Json{{"code", code}, {"message", message}}}};
    std::cerr << err.dump() << "\n";
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
    if (!path) {
        std::cout << content;
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + *path);
    out << content;
    if (!out) throw std::invalid_argument("cannot write output file " + *path);
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file " + path);
    return Json::parse(in);
}

InputSpec load_input_spec(const RunConfig& config) {
    if (config.input_path.has_value() == config.input_json.has_value())
        throw std::invalid_argument("give exactly one of --input and --input-json");
    Json spec = config.input_path ? load_json_file(*config.input_path)
                                  : Json::parse(*config.input_json);
    return input_spec_from_json(spec);
}

std::string dump(const Json& out) { return out.dump(2) + "\n"; }

std::string format_complex(const Complex& z) {
    std::string out = format_double(z.real());
    out += (std::signbit(z.imag()) ? " - " : " + ");
    out += format_double(std::abs(z.imag())) + "i";
    return out;
}

std::string describe_state(const SignalState& state, const std::string& indent) {
    std::string out;
    for (const auto& [ket, amp] : state.kets())
        out += indent + "|" + std::to_string(ket.n1) + "," + std::to_string(ket.n2) +
               ">  " + format_complex(amp) + "\n";
    return out;
}

// Misidentification probability of the interval holding bin m: the epsilon
// of each neighboring gap.
double bin_analytic(const ErrorReport& budget, int n, int m) {
    int interval = n / 2 - m;
    double rate = 0.0;
    if (interval > 0) rate += budget.gaps[static_cast<std::size_t>(interval - 1)].epsilon;
    if (interval < static_cast<int>(budget.gaps.size()))
        rate += budget.gaps[static_cast<std::size_t>(interval)].epsilon;
    return rate;
}

// The nominal interaction budget used when a demo is run without explicit
// parameters.
constexpr double kDemoNTheta = 1e-2;

double demo_theta(const RunConfig& config, int n) {
    if (config.theta || config.n_theta) return resolved_theta(config, n);
    return kDemoNTheta / n;
}

double demo_alpha(const RunConfig& config, int n) {
    if (config.alpha || config.n_alpha) return resolved_alpha(config);
    double shrink = (1.0 - 1.0 / n) * (1.0 - 1.0 / n);
    return 4.0 * std::sqrt(2.0) * 1e4 / shrink;
}

InputSpec single_member_spec(int n, int l) {
    InputSpec spec;
    spec.n = n;
    spec.amps.assign(static_cast<std::size_t>(n / 2) + 1, {Complex{0.0, 0.0}, Complex{0.0, 0.0}});
    double r = 1.0 / std::sqrt(2.0);
    spec.amps[static_cast<std::size_t>(l)] = {Complex{r, 0.0}, Complex{r, 0.0}};
    return spec;
}

Json config_echo(int n, double theta, double alpha, std::uint64_t seed) {
    return Json{{"n", n},
                {"theta", theta},
                {"n_theta", theta * n},
                {"alpha", alpha},
                {"n_alpha", alpha * alpha},
                {"seed", seed}};
}

int run_analyze(const RunConfig& config) {
    if (config.format != "json" && config.format != "csv")
        throw std::invalid_argument("--format must be json or csv");
    if (config.reproduce || config.asymptotic) {
        if (config.theta || config.n_theta || config.alpha || config.n_alpha)
            throw std::invalid_argument("--reproduce fixes theta and alpha; drop the explicit parameters");
        OperatingPointReport report;
        if (config.asymptotic)
            report = reproduce_asymptotic();
        else if (config.n)
            report = reproduce_operating_point(*config.n);
        else
            throw std::invalid_argument("--reproduce needs --n or --asymptotic");
        if (config.format == "csv") {
            if (report.exact) {
                write_output(config.output, error_report_csv(*report.exact));
            } else {
                std::string csv = "n_theta,alpha,n_alpha,epsilon_max\n";
                csv += format_double(report.n_theta) + "," + format_double(report.alpha) + "," +
                       format_double(report.n_alpha) + "," + format_double(report.epsilon_max) + "\n";
                write_output(config.output, csv);
            }
            return 0;
        }
        Json out = operating_point_to_json(report);
        out["schema_version"] = kSchemaVersion;
        out["command"] = "analyze";
        write_output(config.output, dump(out));
        return 0;
    }
    if (!config.n) throw std::invalid_argument("analyze needs --n");
    double theta = resolved_theta(config, *config.n);
    double alpha = resolved_alpha(config);
    ErrorReport report = error_probabilities(*config.n, theta, alpha);
    if (config.format == "csv") {
        write_output(config.output, error_report_csv(report));
        return 0;
    }
    Json out = error_report_to_json(report);
    out["schema_version"] = kSchemaVersion;
    out["command"] = "analyze";
    out["n_theta"] = theta * *config.n;
    write_output(config.output, dump(out));
    return 0;
}

int run_simulate(const RunConfig& config) {
    SignalState input = build_input_state(load_input_spec(config));
    const int n = input.n();
    double theta = resolved_theta(config, n);
    double alpha = resolved_alpha(config);
    ProtocolLimits limits{config.max_n_theta};
    DetectPipeline pipeline(input, theta, alpha, limits);

    if (config.fixed_x) {
        // Forced outcome: one measurement at exactly x, no sampling.  Far
        // from every peak this raises the numerical-void exit path.
        MeasurementRecord record = pipeline.run_at(*config.fixed_x);
        Json out{{"schema_version", kSchemaVersion},
                 {"command", "simulate"},
                 {"config", config_echo(n, theta, alpha, config.seed)},
                 {"forced_x", *config.fixed_x},
                 {"record", record_to_json(record)}};
        write_output(config.output, dump(out));
        return 0;
    }

    long long trials = config.trials < 0 ? 10000 : config.trials;
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (config.records < 0) throw std::invalid_argument("--records must be >= 0");
    long long keep = std::min<long long>(config.records, trials);

    const ThresholdSet& cuts = pipeline.cuts();
    const std::size_t intervals = cuts.labels.size();
    struct BinTally {
        long long count = 0;
        long long errors = 0;
        double fidelity_sum = 0.0;
        long long fidelity_count = 0;
    };
    std::vector<BinTally> tallies(intervals);
    std::vector<std::optional<SignalState>> targets;
    targets.reserve(intervals);
    for (const IntervalLabel& label : cuts.labels) targets.push_back(component_state(input, label.l));

    RandomStream seed_stream(config.seed);
    std::uint64_t base = seed_stream.next_u64();
    Json records = Json::array();
    long long total_errors = 0;
    for (long long t = 0; t < trials; ++t) {
        RandomStream stream(mix_seed(base, static_cast<std::uint64_t>(t)));
        DetectPipeline::Trial trial = pipeline.run(stream);
        auto i = static_cast<std::size_t>(trial.record.bin_l);
        BinTally& tally = tallies[i];
        ++tally.count;
        if (trial.record.bin_m != trial.truth_m) {
            ++tally.errors;
            ++total_errors;
        }
        if (targets[i]) {
            tally.fidelity_sum += fidelity(trial.record.output, *targets[i]);
            ++tally.fidelity_count;
        }
        if (t < keep) records.push_back(record_to_json(trial.record));
    }

    ErrorReport budget = error_probabilities(n, theta, alpha);
    double analytic = 0.0;
    const auto& comps = pipeline.density().components();
    for (std::size_t c = 0; c < comps.size(); ++c)
        analytic += comps[c].weight * bin_analytic(budget, n, pipeline.truth_m(c));

    Json bins = Json::array();
    for (std::size_t i = 0; i < intervals; ++i) {
        const BinTally& tally = tallies[i];
        if (tally.count == 0) continue;
        Json bin{{"m", cuts.labels[i].m},
                 {"l", cuts.labels[i].l},
                 {"count", tally.count},
                 {"errors", tally.errors},
                 {"rate", static_cast<double>(tally.errors) / static_cast<double>(tally.count)}};
        bin["mean_fidelity"] = tally.fidelity_count
                                   ? Json(tally.fidelity_sum / static_cast<double>(tally.fidelity_count))
                                   : Json(nullptr);
        bins.push_back(bin);
    }

    double rate = static_cast<double>(total_errors) / static_cast<double>(trials);
    Json out{{"schema_version", kSchemaVersion},
             {"command", "simulate"},
             {"config", config_echo(n, theta, alpha, config.seed)},
             {"trials", trials},
             {"errors", total_errors},
             {"error_rate", rate},
             {"std_error", std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials))},
             {"analytic", analytic},
             {"bins", bins},
             {"records", records}};
    write_output(config.output, dump(out));
    return 0;
}

int run_density(const RunConfig& config) {
    SignalState input = build_input_state(load_input_spec(config));
    const int n = input.n();
    double theta = resolved_theta(config, n);
    double alpha = resolved_alpha(config);
    ProtocolLimits limits{config.max_n_theta};
    JointState joint = evolve_protocol(input, theta, alpha, limits);
    OutcomeDensity density = outcome_density(joint);

    GridSpec grid = default_grid(density);
    if (config.grid_min) grid.min = *config.grid_min;
    if (config.grid_max) grid.max = *config.grid_max;
    grid.points = config.grid_points;
    write_output(config.output, density_csv(density_grid(density, grid)));

    Json sidecar = density_to_json(density);
    sidecar["schema_version"] = kSchemaVersion;
    sidecar["command"] = "density";
    sidecar["config"] = config_echo(n, theta, alpha, config.seed);
    try {
        Json cut_info = thresholds_to_json(thresholds(n, theta, alpha));
        sidecar["cuts"] = cut_info["cuts"];
        sidecar["labels"] = cut_info["labels"];
    } catch (const std::invalid_argument&) {
        // Degenerate peaks (e.g. theta = 0): the curve still exists, there is
        // just nothing to discriminate.
        sidecar["cuts"] = Json::array();
        sidecar["labels"] = Json::array();
    }
    std::optional<std::string> meta_path = config.meta;
    if (!meta_path && config.output) meta_path = *config.output + ".json";
    if (meta_path) write_output(meta_path, dump(sidecar));
    return 0;
}

int run_demo_entangler(const RunConfig& config) {
    int n = config.n.value_or(3);
    if (n < 1) throw std::invalid_argument("--n must be >= 1");
    int l = config.family_l.value_or(0);
    if (l < 0 || l > n / 2) throw std::invalid_argument("--l out of range for this n");
    double theta = demo_theta(config, n);
    double alpha = demo_alpha(config, n);
    long long trials = config.trials < 0 ? 1 : config.trials;
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");

    SignalState input = build_input_state(single_member_spec(n, l));
    ProtocolLimits limits{config.max_n_theta};
    DetectPipeline pipeline(input, theta, alpha, limits);
    ErrorReport budget = error_probabilities(n, theta, alpha);
    const int m = n / 2 - l;

    std::ostringstream out;
    out << "== entangler ==\n";
    out << "n = " << n << ", member l = " << l << " (bin m = " << m << ")\n";
    out << "theta = " << format_double(theta) << " (n_theta = " << format_double(theta * n)
        << "), alpha = " << format_double(alpha) << " (n_alpha = " << format_double(alpha * alpha)
        << ")\n";
    out << "seed = " << config.seed << ", trials = " << trials << "\n";
    out << "input (the target entangled state):\n" << describe_state(input, "  ");
    out << "analytic misidentification probability: " << format_double(bin_analytic(budget, n, m))
        << "\n";

    RandomStream seed_stream(config.seed);
    std::uint64_t base = seed_stream.next_u64();
    long long correct = 0;
    long long intact = 0;
    double fidelity_sum = 0.0;
    for (long long t = 0; t < trials; ++t) {
        RandomStream stream(mix_seed(base, static_cast<std::uint64_t>(t)));
        DetectPipeline::Trial trial = pipeline.run(stream);
        const MeasurementRecord& rec = trial.record;
        if (rec.output.n() == n) ++intact;
        double fid = 0.0;
        if (rec.bin_l == l) {
            ++correct;
            fid = fidelity(rec.output, input);
            fidelity_sum += fid;
        }
        if (t < 5) {
            out << "trial " << t << ": x = " << format_double(rec.x) << ", bin (m = " << rec.bin_m
                << ", l = " << rec.bin_l << "), correction = " << format_double(rec.correction);
            if (rec.bin_l == l)
                out << ", fidelity to target = " << format_double(fid) << "\n";
            else
                out << ", misidentified\n";
        }
    }
    out << "identified " << correct << "/" << trials << " trials\n";
    if (correct > 0)
        out << "mean fidelity to target on identified trials: "
            << format_double(fidelity_sum / static_cast<double>(correct)) << "\n";
    out << "photon number preserved in " << intact << "/" << trials << " trials\n";
    write_output(config.output, out.str());
    return 0;
}

int run_demo_parity2(const RunConfig& config) {
    if (config.n && *config.n != 2) throw std::invalid_argument("parity2 is fixed at n = 2");
    const int n = 2;
    double theta = demo_theta(config, n);
    double alpha = demo_alpha(config, n);
    long long trials = config.trials < 0 ? 10000 : config.trials;
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
    ProtocolLimits limits{config.max_n_theta};
    ErrorReport budget = error_probabilities(n, theta, alpha);

    std::ostringstream out;
    out << "== parity2 ==\n";
    out << "discriminating member l = 0, (|2,0> + |0,2>)/sqrt 2, from member l = 1, |1,1>\n";
    out << "theta = " << format_double(theta) << " (n_theta = " << format_double(theta * n)
        << "), alpha = " << format_double(alpha) << " (n_alpha = " << format_double(alpha * alpha)
        << ")\n";
    out << "seed = " << config.seed << ", trials per input = " << trials << "\n";

    RandomStream seed_stream(config.seed);
    long long confusion[2][2] = {{0, 0}, {0, 0}};
    for (int true_l = 0; true_l <= 1; ++true_l) {
        SignalState input = build_input_state(single_member_spec(n, true_l));
        DetectPipeline pipeline(input, theta, alpha, limits);
        const auto& comps = pipeline.density().components();
        std::uint64_t base = seed_stream.next_u64();
        for (long long t = 0; t < trials; ++t) {
            RandomStream stream(mix_seed(base, static_cast<std::uint64_t>(t)));
            std::size_t c = sample_component(pipeline.density(), stream);
            double x = comps[c].mean + stream.gaussian();
            int got = classify(pipeline.cuts(), x).l;
            ++confusion[true_l][got];
        }
    }
    out << "confusion matrix (rows true member, columns announced):\n";
    for (int i = 0; i <= 1; ++i)
        out << "  true l=" << i << ":  " << confusion[i][0] << "  " << confusion[i][1] << "\n";
    for (int i = 0; i <= 1; ++i)
        out << "cross rate l=" << i << " -> l=" << (1 - i) << ": "
            << format_double(static_cast<double>(confusion[i][1 - i]) / static_cast<double>(trials))
            << "\n";
    out << "analytic cross rate: " << format_double(budget.epsilon_max) << " per input\n";
    write_output(config.output, out.str());
    return 0;
}

int run_demo_analyzer(const RunConfig& config) {
    int n = config.n.value_or(4);
    if (n < 1) throw std::invalid_argument("--n must be >= 1");
    double theta = demo_theta(config, n);
    double alpha = demo_alpha(config, n);
    long long trials = config.trials < 0 ? 1000 : config.trials;
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
    ProtocolLimits limits{config.max_n_theta};
    ErrorReport budget = error_probabilities(n, theta, alpha);

    std::ostringstream out;
    out << "== analyzer ==\n";
    out << "n = " << n << ", feeding each family member in turn\n";
    out << "theta = " << format_double(theta) << " (n_theta = " << format_double(theta * n)
        << "), alpha = " << format_double(alpha) << " (n_alpha = " << format_double(alpha * alpha)
        << ")\n";
    out << "seed = " << config.seed << ", trials per member = " << trials << "\n";

    RandomStream seed_stream(config.seed);
    long long all_intact = 0;
    for (int l = 0; l <= n / 2; ++l) {
        SignalState input = build_input_state(single_member_spec(n, l));
        DetectPipeline pipeline(input, theta, alpha, limits);
        std::uint64_t base = seed_stream.next_u64();
        long long correct = 0;
        long long intact = 0;
        double fidelity_sum = 0.0;
        for (long long t = 0; t < trials; ++t) {
            RandomStream stream(mix_seed(base, static_cast<std::uint64_t>(t)));
            DetectPipeline::Trial trial = pipeline.run(stream);
            if (trial.record.output.n() == n) ++intact;
            if (trial.record.bin_l == l) {
                ++correct;
                fidelity_sum += fidelity(trial.record.output, input);
            }
        }
        all_intact += intact;
        out << "member l=" << l << " (m=" << (n / 2 - l) << "): identified "
            << format_double(static_cast<double>(correct) / static_cast<double>(trials))
            << " of trials (analytic " << format_double(1.0 - bin_analytic(budget, n, n / 2 - l))
            << ")";
        if (correct > 0)
            out << ", mean fidelity when identified = "
                << format_double(fidelity_sum / static_cast<double>(correct));
        out << "\n";
    }
    long long total = trials * (n / 2 + 1);
    out << "photon number preserved in " << all_intact << "/" << total
        << " trials (nondestructive)\n";
    write_output(config.output, out.str());
    return 0;
}

int run_demo(const RunConfig& config) {
    if (config.scenario == "entangler") return run_demo_entangler(config);
    if (config.scenario == "parity2") return run_demo_parity2(config);
    if (config.scenario == "analyzer") return run_demo_analyzer(config);
    throw std::invalid_argument("unknown demo scenario \"" + config.scenario +
                                "\" (choose entangler, parity2 or analyzer)");
}

// Fills fields the command line left untouched from the config file.
void merge_config_file(CLI::App* sub, const Json& file, RunConfig& config) {
    if (!file.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    auto given = [sub](const char* flag) {
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    auto take = [&](const char* key, const char* flag, auto& slot) {
        using T = std::decay_t<decltype(slot)>;
        if (!file.contains(key) || given(flag)) return;
        if constexpr (std::is_same_v<T, std::optional<int>>)
            slot = file.at(key).get<int>();
        else if constexpr (std::is_same_v<T, std::optional<double>>)
            slot = file.at(key).get<double>();
        else if constexpr (std::is_same_v<T, std::optional<std::string>>)
            slot = file.at(key).get<std::string>();
        else
            slot = file.at(key).get<T>();
    };
    take("n", "--n", config.n);
    take("theta", "--theta", config.theta);
    take("n_theta", "--n-theta", config.n_theta);
    take("alpha", "--alpha", config.alpha);
    take("n_alpha", "--n-alpha", config.n_alpha);
    take("input", "--input", config.input_path);
    take("input_json", "--input-json", config.input_json);
    take("trials", "--trials", config.trials);
    take("seed", "--seed", config.seed);
    take("records", "--records", config.records);
    take("fixed_x", "--fixed-x", config.fixed_x);
    take("grid_min", "--grid-min", config.grid_min);
    take("grid_max", "--grid-max", config.grid_max);
    take("grid_points", "--grid-points", config.grid_points);
    take("l", "--l", config.family_l);
    take("format", "--format", config.format);
    take("output", "--output", config.output);
    take("meta", "--meta", config.meta);
    take("max_n_theta", "--max-n-theta", config.max_n_theta);
    take("reproduce", "--reproduce", config.reproduce);
    take("asymptotic", "--asymptotic", config.asymptotic);
}

}  // namespace

double resolved_theta(const RunConfig& config, int n) {
    if (config.theta.has_value() == config.n_theta.has_value())
        throw std::invalid_argument("give exactly one of --theta and --n-theta");
    double theta = config.theta ? *config.theta : *config.n_theta / n;
    if (!(theta >= 0.0) || !std::isfinite(theta))
        throw std::invalid_argument("theta must be finite and >= 0");
    return theta;
}

double resolved_alpha(const RunConfig& config) {
    if (config.alpha.has_value() == config.n_alpha.has_value())
        throw std::invalid_argument("give exactly one of --alpha and --n-alpha");
    double alpha = config.alpha ? *config.alpha : std::sqrt(*config.n_alpha);
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be finite and > 0");
    return alpha;
}

int run_command(const RunConfig& config) {
    if (config.subcommand == "analyze") return run_analyze(config);
    if (config.subcommand == "simulate") return run_simulate(config);
    if (config.subcommand == "density") return run_density(config);
    if (config.subcommand == "demo") return run_demo(config);
    throw std::invalid_argument("unknown subcommand " + config.subcommand);
}

int cli_main(int argc, const char* const* argv) {
    RunConfig config;
    std::string config_path;

    CLI::App app{"preparation and nondestructive detection of two-mode photon-number entangled "
                 "states with a weak-cross-Kerr coherent probe"};
    app.require_subcommand(1);

    auto add_interaction = [&](CLI::App* sub) {
        sub->add_option("--theta", config.theta, "interaction phase per signal photon (radians)");
        sub->add_option("--n-theta", config.n_theta,
                        "interaction budget n*theta; theta = n_theta / n");
        sub->add_option("--alpha", config.alpha, "probe coherent amplitude (> 0)");
        sub->add_option("--n-alpha", config.n_alpha,
                        "probe mean photon number; alpha = sqrt(n_alpha)");
    };
    auto add_limits = [&](CLI::App* sub) {
        sub->add_option("--max-n-theta", config.max_n_theta,
                        "weak-interaction cap on n*theta")
            ->capture_default_str();
    };
    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--output", config.output, "write the primary output here, not stdout");
        sub->add_option("--config", config_path,
                        "JSON file supplying defaults for these flags; explicit flags win");
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", config.input_path, "input state spec file (JSON)");
        sub->add_option("--input-json", config.input_json, "input state spec as inline JSON");
    };
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    };

    CLI::App* analyze = app.add_subcommand("analyze", "closed-form discrimination error budget");
    analyze->add_option("--n", config.n, "total signal photon number");
    add_interaction(analyze);
    analyze->add_flag("--reproduce", config.reproduce,
                      "report the nominal operating point for --n (or --asymptotic)");
    analyze->add_flag("--asymptotic", config.asymptotic,
                      "large-n operating point (implies --reproduce)");
    analyze->add_option("--format", config.format, "json or csv")->capture_default_str();
    add_io(analyze);

    CLI::App* simulate = app.add_subcommand("simulate", "seeded measurement trials with records");
    add_input(simulate);
    add_interaction(simulate);
    add_limits(simulate);
    add_seed(simulate);
    simulate->add_option("--trials", config.trials, "number of trials (default 10000)");
    simulate->add_option("--records", config.records, "full records to keep in the output")
        ->capture_default_str();
    simulate->add_option("--fixed-x", config.fixed_x,
                         "skip sampling and force the outcome to this quadrature value");
    add_io(simulate);

    CLI::App* density = app.add_subcommand("density", "outcome density curve and thresholds");
    add_input(density);
    add_interaction(density);
    add_limits(density);
    density->add_option("--grid-min", config.grid_min, "grid start (default: lowest peak - 6)");
    density->add_option("--grid-max", config.grid_max, "grid end (default: highest peak + 6)");
    density->add_option("--grid-points", config.grid_points, "grid size")->capture_default_str();
    density->add_option("--meta", config.meta,
                        "sidecar JSON path (default: <output>.json when --output is set)");
    add_io(density);

    CLI::App* demo = app.add_subcommand("demo", "annotated protocol walkthroughs");
    demo->add_option("scenario", config.scenario, "entangler | parity2 | analyzer")->required();
    demo->add_option("--n", config.n, "total signal photon number");
    demo->add_option("--l", config.family_l, "family member to prepare (entangler)");
    demo->add_option("--trials", config.trials, "trials per input");
    add_interaction(demo);
    add_limits(demo);
    add_seed(demo);
    add_io(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        emit_error("config", e.what());
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        config.subcommand = sub->get_name();
        if (!config_path.empty()) merge_config_file(sub, load_json_file(config_path), config);
        return run_command(config);
    } catch (const NumericalVoidError& e) {
        emit_error("void", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const Json::exception& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
}

}  // namespace xkerr
