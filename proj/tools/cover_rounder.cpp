// Command-line front end: generate instances, run single roundings, drive
// Monte Carlo experiments, tabulate the numeric bounds, and verify the
// module properties.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cover/analysis.hpp"
#include "cover/edge_cover.hpp"
#include "cover/element_arrival.hpp"
#include "cover/errors.hpp"
#include "cover/generators.hpp"
#include "cover/instance.hpp"
#include "cover/montecarlo.hpp"
#include "cover/offline.hpp"
#include "cover/subset_arrival.hpp"
#include "verify_suite.hpp"

namespace {

using namespace cover;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_args(int argc, char** argv) {
    std::string joined;
    for (int i = 0; i < argc; ++i) {
        if (i) joined += ' ';
        joined += argv[i];
    }
    return joined;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw MalformedInstanceError("cannot write output file: " + path);
    }
    out << text;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {  // lo:hi:step
        double lo = 0.0, hi = 0.0, step = 0.0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0) {
            throw ParameterError("grid must be lo:hi:step or a comma list");
        }
        for (double a = lo; a <= hi + 1e-12; a += step) grid.push_back(a);
        return grid;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        grid.push_back(std::stod(item));
    }
    if (grid.empty()) {
        throw ParameterError("empty grid");
    }
    return grid;
}

std::string outcome_json(const RoundingOutcome& outcome, const std::string& scheme,
                         std::uint64_t seed, const std::string& flags) {
    std::ostringstream out;
    out << "{\n  \"flags\": " << nlohmann::json(flags).dump() << ",\n  \"scheme\": \""
        << scheme << "\",\n  \"seed\": " << seed << ",\n  \"selected\": [";
    for (std::size_t i = 0; i < outcome.selected.size(); ++i) {
        if (i) out << ", ";
        out << outcome.selected[i];
    }
    out << "],\n  \"total_cost\": " << fmt(outcome.total_cost) << ",\n  \"covered\": [";
    for (std::size_t i = 0; i < outcome.covered.size(); ++i) {
        if (i) out << ", ";
        out << (outcome.covered[i] ? "true" : "false");
    }
    out << "]\n}\n";
    return out.str();
}

struct ReportRow {
    std::string instance_id;
    std::string scheme;
    std::string alpha;
    std::uint64_t trials = 0;
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::string bound;     // empty when not a bound check
    std::string violated;  // empty when not a bound check

    static std::string csv_header() {
        return "instance_id,scheme,alpha,trials,estimate,ci_lo,ci_hi,bound,violated";
    }
    std::string to_csv() const {
        std::ostringstream out;
        out << instance_id << ',' << scheme << ',' << alpha << ',' << trials << ','
            << fmt(estimate) << ',' << fmt(ci_lo) << ',' << fmt(ci_hi) << ',' << bound
            << ',' << violated;
        return out.str();
    }
    std::string to_json() const {
        std::ostringstream out;
        out << "{\"instance_id\": " << nlohmann::json(instance_id).dump()
            << ", \"scheme\": \"" << scheme << "\", \"alpha\": "
            << (alpha.empty() ? "null" : alpha) << ", \"trials\": " << trials
            << ", \"estimate\": " << fmt(estimate) << ", \"ci_lo\": " << fmt(ci_lo)
            << ", \"ci_hi\": " << fmt(ci_hi) << ", \"bound\": "
            << (bound.empty() ? "null" : bound) << ", \"violated\": "
            << (violated.empty() ? "null" : violated) << "}";
        return out.str();
    }
};

std::string render_rows(const std::vector<ReportRow>& rows, const std::string& format,
                        const std::string& flags) {
    std::ostringstream out;
    if (format == "json") {
        out << "{\n\"flags\": " << nlohmann::json(flags).dump() << ",\n\"rows\": [\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << "  " << rows[i].to_json() << (i + 1 < rows.size() ? ",\n" : "\n");
        }
        out << "]\n}\n";
    } else {
        out << "# " << flags << "\n" << ReportRow::csv_header() << "\n";
        for (const ReportRow& row : rows) {
            out << row.to_csv() << "\n";
        }
    }
    return out.str();
}

GeneratorSpec spec_from_json(const nlohmann::json& doc) {
    GeneratorSpec spec;
    spec.family = doc.at("family").get<std::string>();
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("params")) {
        for (const auto& [key, value] : doc.at("params").items()) {
            spec.params[key] = value.get<double>();
        }
    }
    return spec;
}

// ---- gen --------------------------------------------------------------

struct GenArgs {
    std::string family;
    std::string out;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;
};

int cmd_gen(const GenArgs& args, const std::string& flags) {
    GeneratorSpec spec;
    spec.family = args.family;
    spec.seed = args.seed;
    spec.params = args.params;
    const PseudoInstance pi = make_from_spec(spec);
    write_text(args.out, serialize_instance(pi));
    std::cerr << "# " << flags << "\n"
              << "# wrote " << (args.out.empty() ? "stdout" : args.out) << ": n="
              << pi.system.num_elements << " m=" << pi.system.num_subsets() << "\n";
    return kExitOk;
}

// ---- round ------------------------------------------------------------

struct RoundArgs {
    std::string scheme;
    std::string instance_path;
    std::string script_path;
    std::string out;
    std::string log_path;
    std::optional<double> alpha;
    double p = 0.46;
    double epsilon = 0.001;
    std::uint64_t seed = 0;
};

int cmd_round(const RoundArgs& args, const std::string& flags) {
    const SchemeKind kind = scheme_kind_from_name(args.scheme);
    const PseudoInstance pi = load_instance_file(args.instance_path);
    SchemeSpec spec;
    spec.kind = kind;
    spec.alpha = args.alpha;
    spec.p = args.p;
    spec.epsilon = args.epsilon;
    if (kind == SchemeKind::kElementArrival) {
        if (args.script_path.empty()) {
            throw ParameterError("element-arrival rounding needs --script");
        }
        spec.script = load_script_file(args.script_path);
    }

    RoundingOutcome outcome;
    if (kind == SchemeKind::kSubsetArrival && !args.log_path.empty()) {
        // Drive a session directly so the decision log can be captured.
        SubsetArrivalSession session(pi.system.num_elements,
                                     std::max(1, max_subset_size(pi.system)), args.alpha,
                                     derive_stream(args.seed, 0));
        std::vector<int> selected;
        for (std::size_t step = 0; step < pi.arrival.size(); ++step) {
            const int v = pi.arrival[step];
            const auto decision = session.feed_subset(pi.system.subsets[v].neighbors,
                                                      pi.solution.values[v],
                                                      pi.system.subsets[v].cost);
            if (decision.selected) selected.push_back(v);
        }
        outcome = make_outcome(pi.system, selected);
        std::ostringstream log;
        log << "subset_index,marked_by,deterministic,selected\n";
        for (const auto& decision : session.decisions()) {
            log << pi.arrival[decision.arrival_index] << ',' << decision.marked_by << ','
                << (decision.deterministic ? 1 : 0) << ',' << (decision.selected ? 1 : 0)
                << "\n";
        }
        write_text(args.log_path, log.str());
    } else {
        outcome = run_scheme(spec, pi, derive_stream(args.seed, 0));
    }
    write_text(args.out, outcome_json(outcome, args.scheme, args.seed, flags));
    return kExitOk;
}

// ---- experiment ---------------------------------------------------------

struct ExperimentArgs {
    std::string config_path;
    std::string out_override;
    std::string format_override;
    int jobs = 1;
};

int cmd_experiment(const ExperimentArgs& args, const std::string& flags) {
    std::ifstream in(args.config_path);
    if (!in) {
        throw MalformedInstanceError("cannot open config file: " + args.config_path);
    }
    nlohmann::json config;
    try {
        config = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInstanceError(std::string("config syntax error: ") + e.what());
    }

    const std::string scheme = config.at("scheme").get<std::string>();
    SchemeSpec spec;
    spec.kind = scheme_kind_from_name(scheme);
    if (config.contains("alpha")) spec.alpha = config.at("alpha").get<double>();
    if (config.contains("p")) spec.p = config.at("p").get<double>();
    if (config.contains("epsilon")) spec.epsilon = config.at("epsilon").get<double>();
    const std::uint64_t trials = config.at("trials").get<std::uint64_t>();
    const std::uint64_t seed =
        config.contains("seed") ? config.at("seed").get<std::uint64_t>() : 0;

    if (config.contains("instance") == config.contains("generator")) {
        throw ParameterError("config needs exactly one instance source "
                             "(instance file or generator)");
    }
    std::vector<std::pair<std::string, PseudoInstance>> instances;
    if (config.contains("instance")) {
        const std::string path = config.at("instance").get<std::string>();
        instances.emplace_back(path, load_instance_file(path));
    } else {
        GeneratorSpec gen = spec_from_json(config.at("generator"));
        const int count = config.contains("count") ? config.at("count").get<int>() : 1;
        for (int i = 0; i < count; ++i) {
            GeneratorSpec item = gen;
            item.seed = gen.seed + static_cast<std::uint64_t>(i);
            instances.emplace_back(gen.family + "#" + std::to_string(item.seed),
                                   make_from_spec(item));
        }
    }

    if (spec.kind == SchemeKind::kElementArrival) {
        if (config.contains("script")) {
            spec.script = load_script_file(config.at("script").get<std::string>());
        } else {
            const std::string mode_name =
                config.contains("script-mode")
                    ? config.at("script-mode").get<std::string>()
                    : "full-reveal";
            const ScriptMode mode = mode_name == "random-split"
                                        ? ScriptMode::kRandomSplit
                                        : ScriptMode::kFullReveal;
            spec.script = element_arrival_script(instances.front().second, mode, seed);
        }
    }

    const std::string alpha_text =
        spec.kind == SchemeKind::kSubsetArrival
            ? fmt(spec.alpha ? *spec.alpha
                             : default_alpha(std::max(
                                   1, max_subset_size(instances.front().second.system))))
            : "";

    std::vector<ReportRow> rows;
    if (config.contains("bound")) {
        const std::string bound_id = config.at("bound").get<std::string>();
        for (const SweepRow& row :
             sweep(spec, instances, bound_id, trials, seed, args.jobs)) {
            rows.push_back(ReportRow{row.instance_id + ":v" + std::to_string(row.subset),
                                     scheme, alpha_text, row.report.trials,
                                     row.report.estimate, row.report.ci_lo,
                                     row.report.ci_hi, fmt(row.bound),
                                     row.violated ? "1" : "0"});
        }
    } else if (config.contains("event")) {
        const std::string event = config.at("event").get<std::string>();
        for (const auto& [id, pi] : instances) {
            const TrialReport report = estimate_event(spec, pi, event, trials, seed,
                                                      args.jobs);
            rows.push_back(ReportRow{id, scheme, alpha_text, report.trials,
                                     report.estimate, report.ci_lo, report.ci_hi, "",
                                     ""});
        }
    } else {  // cost-ratio metric by default
        for (const auto& [id, pi] : instances) {
            const TrialReport report = estimate_cost_ratio(spec, pi, trials, seed,
                                                           args.jobs);
            rows.push_back(ReportRow{id, scheme, alpha_text, report.trials,
                                     report.estimate, report.ci_lo, report.ci_hi, "",
                                     ""});
        }
    }

    std::string format = config.contains("format")
                             ? config.at("format").get<std::string>()
                             : "csv";
    if (!args.format_override.empty()) format = args.format_override;
    std::string out = config.contains("out") ? config.at("out").get<std::string>() : "";
    if (!args.out_override.empty()) out = args.out_override;
    write_text(out, render_rows(rows, format, flags));
    return kExitOk;
}

// ---- bounds -------------------------------------------------------------

struct BoundsArgs {
    std::string table;
    std::string alpha_grid = "2:8:0.5";
    std::string k_grid = "2,8,64";
    double p = 0.46;
    std::string out;
};

int cmd_bounds(const BoundsArgs& args, const std::string& flags) {
    std::ostringstream out;
    out << "# " << flags << "\n";
    if (args.table == "factor2") {
        out << "alpha,k,factor\n";
        std::vector<int> ks;
        for (double k : parse_grid(args.k_grid)) ks.push_back(static_cast<int>(k));
        for (const FactorRow& row : make_factor_table(parse_grid(args.alpha_grid), ks)) {
            out << fmt(row.alpha) << ',' << row.k << ',' << fmt(row.factor) << "\n";
        }
    } else if (args.table == "footnote") {
        const AlphaOptimum factor =
            minimize_over_alpha([](double a) { return subset_arrival_factor(a, 2); });
        const AlphaOptimum refined =
            minimize_over_alpha([](double a) { return edge_refined_factor(a); });
        out << "name,alpha,value\n";
        out << "subset-arrival-factor-k2," << fmt(factor.alpha) << ',' << fmt(factor.value)
            << "\n";
        out << "edge-refined-factor," << fmt(refined.alpha) << ',' << fmt(refined.value)
            << "\n";
    } else if (args.table == "constants") {
        const EdgeCoverConstants constants = edge_cover_constants(args.p);
        out << "name,value\n";
        out << "p," << fmt(args.p) << "\n";
        out << "c," << fmt(constants.c) << "\n";
        out << "ln_c_over_p," << fmt(constants.ln_c_over_p) << "\n";
        out << "g0," << fmt(constants.g0) << "\n";
        out << "tau_eps_0.001," << fmt(compute_tau(0.001, args.p)) << "\n";
        out << "per_edge_factor," << fmt(2.0 * (constants.ln_c_over_p + 0.0005)) << "\n";
    } else {
        throw ParameterError("unknown bounds table '" + args.table +
                             "' (expected factor2, footnote or constants)");
    }
    write_text(args.out, out.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string flags = join_args(argc, argv);
    CLI::App app{"Randomized rounding schemes for online set cover and edge cover"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("--family", gen_args.family, "instance family")->required();
    gen->add_option("--out", gen_args.out, "output path (default stdout)");
    gen->add_option("--seed", gen_args.seed, "generator seed")
        ->envname("COVER_ROUNDER_SEED");
    std::map<std::string, double> gen_params;
    for (const char* key : {"n", "m", "s", "k", "vertices", "cost-min", "cost-max"}) {
        gen->add_option_function<double>(
            std::string("--") + key,
            [&gen_params, key = std::string(key)](double v) { gen_params[key] = v; });
    }

    RoundArgs round_args;
    CLI::App* round = app.add_subcommand("round", "run one seeded rounding");
    round->add_option("--scheme", round_args.scheme, "scheme name")->required();
    round->add_option("--instance", round_args.instance_path, "instance file")->required();
    round->add_option("--script", round_args.script_path, "element-arrival script file");
    round->add_option("--out", round_args.out, "output path (default stdout)");
    round->add_option("--log", round_args.log_path, "subset-arrival decision CSV");
    double round_alpha = -1.0;
    round->add_option("--alpha", round_alpha, "subset-arrival alpha override");
    round->add_option("--p", round_args.p, "edge-cover p");
    round->add_option("--epsilon", round_args.epsilon, "edge-cover epsilon");
    round->add_option("--seed", round_args.seed, "trial seed")
        ->envname("COVER_ROUNDER_SEED");

    ExperimentArgs experiment_args;
    CLI::App* experiment = app.add_subcommand("experiment", "run a Monte Carlo config");
    experiment->add_option("--config", experiment_args.config_path, "config JSON")
        ->required();
    experiment->add_option("--out", experiment_args.out_override, "output override");
    experiment->add_option("--format", experiment_args.format_override, "csv or json");
    experiment->add_option("--jobs", experiment_args.jobs, "worker threads");

    BoundsArgs bounds_args;
    CLI::App* bounds = app.add_subcommand("bounds", "tabulate the numeric bounds");
    bounds->add_option("--table", bounds_args.table, "factor2, footnote or constants")
        ->required();
    bounds->add_option("--alpha-grid", bounds_args.alpha_grid, "comma list or lo:hi:step");
    bounds->add_option("--k-grid", bounds_args.k_grid, "comma list");
    bounds->add_option("--p", bounds_args.p, "edge-cover p");
    bounds->add_option("--out", bounds_args.out, "output path (default stdout)");

    verify::Options verify_options;
    std::string suite = "quick";
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the property suite");
    verify_cmd->add_option("--suite", suite, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify_cmd->add_option("--seed", verify_options.seed, "suite seed")
        ->envname("COVER_ROUNDER_SEED");
    verify_cmd->add_option("--jobs", verify_options.jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            gen_args.params = gen_params;
            return cmd_gen(gen_args, flags);
        }
        if (round->parsed()) {
            if (round_alpha > 0.0) round_args.alpha = round_alpha;
            return cmd_round(round_args, flags);
        }
        if (experiment->parsed()) {
            return cmd_experiment(experiment_args, flags);
        }
        if (bounds->parsed()) {
            return cmd_bounds(bounds_args, flags);
        }
        if (verify_cmd->parsed()) {
            verify_options.full = suite == "full";
            std::printf("# %s\n", flags.c_str());
            const int failures = verify::run_suite(verify_options);
            std::printf("%s: %d check(s) failed\n",
                        failures == 0 ? "PASS" : "FAIL", failures);
            return failures == 0 ? kExitOk : kExitViolation;
        }
    } catch (const CoverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
