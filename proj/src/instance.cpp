#include "cover/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cover/errors.hpp"

namespace cover {

namespace {

void check_solution_length(const SetSystem& system, const FractionalSolution& solution) {
    if (static_cast<int>(solution.values.size()) != system.num_subsets()) {
        throw MalformedInstanceError("solution length " +
                                     std::to_string(solution.values.size()) +
                                     " does not match subset count " +
                                     std::to_string(system.num_subsets()));
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Translate a byte offset from the JSON parser into a 1-based line number.
int line_of_offset(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

}  // namespace

SetSystem build_set_system(int num_elements,
                           std::vector<std::pair<std::vector<int>, double>> subsets) {
    if (num_elements < 0) {
        throw MalformedInstanceError("element count must be >= 0");
    }
    SetSystem system;
    system.num_elements = num_elements;
    system.subsets.reserve(subsets.size());
    system.element_subsets.assign(num_elements, {});

    std::vector<char> seen(num_elements, 0);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        auto& [neighbors, cost] = subsets[i];
        if (!(cost >= 0.0) || !std::isfinite(cost)) {
            throw MalformedInstanceError("subset " + std::to_string(i) +
                                         ": cost must be finite and >= 0");
        }
        for (int u : neighbors) {
            if (u < 0 || u >= num_elements) {
                throw MalformedInstanceError("subset " + std::to_string(i) +
                                             ": neighbor id " + std::to_string(u) +
                                             " out of range [0, " +
                                             std::to_string(num_elements) + ")");
            }
            if (seen[u]) {
                throw MalformedInstanceError("subset " + std::to_string(i) +
                                             ": duplicate neighbor id " + std::to_string(u));
            }
            seen[u] = 1;
        }
        for (int u : neighbors) {
            seen[u] = 0;
            system.element_subsets[u].push_back(static_cast<int>(i));
        }
        system.subsets.push_back(SubsetVertex{std::move(neighbors), cost});
    }
    return system;
}

std::vector<std::string> validation_warnings(const SetSystem& system) {
    std::vector<std::string> warnings;
    for (int v = 0; v < system.num_subsets(); ++v) {
        if (system.subsets[v].neighbors.empty()) {
            warnings.push_back("subset " + std::to_string(v) +
                               " has no neighbors; no scheme will ever select it");
        }
    }
    return warnings;
}

CoverageReport validate_fractional_cover(const SetSystem& system,
                                         const FractionalSolution& solution) {
    check_solution_length(system, solution);
    for (std::size_t v = 0; v < solution.values.size(); ++v) {
        const double x = solution.values[v];
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw MalformedInstanceError("x[" + std::to_string(v) +
                                         "] must be finite and >= 0");
        }
    }
    CoverageReport report;
    report.totals.assign(system.num_elements, 0.0);
    for (int v = 0; v < system.num_subsets(); ++v) {
        for (int u : system.subsets[v].neighbors) {
            report.totals[u] += solution.values[v];
        }
    }
    report.feasible = true;
    for (double t : report.totals) {
        if (t < 1.0 - kEqTol) {
            report.feasible = false;
            break;
        }
    }
    return report;
}

int max_subset_size(const SetSystem& system) {
    if (system.subsets.empty()) {
        throw MalformedInstanceError("max_subset_size: no subset vertices");
    }
    std::size_t s = 0;
    for (const auto& subset : system.subsets) {
        s = std::max(s, subset.neighbors.size());
    }
    return static_cast<int>(s);
}

std::pair<SetSystem, FractionalSolution> restrict_system(
    const SetSystem& system, const FractionalSolution& solution,
    const std::vector<int>& keep) {
    check_solution_length(system, solution);
    std::vector<int> indices = keep;
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());

    std::vector<std::pair<std::vector<int>, double>> kept;
    FractionalSolution restricted;
    for (int v : indices) {
        if (v < 0 || v >= system.num_subsets()) {
            throw MalformedInstanceError("restrict: subset index " + std::to_string(v) +
                                         " out of range");
        }
        kept.emplace_back(system.subsets[v].neighbors, system.subsets[v].cost);
        restricted.values.push_back(solution.values[v]);
    }
    return {build_set_system(system.num_elements, std::move(kept)), std::move(restricted)};
}

double fractional_cost(const SetSystem& system, const FractionalSolution& solution) {
    check_solution_length(system, solution);
    double total = 0.0;
    for (int v = 0; v < system.num_subsets(); ++v) {
        total += system.subsets[v].cost * solution.values[v];
    }
    return total;
}

double solution_value(const PseudoInstance& pi, int subset) {
    return pi.solution.values.at(subset);
}

RoundingOutcome make_outcome(const SetSystem& system,
                             const std::vector<int>& selected_subsets) {
    RoundingOutcome outcome;
    outcome.selected = selected_subsets;
    std::sort(outcome.selected.begin(), outcome.selected.end());
    outcome.selected.erase(std::unique(outcome.selected.begin(), outcome.selected.end()),
                           outcome.selected.end());
    outcome.covered.assign(system.num_elements, false);
    for (int v : outcome.selected) {
        outcome.total_cost += system.subsets[v].cost;
        for (int u : system.subsets[v].neighbors) {
            outcome.covered[u] = true;
        }
    }
    return outcome;
}

PseudoInstance make_pseudo_instance(SetSystem system, FractionalSolution solution,
                                    std::vector<int> arrival) {
    check_solution_length(system, solution);
    for (double x : solution.values) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw MalformedInstanceError("solution values must be finite and >= 0");
        }
    }
    const int m = system.num_subsets();
    if (arrival.empty()) {
        arrival.resize(m);
        for (int i = 0; i < m; ++i) arrival[i] = i;
    }
    if (static_cast<int>(arrival.size()) != m) {
        throw MalformedInstanceError("arrival order must list every subset exactly once");
    }
    std::vector<char> hit(m, 0);
    for (int v : arrival) {
        if (v < 0 || v >= m || hit[v]) {
            throw MalformedInstanceError("arrival order is not a permutation of subset indices");
        }
        hit[v] = 1;
    }
    return PseudoInstance{std::move(system), std::move(solution), std::move(arrival)};
}

PseudoInstance parse_instance(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInstanceError("instance syntax error at line " +
                                     std::to_string(line_of_offset(text, e.byte)) + ": " +
                                     e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("n") || !doc.contains("subsets")) {
            throw MalformedInstanceError("instance must be an object with fields n and subsets");
        }
        const int n = doc.at("n").get<int>();
        std::vector<std::pair<std::vector<int>, double>> raw;
        FractionalSolution solution;
        for (const auto& entry : doc.at("subsets")) {
            raw.emplace_back(entry.at("neighbors").get<std::vector<int>>(),
                             entry.at("cost").get<double>());
            solution.values.push_back(entry.at("x").get<double>());
        }
        std::vector<int> arrival;
        if (doc.contains("arrival")) {
            arrival = doc.at("arrival").get<std::vector<int>>();
        }
        return make_pseudo_instance(build_set_system(n, std::move(raw)),
                                    std::move(solution), std::move(arrival));
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInstanceError(std::string("instance field error: ") + e.what());
    }
}

std::string serialize_instance(const PseudoInstance& pi) {
    std::ostringstream out;
    out << "{\n  \"n\": " << pi.system.num_elements << ",\n  \"subsets\": [\n";
    for (int v = 0; v < pi.system.num_subsets(); ++v) {
        const auto& subset = pi.system.subsets[v];
        out << "    {\"neighbors\": [";
        for (std::size_t i = 0; i < subset.neighbors.size(); ++i) {
            if (i) out << ", ";
            out << subset.neighbors[i];
        }
        out << "], \"cost\": " << format_double(subset.cost)
            << ", \"x\": " << format_double(pi.solution.values[v]) << "}";
        out << (v + 1 < pi.system.num_subsets() ? ",\n" : "\n");
    }
    out << "  ],\n  \"arrival\": [";
    for (std::size_t i = 0; i < pi.arrival.size(); ++i) {
        if (i) out << ", ";
        out << pi.arrival[i];
    }
    out << "]\n}\n";
    return out.str();
}

PseudoInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw MalformedInstanceError("cannot open instance file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void save_instance_file(const PseudoInstance& pi, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw MalformedInstanceError("cannot write instance file: " + path);
    }
    out << serialize_instance(pi);
}

}  // namespace cover
