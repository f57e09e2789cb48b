#include "cover/element_arrival.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cover/errors.hpp"

namespace cover {

ElementArrivalSession::ElementArrivalSession(SetSystem system, RandomStream stream)
    : system_(std::move(system)), stream_(stream) {
    cumulative_x_.assign(system_.num_subsets(), 0.0);
    arrival_step_.assign(system_.num_elements, -1);
    selected_subset_.assign(system_.num_subsets(), false);
}

std::vector<int> ElementArrivalSession::feed_element(
    int u, const std::vector<std::pair<int, double>>& increments) {
    if (u < 0 || u >= system_.num_elements) {
        throw ParameterError("feed_element: unknown element id " + std::to_string(u));
    }
    if (arrival_step_[u] >= 0) {
        throw ProtocolError("feed_element: element " + std::to_string(u) +
                            " was already fed");
    }
    const int step = static_cast<int>(arrived_.size());

    for (const auto& [v, delta] : increments) {
        if (v < 0 || v >= system_.num_subsets()) {
            throw ParameterError("feed_element: unknown subset index " + std::to_string(v));
        }
        if (!(delta >= 0.0) || !std::isfinite(delta)) {
            throw ParameterError("feed_element: increments must be finite and >= 0");
        }
        cumulative_x_[v] += delta;
        if (delta > 0.0) {
            copies_.push_back(Copy{v, step, delta, ClockValue{}});
            copies_.back().clock = sample_exponential(delta, stream_);
        }
    }

    double covered_mass = 0.0;
    for (int v : system_.element_subsets[u]) {
        covered_mass += cumulative_x_[v];
    }
    if (covered_mass < 1.0 - kEqTol) {
        throw AdversaryContractError("feed_element: element " + std::to_string(u) +
                                     " covered only to " + std::to_string(covered_mass));
    }

    arrival_step_[u] = step;
    arrived_.push_back(u);

    // Argmin over every stored copy of a subset containing u. Copies from
    // earlier steps are adjacent to u because u had not arrived yet.
    int winner = -1;
    for (std::size_t c = 0; c < copies_.size(); ++c) {
        const Copy& copy = copies_[c];
        if (copy.clock.is_infinite()) continue;
        const auto& neighbors = system_.subsets[copy.subset].neighbors;
        if (std::find(neighbors.begin(), neighbors.end(), u) == neighbors.end()) continue;
        if (winner < 0 || copy.clock < copies_[winner].clock) {
            winner = static_cast<int>(c);
        }
    }
    if (winner < 0) {
        // Unreachable once the coverage contract above passed; pick the
        // lowest-index candidate copy and flag the run rather than emit an
        // uncovered element silently.
        flagged_ = true;
        for (std::size_t c = 0; c < copies_.size() && winner < 0; ++c) {
            const auto& neighbors = system_.subsets[copies_[c].subset].neighbors;
            if (std::find(neighbors.begin(), neighbors.end(), u) != neighbors.end()) {
                winner = static_cast<int>(c);
            }
        }
        if (winner < 0) {
            throw AdversaryContractError("feed_element: element " + std::to_string(u) +
                                         " has no candidate copy");
        }
    }

    std::vector<int> newly_selected;
    if (!std::binary_search(selected_copies_.begin(), selected_copies_.end(), winner)) {
        selected_copies_.insert(
            std::lower_bound(selected_copies_.begin(), selected_copies_.end(), winner),
            winner);
    }
    const int subset = copies_[winner].subset;
    if (!selected_subset_[subset]) {
        selected_subset_[subset] = true;
        newly_selected.push_back(subset);
    }
    return newly_selected;
}

RoundingOutcome ElementArrivalSession::finish() const {
    std::vector<int> selected;
    for (int v = 0; v < system_.num_subsets(); ++v) {
        if (selected_subset_[v]) selected.push_back(v);
    }
    return make_outcome(system_, selected);
}

int ElementArrivalSession::copy_degree(const Copy& copy) const {
    int degree = 0;
    for (int u : system_.subsets[copy.subset].neighbors) {
        if (arrival_step_[u] < 0 || arrival_step_[u] >= copy.step) {
            ++degree;
        }
    }
    return degree;
}

std::pair<SetSystem, FractionalSolution> ElementArrivalSession::auxiliary_instance() const {
    std::vector<std::pair<std::vector<int>, double>> raw;
    FractionalSolution x_hat;
    for (const Copy& copy : copies_) {
        std::vector<int> neighbors;
        for (int u : system_.subsets[copy.subset].neighbors) {
            const int step = arrival_step_[u];
            if (step >= copy.step) {
                neighbors.push_back(step);  // arrived elements, re-indexed by step
            }
        }
        std::sort(neighbors.begin(), neighbors.end());
        raw.emplace_back(std::move(neighbors), system_.subsets[copy.subset].cost);
        x_hat.values.push_back(copy.increment);
    }
    return {build_set_system(static_cast<int>(arrived_.size()), std::move(raw)),
            std::move(x_hat)};
}

std::vector<ClockValue> ElementArrivalSession::copy_clocks() const {
    std::vector<ClockValue> clocks;
    clocks.reserve(copies_.size());
    for (const Copy& copy : copies_) {
        clocks.push_back(copy.clock);
    }
    return clocks;
}

RoundingOutcome run_element_arrival(const SetSystem& system, const AdversaryScript& script,
                                    RandomStream stream) {
    ElementArrivalSession session(system, stream);
    for (const ArrivalStep& step : script) {
        session.feed_element(step.element, step.increments);
    }
    return session.finish();
}

FractionalSolution script_totals(const SetSystem& system, const AdversaryScript& script) {
    FractionalSolution totals;
    totals.values.assign(system.num_subsets(), 0.0);
    for (const ArrivalStep& step : script) {
        for (const auto& [v, delta] : step.increments) {
            if (v < 0 || v >= system.num_subsets()) {
                throw MalformedInstanceError("script references unknown subset " +
                                             std::to_string(v));
            }
            totals.values[v] += delta;
        }
    }
    return totals;
}

std::string serialize_script(const AdversaryScript& script) {
    nlohmann::json doc = nlohmann::json::array();
    for (const ArrivalStep& step : script) {
        nlohmann::json increments = nlohmann::json::object();
        for (const auto& [v, delta] : step.increments) {
            increments[std::to_string(v)] = delta;
        }
        doc.push_back({{"element", step.element}, {"increments", increments}});
    }
    return doc.dump(2) + "\n";
}

AdversaryScript parse_script(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInstanceError(std::string("script syntax error: ") + e.what());
    }
    AdversaryScript script;
    try {
        for (const auto& entry : doc) {
            ArrivalStep step;
            step.element = entry.at("element").get<int>();
            for (const auto& [key, value] : entry.at("increments").items()) {
                step.increments.emplace_back(std::stoi(key), value.get<double>());
            }
            std::sort(step.increments.begin(), step.increments.end());
            script.push_back(std::move(step));
        }
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInstanceError(std::string("script field error: ") + e.what());
    }
    return script;
}

AdversaryScript load_script_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw MalformedInstanceError("cannot open script file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_script(buf.str());
}

}  // namespace cover
