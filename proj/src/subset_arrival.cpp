#include "cover/subset_arrival.hpp"

#include <algorithm>
#include <cmath>

#include "cover/errors.hpp"

namespace cover {

double default_alpha(int s_known) {
    if (s_known < 1) {
        throw ParameterError("default_alpha: s must be >= 1");
    }
    return std::max(2.0, std::log(static_cast<double>(s_known)));
}

SubsetArrivalSession::SubsetArrivalSession(int num_elements, int s_known,
                                           std::optional<double> alpha_override,
                                           RandomStream stream)
    : num_elements_(num_elements), s_known_(s_known), stream_(stream) {
    if (num_elements < 0) {
        throw ParameterError("SubsetArrivalSession: element count must be >= 0");
    }
    if (s_known < 1) {
        throw ParameterError("SubsetArrivalSession: announced s must be >= 1");
    }
    if (alpha_override) {
        if (!(*alpha_override > 0.0) || !std::isfinite(*alpha_override)) {
            throw ParameterError("SubsetArrivalSession: alpha override must be > 0");
        }
        alpha_ = *alpha_override;
    } else {
        alpha_ = default_alpha(s_known);
    }
    accumulated_.assign(num_elements, 0.0);
    covered_.assign(num_elements, false);
    seen_epoch_.assign(num_elements, 0);
}

SubsetArrivalSession::Decision SubsetArrivalSession::feed_subset(
    std::span<const int> neighbors, double x, double cost) {
    if (static_cast<int>(neighbors.size()) > s_known_) {
        throw AdversaryContractError("feed_subset: subset of size " +
                                     std::to_string(neighbors.size()) +
                                     " exceeds the announced s = " +
                                     std::to_string(s_known_));
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw ParameterError("feed_subset: x must be finite and >= 0");
    }
    if (!(cost >= 0.0) || !std::isfinite(cost)) {
        throw ParameterError("feed_subset: cost must be finite and >= 0");
    }
    ++epoch_;
    for (int u : neighbors) {
        if (u < 0 || u >= num_elements_) {
            throw ParameterError("feed_subset: unknown element id " + std::to_string(u));
        }
        if (seen_epoch_[u] == epoch_) {
            throw MalformedInstanceError("feed_subset: duplicate element id " +
                                         std::to_string(u));
        }
        seen_epoch_[u] = epoch_;
    }

    Decision decision;
    decision.arrival_index = static_cast<int>(decisions_.size());

    const ClockValue z = sample_exponential(x, stream_);
    bool marked = false;
    for (int u : neighbors) {
        if (covered_[u]) continue;
        const double r = std::max(1.0 - accumulated_[u], 0.0);
        if (x >= r / alpha_) {
            if (!marked) {
                decision.marked_by = u;
                decision.deterministic = true;
            }
            marked = true;
        } else {
            const ClockValue t = sample_exponential(r / alpha_ - x, stream_);
            if (z <= t) {
                if (!marked) {
                    decision.marked_by = u;
                    decision.deterministic = false;
                }
                marked = true;
            }
        }
    }

    for (int u : neighbors) {
        accumulated_[u] += x;
    }
    if (marked) {
        decision.selected = true;
        selected_.push_back(SelectedRecord{decision.arrival_index, cost,
                                           std::vector<int>(neighbors.begin(), neighbors.end())});
        for (int u : neighbors) {
            covered_[u] = true;
        }
    }
    decisions_.push_back(decision);
    return decision;
}

RoundingOutcome SubsetArrivalSession::finish() const {
    RoundingOutcome outcome;
    outcome.covered.assign(num_elements_, false);
    for (const SelectedRecord& record : selected_) {
        outcome.selected.push_back(record.arrival_index);
        outcome.total_cost += record.cost;
        for (int u : record.neighbors) {
            outcome.covered[u] = true;
        }
    }
    return outcome;
}

ThresholdSession::ThresholdSession(int num_elements, RandomStream stream)
    : num_elements_(num_elements) {
    if (num_elements < 0) {
        throw ParameterError("ThresholdSession: element count must be >= 0");
    }
    thresholds_.reserve(num_elements);
    // Strictly inside (0, 1): a threshold of exactly 0 could never be
    // crossed by the half-open crossing rule below.
    for (int u = 0; u < num_elements; ++u) {
        thresholds_.push_back(stream.uniform_open_open());
    }
    accumulated_.assign(num_elements, 0.0);
}

bool ThresholdSession::feed_subset(std::span<const int> neighbors, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw ParameterError("feed_subset: x must be finite and >= 0");
    }
    bool selected = false;
    for (int u : neighbors) {
        if (u < 0 || u >= num_elements_) {
            throw ParameterError("feed_subset: unknown element id " + std::to_string(u));
        }
        if (accumulated_[u] < thresholds_[u] && thresholds_[u] <= accumulated_[u] + x) {
            selected = true;
        }
    }
    for (int u : neighbors) {
        accumulated_[u] += x;
    }
    return selected;
}

namespace {

RoundingOutcome map_selection_to_instance(const PseudoInstance& pi,
                                          const std::vector<int>& selected_arrivals) {
    std::vector<int> selected;
    selected.reserve(selected_arrivals.size());
    for (int index : selected_arrivals) {
        selected.push_back(pi.arrival[index]);
    }
    return make_outcome(pi.system, selected);
}

}  // namespace

RoundingOutcome run_subset_arrival(const PseudoInstance& pi,
                                   std::optional<double> alpha_override,
                                   RandomStream stream) {
    int s_known = 1;
    for (const auto& subset : pi.system.subsets) {
        s_known = std::max(s_known, static_cast<int>(subset.neighbors.size()));
    }
    SubsetArrivalSession session(pi.system.num_elements, s_known, alpha_override, stream);
    std::vector<int> selected_arrivals;
    for (std::size_t step = 0; step < pi.arrival.size(); ++step) {
        const int v = pi.arrival[step];
        const auto decision = session.feed_subset(pi.system.subsets[v].neighbors,
                                                  pi.solution.values[v],
                                                  pi.system.subsets[v].cost);
        if (decision.selected) {
            selected_arrivals.push_back(static_cast<int>(step));
        }
    }
    return map_selection_to_instance(pi, selected_arrivals);
}

RoundingOutcome run_threshold_baseline(const PseudoInstance& pi, RandomStream stream) {
    ThresholdSession session(pi.system.num_elements, stream);
    std::vector<int> selected_arrivals;
    for (std::size_t step = 0; step < pi.arrival.size(); ++step) {
        const int v = pi.arrival[step];
        if (session.feed_subset(pi.system.subsets[v].neighbors, pi.solution.values[v])) {
            selected_arrivals.push_back(static_cast<int>(step));
        }
    }
    return map_selection_to_instance(pi, selected_arrivals);
}

}  // namespace cover
