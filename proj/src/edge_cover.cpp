#include "cover/edge_cover.hpp"

#include <algorithm>
#include <cmath>

#include "cover/analysis.hpp"
#include "cover/errors.hpp"

namespace cover {

double threshold_density(double z, double p) {
    if (!(z >= 0.0 && z <= 1.0)) {
        throw ParameterError("threshold_density: z must lie in [0, 1]");
    }
    const EdgeCoverConstants constants = edge_cover_constants(p);
    return constants.ln_c_over_p / (p + (1.0 - p) * std::pow(constants.c, -z));
}

double threshold_cdf(double z, double p) {
    if (!(z >= 0.0 && z <= 1.0)) {
        throw ParameterError("threshold_cdf: z must lie in [0, 1]");
    }
    const EdgeCoverConstants constants = edge_cover_constants(p);
    return std::log(p * std::pow(constants.c, z) + 1.0 - p) / (p * p);
}

double threshold_inverse_cdf(double u, double p) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw ParameterError("threshold_inverse_cdf: u must lie in [0, 1]");
    }
    const EdgeCoverConstants constants = edge_cover_constants(p);
    const double z =
        std::log((std::expm1(p * p * u) + p) / p) / std::log(constants.c);
    return std::clamp(z, 0.0, 1.0);
}

double sample_threshold(double p, RandomStream& stream) {
    return threshold_inverse_cdf(stream.uniform_open_closed(), p);
}

double compute_tau(double epsilon, double p) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ParameterError("compute_tau: epsilon must be > 0");
    }
    const EdgeCoverConstants constants = edge_cover_constants(p);
    const double c = constants.c;
    const double ln_c = std::log(c);
    const double slack = p * (p + (1.0 - p) / c) * (p + (1.0 - p) / c) /
                         (2.0 * (1.0 - p) * ln_c) * epsilon;
    return std::log1p(slack) / ln_c;
}

EdgeCoverSession::EdgeCoverSession(int num_vertices, EdgeCoverConfig config,
                                   RandomStream stream)
    : config_(config), stream_(stream) {
    if (num_vertices < 0) {
        throw ParameterError("EdgeCoverSession: vertex count must be >= 0");
    }
    tau_ = compute_tau(config_.epsilon, config_.p);
    thresholds_.reserve(num_vertices);
    for (int v = 0; v < num_vertices; ++v) {
        thresholds_.push_back(sample_threshold(config_.p, stream_));
    }
    accumulated_.assign(num_vertices, 0.0);
    covered_.assign(num_vertices, false);
}

EdgeCoverSession::EdgeDecision EdgeCoverSession::feed_edge(int u, int v, double x,
                                                           double cost) {
    const int n = static_cast<int>(thresholds_.size());
    if (u < 0 || u >= n || v < 0 || v >= n) {
        throw ParameterError("feed_edge: unknown vertex id");
    }
    if (u == v) {
        throw ParameterError("feed_edge: self-loops are not edge-cover input");
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw ParameterError("feed_edge: x must be finite and >= 0");
    }
    if (!(cost >= 0.0) || !std::isfinite(cost)) {
        throw ParameterError("feed_edge: cost must be finite and >= 0");
    }

    EdgeDecision decision;
    const int edge_index = num_edges_fed_++;
    if (x == 0.0) {
        return decision;  // empty mass interval; nothing can cross
    }
    decision.copies = (x > tau_) ? static_cast<int>(std::ceil(x / tau_)) : 1;
    const double copy_mass = x / decision.copies;
    const int endpoints[2] = {u, v};

    bool selected = false;
    for (int copy = 0; copy < decision.copies; ++copy) {
        bool marked = false;
        for (int side = 0; side < 2; ++side) {
            const int w = endpoints[side];
            const double mass = accumulated_[w];
            if (mass < thresholds_[w] && thresholds_[w] <= mass + copy_mass) {
                const bool unconditional = stream_.uniform01() < config_.p;
                if (unconditional || !covered_[w]) {
                    marked = true;
                    decision.marked_by_endpoint[side] = true;
                }
            }
        }
        accumulated_[u] += copy_mass;
        accumulated_[v] += copy_mass;
        if (marked && !selected) {
            selected = true;
            covered_[u] = true;
            covered_[v] = true;
        }
    }
    if (selected) {
        decision.selected = true;
        selected_edges_.push_back(edge_index);
        selected_costs_.push_back(cost);
    }
    return decision;
}

RoundingOutcome EdgeCoverSession::finish() const {
    RoundingOutcome outcome;
    outcome.selected = selected_edges_;
    for (double cost : selected_costs_) {
        outcome.total_cost += cost;
    }
    outcome.covered.assign(covered_.begin(), covered_.end());
    return outcome;
}

RoundingOutcome run_edge_cover(const PseudoInstance& pi, EdgeCoverConfig config,
                               RandomStream stream) {
    EdgeCoverSession session(pi.system.num_elements, config, stream);
    std::vector<int> selected;
    for (std::size_t step = 0; step < pi.arrival.size(); ++step) {
        const int e = pi.arrival[step];
        const auto& neighbors = pi.system.subsets[e].neighbors;
        if (neighbors.size() != 2) {
            throw MalformedInstanceError("run_edge_cover: subset " + std::to_string(e) +
                                         " is not an edge (needs exactly two neighbors)");
        }
        const auto decision = session.feed_edge(neighbors[0], neighbors[1],
                                                pi.solution.values[e],
                                                pi.system.subsets[e].cost);
        if (decision.selected) {
            selected.push_back(e);
        }
    }
    return make_outcome(pi.system, selected);
}

}  // namespace cover
