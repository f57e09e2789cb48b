#pragma once

#include <vector>

#include "cover/clocks.hpp"
#include "cover/instance.hpp"

namespace cover {

// Threshold density g(z) = (ln c / p) / (p + (1-p) c^{-z}) on [0, 1], where
// c = (e^{p^2} - 1)/p + 1. Positive, increasing, integrates to 1.
double threshold_density(double z, double p);

// G(z) = ln(p c^z + 1 - p) / p^2.
double threshold_cdf(double z, double p);

// G^{-1}(u) = log_c((e^{p^2 u} - (1 - p)) / p).
double threshold_inverse_cdf(double u, double p);

// Inverse-CDF sample with u in (0, 1], so the threshold lands in (0, 1].
double sample_threshold(double p, RandomStream& stream);

// Largest edge-copy size for which g can shift by at most epsilon/2:
// tau = log_c(1 + p (p + (1-p)/c)^2 / (2 (1-p) ln c) * epsilon).
double compute_tau(double epsilon, double p);

struct EdgeCoverConfig {
    double p = 0.46;
    double epsilon = 0.001;
};

// Online edge-cover rounding under edge arrivals. Each vertex draws one
// threshold from g up front. An arriving edge with x > tau is split into
// equal copies of size <= tau processed back to back; an endpoint whose
// threshold falls inside the copy's mass interval marks the edge, either
// unconditionally (probability p) or only while still uncovered.
class EdgeCoverSession {
public:
    struct EdgeDecision {
        bool selected = false;
        bool marked_by_endpoint[2] = {false, false};
        int copies = 0;
    };

    EdgeCoverSession(int num_vertices, EdgeCoverConfig config, RandomStream stream);

    EdgeDecision feed_edge(int u, int v, double x, double cost = 1.0);

    RoundingOutcome finish() const;

    double p() const { return config_.p; }
    double tau() const { return tau_; }
    const std::vector<double>& thresholds() const { return thresholds_; }
    bool is_covered(int vertex) const { return covered_[vertex]; }
    double accumulated_mass(int vertex) const { return accumulated_[vertex]; }

private:
    EdgeCoverConfig config_;
    double tau_;
    RandomStream stream_;
    std::vector<double> thresholds_;
    std::vector<double> accumulated_;
    std::vector<bool> covered_;
    int num_edges_fed_ = 0;
    std::vector<int> selected_edges_;
    std::vector<double> selected_costs_;
};

// Drive an edge instance (every subset exactly two distinct neighbors)
// through the scheme in arrival order.
RoundingOutcome run_edge_cover(const PseudoInstance& pi, EdgeCoverConfig config,
                               RandomStream stream);

}  // namespace cover
