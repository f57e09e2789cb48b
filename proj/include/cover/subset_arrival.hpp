#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cover/clocks.hpp"
#include "cover/instance.hpp"

namespace cover {

// Online rounding under subset arrivals with penalized simulated clocks.
// alpha defaults to max{2, ln s_known}. Decisions are irrevocable; covered
// flags and accumulated per-element mass only ever grow.
class SubsetArrivalSession {
public:
    struct Decision {
        int arrival_index = -1;
        int marked_by = -1;          // first element that marked, -1 if none
        bool deterministic = false;  // that first mark used the x >= r/alpha branch
        bool selected = false;
    };

    SubsetArrivalSession(int num_elements, int s_known,
                         std::optional<double> alpha_override, RandomStream stream);

    // One subset arrival. Draws Z ~ Exp(x); for every still-uncovered
    // neighbor u computes the remaining mass r and either marks
    // deterministically (x >= r/alpha) or marks when Z <= Exp(r/alpha - x).
    // The accumulated mass of every neighbor grows by x afterwards.
    Decision feed_subset(std::span<const int> neighbors, double x, double cost = 1.0);

    RoundingOutcome finish() const;

    double alpha() const { return alpha_; }
    int s_known() const { return s_known_; }
    bool is_covered(int u) const { return covered_[u]; }
    double accumulated_mass(int u) const { return accumulated_[u]; }
    const std::vector<Decision>& decisions() const { return decisions_; }

private:
    struct SelectedRecord {
        int arrival_index = -1;
        double cost = 0.0;
        std::vector<int> neighbors;
    };

    int num_elements_;
    int s_known_;
    double alpha_;
    RandomStream stream_;
    std::vector<double> accumulated_;  // sum of x over earlier arrivals per element
    std::vector<bool> covered_;
    std::vector<int> seen_epoch_;
    int epoch_ = 0;
    std::vector<SelectedRecord> selected_;
    std::vector<Decision> decisions_;
};

// Uniform-threshold baseline: theta_u drawn once per element; a subset is
// selected when it is the first to push some member's accumulated mass past
// that member's threshold.
class ThresholdSession {
public:
    ThresholdSession(int num_elements, RandomStream stream);

    bool feed_subset(std::span<const int> neighbors, double x);

    const std::vector<double>& thresholds() const { return thresholds_; }
    double accumulated_mass(int u) const { return accumulated_[u]; }

private:
    int num_elements_;
    std::vector<double> thresholds_;
    std::vector<double> accumulated_;
};

// Drive a full pseudo-instance through either scheme in its arrival order.
// Selected indices in the outcome refer to the instance's subset indices.
RoundingOutcome run_subset_arrival(const PseudoInstance& pi,
                                   std::optional<double> alpha_override,
                                   RandomStream stream);

RoundingOutcome run_threshold_baseline(const PseudoInstance& pi, RandomStream stream);

// alpha rule of the penalized scheme.
double default_alpha(int s_known);

}  // namespace cover
