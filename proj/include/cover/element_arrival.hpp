#pragma once

#include <cstdint>
#include <vector>

#include "cover/clocks.hpp"
#include "cover/instance.hpp"

namespace cover {

// One step of an element-arrival adversary script: an element id plus the
// increments applied to x at that step (subset index, delta). Increments on
// subsets not containing the element are allowed.
struct ArrivalStep {
    int element = -1;
    std::vector<std::pair<int, double>> increments;
};

using AdversaryScript = std::vector<ArrivalStep>;

// Online rounding under element arrivals. Keeps the time-expanded copy
// graph: each arrival step spawns one copy per subset with a positive
// increment; the copy's clock is Exp(increment), drawn once. Copies with a
// zero increment would carry an infinite clock, so they are never stored.
class ElementArrivalSession {
public:
    struct Copy {
        int subset = -1;
        int step = -1;
        double increment = 0.0;
        ClockValue clock;
    };

    ElementArrivalSession(SetSystem system, RandomStream stream);

    // Applies the increments, draws clocks for the new copies, and runs the
    // argmin among the copies adjacent to u. Returns the subsets newly added
    // to the projected selection C.
    std::vector<int> feed_element(int u, const std::vector<std::pair<int, double>>& increments);

    RoundingOutcome finish() const;

    const SetSystem& system() const { return system_; }
    const std::vector<Copy>& copies() const { return copies_; }
    const std::vector<int>& selected_copies() const { return selected_copies_; }
    const std::vector<int>& arrived() const { return arrived_; }
    const std::vector<double>& cumulative_x() const { return cumulative_x_; }
    bool flagged() const { return flagged_; }

    // Number of copy neighbors in the auxiliary graph: elements of N(v) that
    // had not arrived before the copy's step (arrived later or never).
    int copy_degree(const Copy& copy) const;

    // The auxiliary instance over the arrived elements, re-indexed by
    // arrival step, with one subset per stored copy (in creation order),
    // plus the copies' clock values. Feeding these to the offline argmin
    // reproduces the session's copy selection exactly.
    std::pair<SetSystem, FractionalSolution> auxiliary_instance() const;
    std::vector<ClockValue> copy_clocks() const;

private:
    SetSystem system_;
    RandomStream stream_;
    std::vector<double> cumulative_x_;
    std::vector<int> arrival_step_;  // -1 while not arrived
    std::vector<int> arrived_;
    std::vector<Copy> copies_;
    std::vector<int> selected_copies_;
    std::vector<bool> selected_subset_;
    bool flagged_ = false;
};

// Replays a full script and returns the outcome over arrived elements.
RoundingOutcome run_element_arrival(const SetSystem& system, const AdversaryScript& script,
                                    RandomStream stream);

// Script helpers: total increment per subset (the adversary's final x) and
// the induced fractional cost.
FractionalSolution script_totals(const SetSystem& system, const AdversaryScript& script);

std::string serialize_script(const AdversaryScript& script);
AdversaryScript parse_script(const std::string& text);
AdversaryScript load_script_file(const std::string& path);

}  // namespace cover
