#include "cover/offline.hpp"

#include "cover/errors.hpp"

namespace cover {

std::vector<ClockValue> draw_offline_clocks(const FractionalSolution& solution,
                                            RandomStream& stream) {
    std::vector<ClockValue> clocks;
    clocks.reserve(solution.values.size());
    for (double rate : solution.values) {
        clocks.push_back(sample_exponential(rate, stream));
    }
    return clocks;
}

RoundingOutcome round_offline_with_clocks(const SetSystem& system,
                                          const std::vector<ClockValue>& clocks) {
    if (clocks.size() != static_cast<std::size_t>(system.num_subsets())) {
        throw ParameterError("round_offline_with_clocks: clock count mismatch");
    }
    std::vector<int> selected;
    for (int u = 0; u < system.num_elements; ++u) {
        int winner = -1;
        for (int v : system.element_subsets[u]) {
            if (clocks[v].is_infinite()) continue;
            if (winner < 0 || clocks[v] < clocks[winner]) {
                winner = v;
            }
        }
        if (winner < 0) {
            throw InfeasibleInputError("element " + std::to_string(u) +
                                       " has no subset with a finite clock");
        }
        selected.push_back(winner);
    }
    return make_outcome(system, selected);
}

RoundingOutcome round_offline(const SetSystem& system,
                              const FractionalSolution& solution,
                              RandomStream& stream) {
    if (!validate_fractional_cover(system, solution).feasible) {
        throw InfeasibleInputError("round_offline: input solution is infeasible");
    }
    return round_offline_with_clocks(system, draw_offline_clocks(solution, stream));
}

}  // namespace cover
