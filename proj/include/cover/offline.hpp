#pragma once

#include <vector>

#include "cover/clocks.hpp"
#include "cover/instance.hpp"

namespace cover {

// Per-subset exponential clocks of rate x_v; every element picks the
// earliest-ringing clock among its subsets. Requires a feasible solution.
// One clock is drawn per subset, in subset order, regardless of coverage.
RoundingOutcome round_offline(const SetSystem& system,
                              const FractionalSolution& solution,
                              RandomStream& stream);

// Deterministic selection for a fixed clock vector. Ties go to the lowest
// subset index; elements are scanned in id order (the selected set does not
// depend on that order). Used for replay and coupling checks.
RoundingOutcome round_offline_with_clocks(const SetSystem& system,
                                          const std::vector<ClockValue>& clocks);

std::vector<ClockValue> draw_offline_clocks(const FractionalSolution& solution,
                                            RandomStream& stream);

}  // namespace cover
