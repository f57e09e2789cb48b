#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cover {

inline constexpr double kEqTol = 1e-12;

// One subset vertex of the bipartite representation: the element ids it
// contains plus its cost. Identity is the position in SetSystem::subsets.
struct SubsetVertex {
    std::vector<int> neighbors;
    double cost = 0.0;
};

// Bipartite set system: n element vertices (ids 0..n-1) and an ordered list
// of subset vertices. Immutable after construction; build via
// build_set_system so the invariants hold.
struct SetSystem {
    int num_elements = 0;
    std::vector<SubsetVertex> subsets;

    // Containing-subset list per element, filled in by build_set_system.
    std::vector<std::vector<int>> element_subsets;

    int num_subsets() const { return static_cast<int>(subsets.size()); }
};

// One nonnegative value x_v per subset vertex, in subset order.
struct FractionalSolution {
    std::vector<double> values;
};

// Per-element coverage sums against a fractional solution.
struct CoverageReport {
    std::vector<double> totals;
    bool feasible = false;
};

// (system, solution, arrival order). The solution need not be feasible.
struct PseudoInstance {
    SetSystem system;
    FractionalSolution solution;
    std::vector<int> arrival;  // permutation of subset indices
};

// Output of a rounding scheme.
struct RoundingOutcome {
    std::vector<int> selected;       // ascending subset indices
    double total_cost = 0.0;
    std::vector<bool> covered;       // per element id
};

SetSystem build_set_system(int num_elements,
                           std::vector<std::pair<std::vector<int>, double>> subsets);

// Non-fatal oddities (currently: subsets with no neighbors).
std::vector<std::string> validation_warnings(const SetSystem& system);

CoverageReport validate_fractional_cover(const SetSystem& system,
                                         const FractionalSolution& solution);

// s := max_v |N(v)|. Errors on an empty subset list.
int max_subset_size(const SetSystem& system);

// Keep only the given subset indices (any order, duplicates ignored); kept
// subsets appear in ascending original index and keep their neighbors,
// costs and values. The element universe is unchanged.
std::pair<SetSystem, FractionalSolution> restrict_system(
    const SetSystem& system, const FractionalSolution& solution,
    const std::vector<int>& keep);

double fractional_cost(const SetSystem& system, const FractionalSolution& solution);
double solution_value(const PseudoInstance& pi, int subset);

RoundingOutcome make_outcome(const SetSystem& system,
                             const std::vector<int>& selected_subsets);

PseudoInstance make_pseudo_instance(SetSystem system, FractionalSolution solution,
                                    std::vector<int> arrival = {});

// Instance file format: JSON with fields n, subsets ([{neighbors, cost, x}])
// and optional arrival. serialize_instance emits a canonical text with
// 17-significant-digit numbers so parse(serialize(pi)) == pi exactly.
PseudoInstance parse_instance(const std::string& text);
std::string serialize_instance(const PseudoInstance& pi);

PseudoInstance load_instance_file(const std::string& path);
void save_instance_file(const PseudoInstance& pi, const std::string& path);

}  // namespace cover
