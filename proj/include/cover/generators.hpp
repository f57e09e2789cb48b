#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cover/element_arrival.hpp"
#include "cover/instance.hpp"

namespace cover {

// Reproducible instance recipe: same spec, same instance.
struct GeneratorSpec {
    std::string family;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
};

// Random set system where every element ends up covered to >= 1 (a bump
// pass with a 5-25% overshoot fixes any shortfall, so feasibility is robust
// to accumulation error). Requires m * s >= n.
PseudoInstance random_feasible_instance(int n, int m, int s, double cost_min,
                                        double cost_max, std::uint64_t seed);

// Irreducible v-complete pseudo-instance: per-element singleton values plus
// the complete vertex v arriving last. `order` interleaves the singletons
// globally (element id repeated once per singleton of that element); empty
// means element-by-element.
PseudoInstance irreducible_v_complete(int k, double x_v,
                                      std::vector<std::vector<double>> singleton_lists,
                                      std::vector<int> order = {});

// Keep N(v) as the element universe and the subsets sharing a neighbor with
// v that arrive no later than v; trim neighbor lists to N(v); v arrives
// last. Values and costs carry over.
PseudoInstance vcomplete_reduction(const PseudoInstance& pi, int v);

// One splitting step toward irreducibility: detach the lowest-id neighbor
// of the last multi-neighbor subset into a fresh singleton inserted right
// after it. Returns {result, changed}; an already irreducible input is a
// flagged no-op.
std::pair<PseudoInstance, bool> irreducible_reduction_step(const PseudoInstance& pi, int v);

// The unpenalized-clock stress family: s elements, each pre-covered to 1/2
// by s singletons of value 1/(2s), then v with value 1/s over everything.
// The structure is fixed; seed is accepted for interface uniformity.
PseudoInstance adversarial_growth_family(int s, std::uint64_t seed = 0);

// 3-cycle with x = 1/2 per edge and unit costs: fractional cost 1.5,
// integral optimum 2.
PseudoInstance triangle_half_integral();

// Random irreducible v-complete pseudo-instance (1-3 singletons per
// element, random masses; possibly infeasible).
PseudoInstance random_irreducible_instance(int k, std::uint64_t seed);

// Random v-complete pseudo-instance guaranteed to be reducible.
PseudoInstance random_v_complete_reducible(int k, std::uint64_t seed);

// Random multigraph with a feasible fractional edge cover (subsets are
// vertex pairs).
PseudoInstance random_edge_instance(int vertices, std::uint64_t seed);

// Vertex cover as set cover: elements are the edges of a random graph,
// subsets its vertices, with a feasible half-integral solution in {0, 1/2, 1}.
PseudoInstance random_half_integral_vertex_cover(int vertices, std::uint64_t seed);

enum class ScriptMode {
    kFullReveal,   // each subset's full value appears at its first member arrival
    kRandomSplit,  // values released in random pieces, coverage kept >= 1
};

// Element-arrival adversary script for a feasible instance; elements arrive
// in a seed-shuffled order.
AdversaryScript element_arrival_script(const PseudoInstance& pi, ScriptMode mode,
                                       std::uint64_t seed);

// Family dispatch for the CLI and experiment configs. Families:
// random-feasible, irreducible, v-complete-reducible, growth, triangle,
// random-edge, halfint-vc.
PseudoInstance make_from_spec(const GeneratorSpec& spec);

std::vector<std::string> generator_family_names();

}  // namespace cover
