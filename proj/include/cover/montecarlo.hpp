#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cover/element_arrival.hpp"
#include "cover/instance.hpp"

namespace cover {

enum class SchemeKind {
    kOffline,
    kElementArrival,
    kSubsetArrival,
    kThresholdBaseline,
    kEdgeCover,
};

struct SchemeSpec {
    SchemeKind kind = SchemeKind::kOffline;
    std::optional<double> alpha;  // subset-arrival override
    double p = 0.46;              // edge cover
    double epsilon = 0.001;       // edge cover
    AdversaryScript script;       // element arrival
};

SchemeKind scheme_kind_from_name(const std::string& name);
std::string scheme_name(SchemeKind kind);

// One seeded run of the named scheme on the instance.
RoundingOutcome run_scheme(const SchemeSpec& spec, const PseudoInstance& pi,
                           RandomStream stream);

// Monte Carlo aggregate. Frequencies carry a 3-sigma Wilson interval, means
// a 3-sigma normal interval; both are bit-identical for a fixed
// (spec, trials, master_seed) regardless of the number of worker threads.
struct TrialReport {
    std::uint64_t trials = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t master_seed = 0;
    bool is_frequency = true;
};

TrialReport wilson_report(std::uint64_t successes, std::uint64_t trials,
                          std::uint64_t master_seed);

// Event ids: "selected:<subset>", "infeasible", "bernoulli:<p>" (synthetic,
// for interval calibration). Trial t uses stream (master_seed, t).
TrialReport estimate_event(const SchemeSpec& spec, const PseudoInstance& pi,
                           const std::string& event, std::uint64_t trials,
                           std::uint64_t master_seed, int jobs = 1);

// Mean of integral cost / fractional cost. For element arrival the
// fractional cost is the one implied by the script's increments.
TrialReport estimate_cost_ratio(const SchemeSpec& spec, const PseudoInstance& pi,
                                std::uint64_t trials, std::uint64_t master_seed,
                                int jobs = 1);

// Bound ids for sweeps: "Hk" (H_{|N(v)|} x_v, every subset), "penalized-Hk"
// ((7a/3) H_k x_v, the designated last arrival of an irreducible fixture),
// "halfint" (2k/(k+1) x_v, every subset), "s" (|N(v)| x_v, every subset),
// "edge-1.8" (1.8 x_e, every edge).
struct SweepRow {
    std::string instance_id;
    int subset = -1;
    TrialReport report;
    double bound = 0.0;
    bool violated = false;
};

std::vector<SweepRow> sweep(const SchemeSpec& spec,
                            const std::vector<std::pair<std::string, PseudoInstance>>& instances,
                            const std::string& bound_id, std::uint64_t trials,
                            std::uint64_t master_seed, int jobs = 1);

std::vector<std::string> known_bound_ids();

// Generic deterministic trial runner: trial(t, stream) -> indicator.
TrialReport estimate_indicator(const std::function<bool(std::uint64_t, RandomStream&)>& trial,
                               std::uint64_t trials, std::uint64_t master_seed,
                               int jobs = 1);

}  // namespace cover
