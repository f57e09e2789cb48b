#include "cover/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cover/analysis.hpp"
#include "cover/edge_cover.hpp"
#include "cover/errors.hpp"
#include "cover/offline.hpp"
#include "cover/subset_arrival.hpp"

namespace cover {

namespace {

constexpr double kZ = 3.0;                  // 99.7% intervals throughout
constexpr std::uint64_t kBlock = 8192;      // accumulation block; fixes FP order

// Per-block partial sums. Blocks are reduced in index order no matter which
// thread computed them, so job count never changes a report.
struct BlockSums {
    std::uint64_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
};

template <typename PerTrial>
std::vector<BlockSums> run_blocks(std::uint64_t trials, int jobs, PerTrial per_trial) {
    const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
    std::vector<BlockSums> sums(blocks);
    jobs = std::max(1, jobs);
    auto worker = [&](std::uint64_t block) {
        BlockSums& bs = sums[block];
        const std::uint64_t hi = std::min(trials, (block + 1) * kBlock);
        for (std::uint64_t t = block * kBlock; t < hi; ++t) {
            const double value = per_trial(t);
            bs.count += 1;
            bs.sum += value;
            bs.sum_sq += value * value;
        }
    };
    if (jobs == 1 || blocks <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) worker(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        const int threads = std::min<std::uint64_t>(jobs, blocks);
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) {
            pool.emplace_back([&] {
                for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
                    worker(b);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return sums;
}

TrialReport reduce_frequency(const std::vector<BlockSums>& sums, std::uint64_t trials,
                             std::uint64_t master_seed) {
    std::uint64_t successes = 0;
    for (const BlockSums& bs : sums) {
        successes += static_cast<std::uint64_t>(bs.sum + 0.5);
    }
    return wilson_report(successes, trials, master_seed);
}

TrialReport reduce_mean(const std::vector<BlockSums>& sums, std::uint64_t trials,
                        std::uint64_t master_seed) {
    double sum = 0.0, sum_sq = 0.0;
    for (const BlockSums& bs : sums) {
        sum += bs.sum;
        sum_sq += bs.sum_sq;
    }
    TrialReport report;
    report.trials = trials;
    report.master_seed = master_seed;
    report.is_frequency = false;
    report.estimate = sum / trials;
    const double variance =
        trials > 1 ? std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1)) : 0.0;
    report.std_error = std::sqrt(variance / trials);
    report.ci_lo = report.estimate - kZ * report.std_error;
    report.ci_hi = report.estimate + kZ * report.std_error;
    return report;
}

}  // namespace

SchemeKind scheme_kind_from_name(const std::string& name) {
    if (name == "offline") return SchemeKind::kOffline;
    if (name == "element-arrival") return SchemeKind::kElementArrival;
    if (name == "subset-arrival") return SchemeKind::kSubsetArrival;
    if (name == "threshold-baseline") return SchemeKind::kThresholdBaseline;
    if (name == "edge-cover") return SchemeKind::kEdgeCover;
    throw ParameterError("unknown scheme '" + name +
                         "' (expected offline, element-arrival, subset-arrival, "
                         "threshold-baseline or edge-cover)");
}

std::string scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::kOffline: return "offline";
        case SchemeKind::kElementArrival: return "element-arrival";
        case SchemeKind::kSubsetArrival: return "subset-arrival";
        case SchemeKind::kThresholdBaseline: return "threshold-baseline";
        case SchemeKind::kEdgeCover: return "edge-cover";
    }
    return "offline";
}

RoundingOutcome run_scheme(const SchemeSpec& spec, const PseudoInstance& pi,
                           RandomStream stream) {
    switch (spec.kind) {
        case SchemeKind::kOffline:
            return round_offline(pi.system, pi.solution, stream);
        case SchemeKind::kElementArrival:
            return run_element_arrival(pi.system, spec.script, stream);
        case SchemeKind::kSubsetArrival:
            return run_subset_arrival(pi, spec.alpha, stream);
        case SchemeKind::kThresholdBaseline:
            return run_threshold_baseline(pi, stream);
        case SchemeKind::kEdgeCover:
            return run_edge_cover(pi, EdgeCoverConfig{spec.p, spec.epsilon}, stream);
    }
    throw ParameterError("run_scheme: bad scheme kind");
}

TrialReport wilson_report(std::uint64_t successes, std::uint64_t trials,
                          std::uint64_t master_seed) {
    if (trials < 1) {
        throw ParameterError("wilson_report: trials must be >= 1");
    }
    TrialReport report;
    report.trials = trials;
    report.master_seed = master_seed;
    report.is_frequency = true;
    const double n = static_cast<double>(trials);
    const double p_hat = static_cast<double>(successes) / n;
    report.estimate = p_hat;
    report.std_error = std::sqrt(p_hat * (1.0 - p_hat) / n);
    const double z2 = kZ * kZ;
    const double denom = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denom;
    const double half =
        kZ * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)) / denom;
    report.ci_lo = std::max(0.0, center - half);
    report.ci_hi = std::min(1.0, center + half);
    return report;
}

TrialReport estimate_indicator(const std::function<bool(std::uint64_t, RandomStream&)>& trial,
                               std::uint64_t trials, std::uint64_t master_seed, int jobs) {
    if (trials < 1) {
        throw ParameterError("estimate_indicator: trials must be >= 1");
    }
    auto sums = run_blocks(trials, jobs, [&](std::uint64_t t) {
        RandomStream stream = derive_stream(master_seed, t);
        return trial(t, stream) ? 1.0 : 0.0;
    });
    return reduce_frequency(sums, trials, master_seed);
}

namespace {

bool outcome_infeasible(const SchemeSpec& spec, const RoundingOutcome& outcome) {
    if (spec.kind == SchemeKind::kElementArrival) {
        for (const ArrivalStep& step : spec.script) {
            if (!outcome.covered[step.element]) return true;
        }
        return false;
    }
    return std::find(outcome.covered.begin(), outcome.covered.end(), false) !=
           outcome.covered.end();
}

}  // namespace

TrialReport estimate_event(const SchemeSpec& spec, const PseudoInstance& pi,
                           const std::string& event, std::uint64_t trials,
                           std::uint64_t master_seed, int jobs) {
    if (trials < 1) {
        throw ParameterError("estimate_event: trials must be >= 1");
    }
    if (event.rfind("bernoulli:", 0) == 0) {
        const double p = std::stod(event.substr(10));
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ParameterError("bernoulli event probability must lie in [0, 1]");
        }
        return estimate_indicator(
            [p](std::uint64_t, RandomStream& stream) { return stream.uniform01() < p; },
            trials, master_seed, jobs);
    }
    if (event.rfind("selected:", 0) == 0) {
        const int target = std::stoi(event.substr(9));
        if (target < 0 || target >= pi.system.num_subsets()) {
            throw ParameterError("selected:<subset> index out of range");
        }
        return estimate_indicator(
            [&](std::uint64_t, RandomStream& stream) {
                const RoundingOutcome outcome = run_scheme(spec, pi, stream);
                return std::binary_search(outcome.selected.begin(), outcome.selected.end(),
                                          target);
            },
            trials, master_seed, jobs);
    }
    if (event == "infeasible") {
        return estimate_indicator(
            [&](std::uint64_t, RandomStream& stream) {
                return outcome_infeasible(spec, run_scheme(spec, pi, stream));
            },
            trials, master_seed, jobs);
    }
    throw ParameterError("unknown event '" + event +
                         "' (expected selected:<subset>, infeasible or bernoulli:<p>)");
}

TrialReport estimate_cost_ratio(const SchemeSpec& spec, const PseudoInstance& pi,
                                std::uint64_t trials, std::uint64_t master_seed,
                                int jobs) {
    if (trials < 1) {
        throw ParameterError("estimate_cost_ratio: trials must be >= 1");
    }
    const FractionalSolution& reference =
        spec.kind == SchemeKind::kElementArrival
            ? script_totals(pi.system, spec.script)
            : pi.solution;
    const double denom = fractional_cost(pi.system, reference);
    if (!(denom > 0.0)) {
        throw ParameterError("estimate_cost_ratio: fractional cost must be > 0");
    }
    auto sums = run_blocks(trials, jobs, [&](std::uint64_t t) {
        RandomStream stream = derive_stream(master_seed, t);
        return run_scheme(spec, pi, stream).total_cost / denom;
    });
    return reduce_mean(sums, trials, master_seed);
}

std::vector<std::string> known_bound_ids() {
    return {"Hk", "penalized-Hk", "halfint", "s", "edge-1.8"};
}

std::vector<SweepRow> sweep(const SchemeSpec& spec,
                            const std::vector<std::pair<std::string, PseudoInstance>>& instances,
                            const std::string& bound_id, std::uint64_t trials,
                            std::uint64_t master_seed, int jobs) {
    if (trials < 1) {
        throw ParameterError("sweep: trials must be >= 1");
    }
    const auto ids = known_bound_ids();
    if (std::find(ids.begin(), ids.end(), bound_id) == ids.end()) {
        std::string names;
        for (const auto& id : ids) names += (names.empty() ? "" : ", ") + id;
        throw ParameterError("unknown bound id '" + bound_id + "' (expected one of " +
                             names + ")");
    }

    std::vector<SweepRow> rows;
    for (std::size_t index = 0; index < instances.size(); ++index) {
        const auto& [instance_id, pi] = instances[index];
        const int m = pi.system.num_subsets();

        // All subsets are counted from the same trials.
        std::vector<std::uint64_t> hits(m, 0);
        const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
        std::vector<std::vector<std::uint64_t>> block_hits(blocks);
        jobs = std::max(1, jobs);
        auto worker = [&](std::uint64_t block) {
            auto& local = block_hits[block];
            local.assign(m, 0);
            const std::uint64_t hi = std::min(trials, (block + 1) * kBlock);
            for (std::uint64_t t = block * kBlock; t < hi; ++t) {
                RandomStream stream = derive_stream(master_seed + index, t);
                const RoundingOutcome outcome = run_scheme(spec, pi, stream);
                for (int v : outcome.selected) {
                    ++local[v];
                }
            }
        };
        if (jobs == 1 || blocks <= 1) {
            for (std::uint64_t b = 0; b < blocks; ++b) worker(b);
        } else {
            std::atomic<std::uint64_t> next{0};
            std::vector<std::thread> pool;
            const int threads = std::min<std::uint64_t>(jobs, blocks);
            for (int i = 0; i < threads; ++i) {
                pool.emplace_back([&] {
                    for (std::uint64_t b = next.fetch_add(1); b < blocks;
                         b = next.fetch_add(1)) {
                        worker(b);
                    }
                });
            }
            for (auto& th : pool) th.join();
        }
        for (const auto& local : block_hits) {
            for (int v = 0; v < m; ++v) hits[v] += local[v];
        }

        std::optional<double> alpha;
        if (bound_id == "penalized-Hk") {
            alpha = spec.alpha ? *spec.alpha : default_alpha(max_subset_size(pi.system));
        }
        for (int v = 0; v < m; ++v) {
            const std::size_t degree = pi.system.subsets[v].neighbors.size();
            if (degree == 0) continue;
            const double x = pi.solution.values[v];
            double bound = 0.0;
            if (bound_id == "Hk") {
                bound = harmonic(static_cast<int>(degree)) * x;
            } else if (bound_id == "penalized-Hk") {
                if (v != pi.arrival.back()) continue;  // applies to the designated last arrival
                bound = (7.0 * *alpha / 3.0) * harmonic(static_cast<int>(degree)) * x;
            } else if (bound_id == "halfint") {
                bound = half_integral_bound(static_cast<int>(degree)) * x;
            } else if (bound_id == "s") {
                bound = static_cast<double>(degree) * x;
            } else {  // edge-1.8
                bound = 1.8 * x;
            }
            SweepRow row;
            row.instance_id = instance_id;
            row.subset = v;
            row.report = wilson_report(hits[v], trials, master_seed + index);
            row.bound = bound;
            row.violated = row.report.estimate - kZ * row.report.std_error > bound;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace cover
