// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code; seeds are fixed so
// reruns are bit-identical.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cover/analysis.hpp"
#include "cover/clocks.hpp"
#include "cover/edge_cover.hpp"
#include "cover/element_arrival.hpp"
#include "cover/generators.hpp"
#include "cover/instance.hpp"
#include "cover/montecarlo.hpp"
#include "cover/offline.hpp"
#include "cover/subset_arrival.hpp"

using namespace cover;

namespace {

double three_sigma(double p, double n) {
    return 3.0 * std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs((i + 1) / n - f));
        d = std::max(d, std::abs(f - i / n));
    }
    return d;
}

double offline_frequency(const PseudoInstance& pi, int target, std::uint64_t trials,
                         std::uint64_t seed) {
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RandomStream stream = derive_stream(seed, t);
        const RoundingOutcome outcome =
            round_offline_with_clocks(pi.system, draw_offline_clocks(pi.solution, stream));
        if (std::binary_search(outcome.selected.begin(), outcome.selected.end(), target)) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / trials;
}

double subset_frequency(const PseudoInstance& pi, int target, std::uint64_t trials,
                        std::uint64_t seed) {
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const RoundingOutcome outcome =
            run_subset_arrival(pi, std::nullopt, derive_stream(seed, t));
        if (std::binary_search(outcome.selected.begin(), outcome.selected.end(), target)) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / trials;
}

// 1. Constants of the edge-cover scheme.
bool criterion_constants(std::ostringstream& detail) {
    const EdgeCoverConstants constants = edge_cover_constants(0.46);
    detail << "ln c/p = " << constants.ln_c_over_p
           << ", per-edge factor = " << 2.0 * (constants.ln_c_over_p + 0.0005);
    return constants.ln_c_over_p < 0.8992 &&
           2.0 * (constants.ln_c_over_p + 0.0005) < 1.8;
}

// 2. The two footnote minimizations.
bool criterion_footnote(std::ostringstream& detail) {
    const AlphaOptimum factor =
        minimize_over_alpha([](double a) { return subset_arrival_factor(a, 2); });
    const AlphaOptimum refined =
        minimize_over_alpha([](double a) { return edge_refined_factor(a); });
    detail << "factor2 " << factor.value << " @ " << factor.alpha << "; refined "
           << refined.value << " @ " << refined.alpha;
    return factor.value >= 3.41 && factor.value <= 3.43 && factor.alpha >= 1.70 &&
           factor.alpha <= 1.75 && refined.value >= 1.884 && refined.value <= 1.904 &&
           refined.alpha >= 1.08 && refined.alpha <= 1.13;
}

// 3. The factor integral collapses to H_k at y = 0.
bool criterion_integral_identity(std::ostringstream& detail) {
    double worst = 0.0;
    for (int k = 1; k <= 64; ++k) {
        worst = std::max(worst, std::abs(offline_factor_integral(0.0, k) - harmonic(k)));
    }
    detail << "max |integral - H_k| = " << worst;
    return worst <= 1e-8;
}

// 4. Half-integral tightness at k = 2.
bool criterion_half_integral(std::ostringstream& detail) {
    const PseudoInstance pi = irreducible_v_complete(2, 0.5, {{0.5}, {0.5}});
    const std::uint64_t trials = 1'000'000;
    const double exact = exact_offline_probability(pi);
    const double p_hat = offline_frequency(pi, 2, trials, 41);
    const double sigma3 = three_sigma(2.0 / 3.0, trials);
    detail << "p_hat = " << p_hat << ", exact = " << exact << ", 3s = " << sigma3;
    return std::abs(p_hat - 2.0 / 3.0) <= sigma3 &&
           std::abs(p_hat - exact) <= sigma3 + 1e-9 &&
           std::abs(exact - 2.0 / 3.0) <= 1e-8;
}

// 5. Feasibility of all four schemes over 1e5 seeded runs each.
bool criterion_feasibility(std::ostringstream& detail) {
    std::uint64_t checked = 0;

    for (std::uint64_t i = 0; i < 20; ++i) {
        const PseudoInstance pi =
            random_feasible_instance(10, 9, 4, 0.5, 2.0, 500 + i);
        const AdversaryScript script =
            element_arrival_script(pi, i % 2 ? ScriptMode::kRandomSplit
                                             : ScriptMode::kFullReveal,
                                   600 + i);
        for (std::uint64_t t = 0; t < 5000; ++t) {
            RandomStream offline_stream = derive_stream(700 + i, t);
            const RoundingOutcome offline =
                round_offline(pi.system, pi.solution, offline_stream);
            const RoundingOutcome online =
                run_subset_arrival(pi, std::nullopt, derive_stream(800 + i, t));
            const RoundingOutcome element =
                run_element_arrival(pi.system, script, derive_stream(900 + i, t));
            for (int u = 0; u < pi.system.num_elements; ++u) {
                if (!offline.covered[u] || !online.covered[u] || !element.covered[u]) {
                    detail << "uncovered element on instance " << i;
                    return false;
                }
            }
            ++checked;
        }
    }

    for (std::uint64_t i = 0; i < 10; ++i) {
        const PseudoInstance pi =
            i == 0 ? triangle_half_integral() : random_edge_instance(5, 1000 + i);
        for (std::uint64_t t = 0; t < 10'000; ++t) {
            const RoundingOutcome outcome =
                run_edge_cover(pi, {}, derive_stream(1100 + i, t));
            for (int u = 0; u < pi.system.num_elements; ++u) {
                if (!outcome.covered[u]) {
                    detail << "uncovered vertex on edge instance " << i;
                    return false;
                }
            }
        }
    }
    detail << checked << " set-cover runs x3 schemes + 1e5 edge runs, zero misses";
    return true;
}

// 6. Per-subset bound sweeps, 50 instances per scheme, zero violations.
bool criterion_sweeps(std::ostringstream& detail) {
    std::uint64_t rows_checked = 0;

    SchemeSpec offline;
    offline.kind = SchemeKind::kOffline;
    std::vector<std::pair<std::string, PseudoInstance>> random_instances;
    for (std::uint64_t i = 0; i < 50; ++i) {
        random_instances.emplace_back("rnd" + std::to_string(i),
                                      random_feasible_instance(10, 9, 8, 0.5, 2.0,
                                                               2000 + i));
    }
    for (const SweepRow& row : sweep(offline, random_instances, "Hk", 20'000, 2100)) {
        if (row.violated) {
            detail << "offline H_k violation on " << row.instance_id;
            return false;
        }
        ++rows_checked;
    }

    SchemeSpec element;
    element.kind = SchemeKind::kElementArrival;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto& [id, pi] = random_instances[i];
        element.script = element_arrival_script(pi, ScriptMode::kFullReveal, 2200 + i);
        for (const SweepRow& row :
             sweep(element, {{id, pi}}, "Hk", 20'000, 2300 + i)) {
            if (row.violated) {
                detail << "element-arrival H_k violation on " << row.instance_id;
                return false;
            }
            ++rows_checked;
        }
    }

    SchemeSpec subset;
    subset.kind = SchemeKind::kSubsetArrival;
    std::vector<std::pair<std::string, PseudoInstance>> fixtures;
    for (std::uint64_t i = 0; i < 50; ++i) {
        fixtures.emplace_back("irr" + std::to_string(i),
                              random_irreducible_instance(2 + i % 5, 2400 + i));
    }
    for (const SweepRow& row :
         sweep(subset, fixtures, "penalized-Hk", 20'000, 2500)) {
        if (row.violated) {
            detail << "penalized bound violation on " << row.instance_id;
            return false;
        }
        ++rows_checked;
    }

    SchemeSpec threshold;
    threshold.kind = SchemeKind::kThresholdBaseline;
    for (const SweepRow& row : sweep(threshold, random_instances, "s", 20'000, 2600)) {
        if (row.violated) {
            detail << "threshold union bound violation on " << row.instance_id;
            return false;
        }
        ++rows_checked;
    }

    SchemeSpec edge;
    edge.kind = SchemeKind::kEdgeCover;
    std::vector<std::pair<std::string, PseudoInstance>> edge_instances;
    for (std::uint64_t i = 0; i < 50; ++i) {
        edge_instances.emplace_back(
            "edge" + std::to_string(i),
            i == 0 ? triangle_half_integral() : random_edge_instance(4, 2700 + i));
    }
    for (const SweepRow& row : sweep(edge, edge_instances, "edge-1.8", 5'000, 2800)) {
        if (row.violated) {
            detail << "edge 1.8 violation on " << row.instance_id;
            return false;
        }
        ++rows_checked;
    }

    detail << rows_checked << " per-subset rows, zero violations";
    return true;
}

// 7. Monte Carlo matches both exact oracles on 25 irreducible fixtures.
bool criterion_oracles(std::ostringstream& detail) {
    const std::uint64_t trials = 1'000'000;
    double worst_gap = 0.0;
    for (std::uint64_t i = 0; i < 25; ++i) {
        const PseudoInstance pi = random_irreducible_instance(2 + i % 5, 3000 + i);
        const int v = pi.arrival.back();

        const double subset_exact =
            exact_subset_arrival_probability(pi, default_alpha(max_subset_size(pi.system)));
        const double subset_hat = subset_frequency(pi, v, trials, 3100 + i);
        const double subset_gap = std::abs(subset_hat - subset_exact);
        if (subset_gap > three_sigma(subset_exact, trials) + 1e-9) {
            detail << "subset-arrival oracle gap " << subset_gap << " on fixture " << i;
            return false;
        }

        const double offline_exact = exact_offline_probability(pi);
        const double offline_hat = offline_frequency(pi, v, trials, 3200 + i);
        const double offline_gap = std::abs(offline_hat - offline_exact);
        if (offline_gap > three_sigma(offline_exact, trials) + 1e-9) {
            detail << "offline oracle gap " << offline_gap << " on fixture " << i;
            return false;
        }
        worst_gap = std::max({worst_gap, subset_gap, offline_gap});
    }
    detail << "25 fixtures x 1e6 trials, worst gap " << worst_gap;
    return true;
}

// 8. Reductions never lower the selection probability.
bool criterion_reductions(std::ostringstream& detail) {
    const std::uint64_t trials = 200'000;
    for (std::uint64_t i = 0; i < 13; ++i) {
        const PseudoInstance pi = random_feasible_instance(8, 7, 3, 0.5, 2.0, 4000 + i);
        const int v = pi.arrival.back();
        const PseudoInstance reduced = vcomplete_reduction(pi, v);
        const double before = subset_frequency(pi, v, trials, 4100 + i);
        const double after =
            subset_frequency(reduced, reduced.arrival.back(), trials, 4200 + i);
        const double sigma_diff = std::sqrt(before * (1.0 - before) / trials +
                                            after * (1.0 - after) / trials);
        if (before > after + 3.0 * sigma_diff) {
            detail << "v-complete reduction decreased Pr on pair " << i;
            return false;
        }
    }
    for (std::uint64_t i = 0; i < 12; ++i) {
        const PseudoInstance pi = random_v_complete_reducible(4, 4300 + i);
        const int v = pi.arrival.back();
        const auto [split, changed] = irreducible_reduction_step(pi, v);
        if (!changed) {
            detail << "fixture " << i << " unexpectedly irreducible";
            return false;
        }
        const double before = subset_frequency(pi, v, trials, 4400 + i);
        const double after =
            subset_frequency(split, split.arrival.back(), trials, 4500 + i);
        const double sigma_diff = std::sqrt(before * (1.0 - before) / trials +
                                            after * (1.0 - after) / trials);
        if (before > after + 3.0 * sigma_diff) {
            detail << "irreducible step decreased Pr on pair " << i;
            return false;
        }
    }
    detail << "25 reduction pairs at 2e5 trials each";
    return true;
}

// 9. Distribution facts: clock laws and the edge-cover threshold density.
bool criterion_distribution_facts(std::ostringstream& detail) {
    const std::uint64_t n = 1'000'000;
    const std::vector<double> rates = {0.4, 1.1, 0.5};
    std::vector<double> mins(n);
    std::vector<std::uint64_t> wins(rates.size(), 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        RandomStream stream = derive_stream(5100, i);
        double best = std::numeric_limits<double>::infinity();
        int argmin = 0;
        for (std::size_t j = 0; j < rates.size(); ++j) {
            const double x = sample_exponential(rates[j], stream).value;
            if (x < best) {
                best = x;
                argmin = static_cast<int>(j);
            }
        }
        mins[i] = best;
        ++wins[argmin];
    }
    const double ks_min =
        ks_distance(std::move(mins), [](double z) { return 1.0 - std::exp(-2.0 * z); });
    if (ks_min >= 0.005) {
        detail << "min-law KS " << ks_min;
        return false;
    }
    for (std::size_t j = 0; j < rates.size(); ++j) {
        if (std::abs(static_cast<double>(wins[j]) / n - rates[j] / 2.0) >= 0.005) {
            detail << "argmin frequency off for rate " << rates[j];
            return false;
        }
    }

    QuadratureConfig tight;
    tight.abs_tol = 1e-11;
    tight.rel_tol = 1e-11;
    const double pdf_total =
        integrate([](double z) { return threshold_density(z, 0.46); }, 0.0, 1.0, tight);
    if (std::abs(pdf_total - 1.0) > 1e-9) {
        detail << "pdf integral " << pdf_total;
        return false;
    }

    std::vector<double> thresholds(n);
    RandomStream stream = derive_stream(5200, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        thresholds[i] = sample_threshold(0.46, stream);
    }
    const double ks_threshold = ks_distance(
        std::move(thresholds), [](double z) { return threshold_cdf(z, 0.46); });
    if (ks_threshold >= 0.005) {
        detail << "threshold sampler KS " << ks_threshold;
        return false;
    }
    detail << "min-law KS " << ks_min << ", sampler KS " << ks_threshold
           << ", pdf integral " << pdf_total;
    return true;
}

// 10. Growth family: unpenalized ratio grows, penalized ratio stays bounded.
bool criterion_growth(std::ostringstream& detail) {
    double previous = 0.0;
    std::ostringstream ratios;
    for (int s : {4, 16, 64}) {
        const PseudoInstance pi = adversarial_growth_family(s);
        const double x_v = pi.solution.values[pi.arrival.back()];
        const double ratio = exact_subset_arrival_probability(pi, 1.0) / x_v;
        ratios << (s == 4 ? "" : " -> ") << ratio;
        if (ratio < previous - 1e-9) {
            detail << "unpenalized ratio decreased at s = " << s;
            return false;
        }
        previous = ratio;

        const double alpha = default_alpha(s);
        const double penalized = exact_subset_arrival_probability(pi, alpha) / x_v;
        if (penalized > (7.0 * alpha / 3.0) * harmonic(s) + 1e-9) {
            detail << "penalized ratio above the bound at s = " << s;
            return false;
        }
    }
    detail << "unpenalized ratios " << ratios.str();
    return true;
}

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::ostringstream&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "edge-cover constants", criterion_constants},
        {2, "footnote factor minimizations", criterion_footnote},
        {3, "factor integral equals H_k", criterion_integral_identity},
        {4, "half-integral tightness at k = 2", criterion_half_integral},
        {5, "feasibility of every scheme", criterion_feasibility},
        {6, "per-subset bound sweeps", criterion_sweeps},
        {7, "oracle equivalence", criterion_oracles},
        {8, "reduction monotonicity", criterion_reductions},
        {9, "distribution facts", criterion_distribution_facts},
        {10, "baseline growth trend", criterion_growth},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::ostringstream detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("[%s] criterion %2d: %-34s (%.1fs) %s\n", ok ? "PASS" : "FAIL",
                    criterion.number, criterion.title.c_str(), seconds,
                    detail.str().c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    } else {
        std::printf("acceptance: %d criteria FAILED\n", failures);
    }
    return failures == 0 ? 0 : 1;
}
