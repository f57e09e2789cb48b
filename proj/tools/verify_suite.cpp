#include "verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "cover/analysis.hpp"
#include "cover/clocks.hpp"
#include "cover/edge_cover.hpp"
#include "cover/element_arrival.hpp"
#include "cover/errors.hpp"
#include "cover/generators.hpp"
#include "cover/instance.hpp"
#include "cover/montecarlo.hpp"
#include "cover/offline.hpp"
#include "cover/subset_arrival.hpp"

namespace cover::verify {

namespace {

struct Context {
    Options options;
    std::ostringstream detail;

    std::uint64_t trials(std::uint64_t quick, std::uint64_t full) const {
        return options.full ? full : quick;
    }
    std::uint64_t seed(std::uint64_t salt) const { return options.seed * 7919 + salt; }
};

using CheckFn = std::function<bool(Context&)>;

struct Check {
    std::string name;
    CheckFn run;
};

double three_sigma(double p, double n) {
    return 3.0 * std::sqrt(std::max(p * (1.0 - p), 1e-12) / n);
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

double frequency(const SchemeSpec& spec, const PseudoInstance& pi, int target,
                 std::uint64_t trials, std::uint64_t seed, int jobs) {
    return estimate_event(spec, pi, "selected:" + std::to_string(target), trials, seed,
                          jobs)
        .estimate;
}

// ---- clocks ---------------------------------------------------------------

bool check_min_law(Context& ctx) {
    const std::uint64_t n = ctx.trials(200'000, 1'000'000);
    std::vector<double> mins(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        RandomStream stream = derive_stream(ctx.seed(1), i);
        double m = sample_exponential(0.4, stream).value;
        m = std::min(m, sample_exponential(1.1, stream).value);
        m = std::min(m, sample_exponential(0.5, stream).value);
        mins[i] = m;
    }
    const double d =
        ks_distance(std::move(mins), [](double z) { return 1.0 - std::exp(-2.0 * z); });
    ctx.detail << "KS=" << d;
    return d < 0.005;
}

bool check_argmin_law(Context& ctx) {
    const std::uint64_t n = ctx.trials(200'000, 1'000'000);
    const std::vector<double> rates = {0.4, 1.1, 0.5};
    std::vector<std::uint64_t> wins(rates.size(), 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        RandomStream stream = derive_stream(ctx.seed(2), i);
        double best = std::numeric_limits<double>::infinity();
        int argmin = 0;
        for (std::size_t j = 0; j < rates.size(); ++j) {
            const double x = sample_exponential(rates[j], stream).value;
            if (x < best) {
                best = x;
                argmin = static_cast<int>(j);
            }
        }
        ++wins[argmin];
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < rates.size(); ++j) {
        worst = std::max(worst, std::abs(static_cast<double>(wins[j]) / n - rates[j] / 2.0));
    }
    ctx.detail << "max dev=" << worst;
    return worst < 0.005;
}

bool check_stochastic_order(Context& ctx) {
    const std::uint64_t n = ctx.trials(100'000, 500'000);
    for (double z : {0.25, 1.0, 3.0}) {
        std::uint64_t fast = 0, slow = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            RandomStream stream = derive_stream(ctx.seed(3), i);
            if (sample_exponential(1.7, stream).value < z) ++fast;
            if (sample_exponential(0.6, stream).value < z) ++slow;
        }
        if (static_cast<double>(fast) / n < static_cast<double>(slow) / n - 0.005) {
            ctx.detail << "violated at z=" << z;
            return false;
        }
    }
    return true;
}

bool check_stream_independence(Context& ctx) {
    const int streams = ctx.options.full ? 256 : 48;
    const int draws = 10'000;
    std::vector<std::vector<double>> data(streams, std::vector<double>(draws));
    for (int s = 0; s < streams; ++s) {
        RandomStream stream = derive_stream(ctx.seed(4), s);
        for (int i = 0; i < draws; ++i) data[s][i] = stream.uniform01();
    }
    double max_abs = 0.0;
    for (int a = 0; a < streams; ++a) {
        double ma = 0.0;
        for (double x : data[a]) ma += x;
        ma /= draws;
        for (int b = a + 1; b < streams; ++b) {
            double mb = 0.0;
            for (double x : data[b]) mb += x;
            mb /= draws;
            double sxy = 0.0, sxx = 0.0, syy = 0.0;
            for (int i = 0; i < draws; ++i) {
                sxy += (data[a][i] - ma) * (data[b][i] - mb);
                sxx += (data[a][i] - ma) * (data[a][i] - ma);
                syy += (data[b][i] - mb) * (data[b][i] - mb);
            }
            max_abs = std::max(max_abs, std::abs(sxy / std::sqrt(sxx * syy)));
        }
    }
    ctx.detail << "max |rho|=" << max_abs;
    // Order-statistics cap over all pairs at 1e4 draws per stream.
    return max_abs < 0.055;
}

// ---- instance -------------------------------------------------------------

bool check_roundtrip(Context& ctx) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        const PseudoInstance pi =
            random_feasible_instance(9, 8, 4, 0.5, 2.0, ctx.seed(5) + i);
        const std::string text = serialize_instance(pi);
        if (serialize_instance(parse_instance(text)) != text) {
            ctx.detail << "mismatch at seed offset " << i;
            return false;
        }
    }
    return true;
}

bool check_restrict_identity(Context& ctx) {
    const PseudoInstance pi = random_feasible_instance(10, 8, 4, 0.5, 2.0, ctx.seed(6));
    std::vector<int> all(pi.system.num_subsets());
    for (int v = 0; v < pi.system.num_subsets(); ++v) all[v] = v;
    const auto [sys, sol] = restrict_system(pi.system, pi.solution, all);
    if (sol.values != pi.solution.values) {
        ctx.detail << "solution changed under identity restriction";
        return false;
    }
    for (int v = 0; v < pi.system.num_subsets(); ++v) {
        if (sys.subsets[v].neighbors != pi.system.subsets[v].neighbors) return false;
    }
    return true;
}

bool check_validate_monotone(Context& ctx) {
    const PseudoInstance pi = random_feasible_instance(10, 8, 4, 0.5, 2.0, ctx.seed(7));
    FractionalSolution bumped = pi.solution;
    for (double& x : bumped.values) x += 0.3;
    const bool ok = validate_fractional_cover(pi.system, pi.solution).feasible &&
                    validate_fractional_cover(pi.system, bumped).feasible;
    if (!ok) ctx.detail << "monotonicity failed";
    return ok;
}

// ---- offline --------------------------------------------------------------

bool check_offline_feasibility(Context& ctx) {
    const std::uint64_t runs = ctx.trials(4'000, 100'000);
    const std::uint64_t per = runs / 20;
    for (std::uint64_t i = 0; i < 20; ++i) {
        const PseudoInstance pi =
            random_feasible_instance(10, 9, 4, 0.5, 2.0, ctx.seed(8) + i);
        for (std::uint64_t t = 0; t < per; ++t) {
            RandomStream stream = derive_stream(ctx.seed(9) + i, t);
            const RoundingOutcome outcome = round_offline(pi.system, pi.solution, stream);
            for (int u = 0; u < pi.system.num_elements; ++u) {
                if (!outcome.covered[u]) {
                    ctx.detail << "uncovered element";
                    return false;
                }
            }
        }
    }
    return true;
}

bool check_offline_subset_bound(Context& ctx) {
    const std::uint64_t trials = ctx.trials(200'000, 1'000'000);
    SchemeSpec spec;
    spec.kind = SchemeKind::kOffline;
    const PseudoInstance pi = random_feasible_instance(12, 10, 8, 0.5, 2.0, ctx.seed(10));
    const auto rows = sweep(spec, {{"offline", pi}}, "Hk", trials, ctx.seed(11),
                            ctx.options.jobs);
    for (const SweepRow& row : rows) {
        if (row.violated) {
            ctx.detail << "subset " << row.subset << " over H_k bound";
            return false;
        }
    }
    return true;
}

bool check_offline_oracle(Context& ctx) {
    const std::uint64_t trials = ctx.trials(200'000, 1'000'000);
    for (std::uint64_t i = 0; i < 3; ++i) {
        const PseudoInstance pi = random_irreducible_instance(3, ctx.seed(12) + i);
        const double exact = exact_offline_probability(pi);
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            RandomStream stream = derive_stream(ctx.seed(13) + i, t);
            const RoundingOutcome outcome = round_offline_with_clocks(
                pi.system, draw_offline_clocks(pi.solution, stream));
            if (std::binary_search(outcome.selected.begin(), outcome.selected.end(),
                                   pi.arrival.back())) {
                ++hits;
            }
        }
        const double p_hat = static_cast<double>(hits) / trials;
        if (std::abs(p_hat - exact) > three_sigma(exact, trials) + 1e-9) {
            ctx.detail << "oracle gap " << std::abs(p_hat - exact);
            return false;
        }
    }
    return true;
}

bool check_offline_cost_and_halfint(Context& ctx) {
    const std::uint64_t trials = ctx.trials(100'000, 400'000);
    SchemeSpec spec;
    spec.kind = SchemeKind::kOffline;
    const PseudoInstance pi = random_feasible_instance(12, 10, 8, 0.5, 2.0, ctx.seed(14));
    const TrialReport cost = estimate_cost_ratio(spec, pi, trials, ctx.seed(15),
                                                 ctx.options.jobs);
    if (cost.estimate > harmonic(max_subset_size(pi.system)) + 3.0 * cost.std_error) {
        ctx.detail << "cost ratio " << cost.estimate;
        return false;
    }
    const PseudoInstance vc = random_half_integral_vertex_cover(8, ctx.seed(16));
    const TrialReport ratio = estimate_cost_ratio(spec, vc, trials, ctx.seed(17),
                                                  ctx.options.jobs);
    const double bound = half_integral_bound(max_subset_size(vc.system));
    if (ratio.estimate > bound + 3.0 * ratio.std_error) {
        ctx.detail << "half-integral ratio " << ratio.estimate << " > " << bound;
        return false;
    }
    return true;
}

bool check_offline_order_free(Context& ctx) {
    const PseudoInstance pi = random_feasible_instance(10, 8, 4, 0.5, 2.0, ctx.seed(18));
    for (int t = 0; t < 500; ++t) {
        RandomStream stream = derive_stream(ctx.seed(19), t);
        const auto clocks = draw_offline_clocks(pi.solution, stream);
        const RoundingOutcome forward = round_offline_with_clocks(pi.system, clocks);
        std::vector<int> reversed;
        for (int u = pi.system.num_elements - 1; u >= 0; --u) {
            int winner = -1;
            for (int v : pi.system.element_subsets[u]) {
                if (clocks[v].is_infinite()) continue;
                if (winner < 0 || clocks[v] < clocks[winner]) winner = v;
            }
            reversed.push_back(winner);
        }
        if (make_outcome(pi.system, reversed).selected != forward.selected) {
            ctx.detail << "order dependence at trial " << t;
            return false;
        }
    }
    return true;
}

// ---- element arrival ------------------------------------------------------

bool check_element_feasible_irrevocable(Context& ctx) {
    const std::uint64_t runs = ctx.trials(2'000, 40'000);
    for (std::uint64_t i = 0; i < 10; ++i) {
        const PseudoInstance pi =
            random_feasible_instance(9, 8, 3, 0.5, 2.0, ctx.seed(20) + i);
        const AdversaryScript script = element_arrival_script(
            pi, i % 2 ? ScriptMode::kFullReveal : ScriptMode::kRandomSplit,
            ctx.seed(21) + i);
        for (std::uint64_t t = 0; t < runs / 10; ++t) {
            ElementArrivalSession session(pi.system, derive_stream(ctx.seed(22) + i, t));
            std::size_t selected_before = 0;
            for (const ArrivalStep& step : script) {
                session.feed_element(step.element, step.increments);
                const std::size_t now = session.selected_copies().size();
                if (now < selected_before) {
                    ctx.detail << "selection shrank";
                    return false;
                }
                selected_before = now;
            }
            const RoundingOutcome outcome = session.finish();
            for (const ArrivalStep& step : script) {
                if (!outcome.covered[step.element]) {
                    ctx.detail << "arrived element uncovered";
                    return false;
                }
            }
        }
    }
    return true;
}

bool check_element_coupling(Context& ctx) {
    const std::uint64_t runs = ctx.trials(2'000, 10'000);
    const PseudoInstance pi = random_feasible_instance(7, 6, 3, 0.5, 2.0, ctx.seed(23));
    const AdversaryScript script =
        element_arrival_script(pi, ScriptMode::kRandomSplit, ctx.seed(24));
    for (std::uint64_t t = 0; t < runs; ++t) {
        ElementArrivalSession session(pi.system, derive_stream(ctx.seed(25), t));
        for (const ArrivalStep& step : script) {
            session.feed_element(step.element, step.increments);
        }
        const auto [aux, x_hat] = session.auxiliary_instance();
        if (round_offline_with_clocks(aux, session.copy_clocks()).selected !=
            session.selected_copies()) {
            ctx.detail << "coupled run diverged";
            return false;
        }
    }
    return true;
}

bool check_element_bounds(Context& ctx) {
    const std::uint64_t trials = ctx.trials(100'000, 400'000);
    const PseudoInstance pi = random_feasible_instance(9, 8, 4, 0.5, 2.0, ctx.seed(26));
    SchemeSpec spec;
    spec.kind = SchemeKind::kElementArrival;
    spec.script = element_arrival_script(pi, ScriptMode::kRandomSplit, ctx.seed(27));

    std::map<std::pair<int, int>, std::uint64_t> hits;
    std::map<std::pair<int, int>, std::pair<int, double>> info;
    for (std::uint64_t t = 0; t < trials; ++t) {
        ElementArrivalSession session(pi.system, derive_stream(ctx.seed(28), t));
        for (const ArrivalStep& step : spec.script) {
            session.feed_element(step.element, step.increments);
        }
        for (int c : session.selected_copies()) {
            const auto& copy = session.copies()[c];
            ++hits[{copy.subset, copy.step}];
        }
        if (t == 0) {
            for (const auto& copy : session.copies()) {
                info[{copy.subset, copy.step}] = {session.copy_degree(copy),
                                                  copy.increment};
            }
        }
    }
    for (const auto& [key, meta] : info) {
        const double p_hat = static_cast<double>(hits[key]) / trials;
        const double bound = harmonic(meta.first) * meta.second;
        if (p_hat > bound + three_sigma(std::max(p_hat, 1e-3), trials)) {
            ctx.detail << "copy bound broken";
            return false;
        }
    }

    const TrialReport cost =
        estimate_cost_ratio(spec, pi, trials, ctx.seed(29), ctx.options.jobs);
    if (cost.estimate > harmonic(max_subset_size(pi.system)) + 3.0 * cost.std_error) {
        ctx.detail << "competitive ratio " << cost.estimate;
        return false;
    }
    return true;
}

// ---- subset arrival -------------------------------------------------------

bool check_subset_feasibility(Context& ctx) {
    const std::uint64_t runs = ctx.trials(4'000, 100'000);
    for (std::uint64_t i = 0; i < 20; ++i) {
        const PseudoInstance pi =
            random_feasible_instance(10, 9, 4, 0.5, 2.0, ctx.seed(30) + i);
        for (std::uint64_t t = 0; t < runs / 20; ++t) {
            const RoundingOutcome outcome =
                run_subset_arrival(pi, std::nullopt, derive_stream(ctx.seed(31) + i, t));
            for (int u = 0; u < pi.system.num_elements; ++u) {
                if (!outcome.covered[u]) {
                    ctx.detail << "uncovered element";
                    return false;
                }
            }
        }
    }
    return true;
}

bool check_subset_survival(Context& ctx) {
    const std::uint64_t trials = ctx.trials(200'000, 1'000'000);
    const double alpha = 2.0;
    std::uint64_t uncovered = 0;
    const std::vector<int> only = {0};
    for (std::uint64_t t = 0; t < trials; ++t) {
        SubsetArrivalSession session(1, 1, alpha, derive_stream(ctx.seed(32), t));
        session.feed_subset(only, 0.25);
        session.feed_subset(only, 0.25);
        if (!session.is_covered(0)) ++uncovered;
    }
    const double p_hat = static_cast<double>(uncovered) / trials;
    const double bound = std::pow(0.5, alpha);
    ctx.detail << "survival " << p_hat << " vs bound " << bound;
    return p_hat <= bound + three_sigma(bound, trials);
}

bool check_subset_penalized_bound(Context& ctx) {
    const std::uint64_t trials = ctx.trials(100'000, 400'000);
    SchemeSpec spec;
    spec.kind = SchemeKind::kSubsetArrival;
    std::vector<std::pair<std::string, PseudoInstance>> fixtures;
    for (std::uint64_t i = 0; i < 5; ++i) {
        fixtures.emplace_back("irr" + std::to_string(i),
                              random_irreducible_instance(4, ctx.seed(33) + i));
    }
    for (const SweepRow& row :
         sweep(spec, fixtures, "penalized-Hk", trials, ctx.seed(34), ctx.options.jobs)) {
        if (row.violated) {
            ctx.detail << row.instance_id << " broke the penalized bound";
            return false;
        }
    }
    return true;
}

bool check_subset_oracle(Context& ctx) {
    const std::uint64_t trials = ctx.trials(200'000, 1'000'000);
    SchemeSpec spec;
    spec.kind = SchemeKind::kSubsetArrival;
    for (std::uint64_t i = 0; i < 3; ++i) {
        const PseudoInstance pi = random_irreducible_instance(3, ctx.seed(35) + i);
        const double exact =
            exact_subset_arrival_probability(pi, default_alpha(max_subset_size(pi.system)));
        const double p_hat = frequency(spec, pi, pi.arrival.back(), trials,
                                       ctx.seed(36) + i, ctx.options.jobs);
        if (std::abs(p_hat - exact) > three_sigma(std::max(exact, 1e-4), trials) + 1e-9) {
            ctx.detail << "oracle gap " << std::abs(p_hat - exact);
            return false;
        }
    }
    return true;
}

bool check_subset_reduction_monotone(Context& ctx) {
    const std::uint64_t trials = ctx.trials(100'000, 300'000);
    SchemeSpec spec;
    spec.kind = SchemeKind::kSubsetArrival;
    const double n = static_cast<double>(trials);
    auto sigma_diff = [n](double a, double b) {
        return std::sqrt(a * (1.0 - a) / n + b * (1.0 - b) / n);
    };
    for (std::uint64_t i = 0; i < 3; ++i) {
        const PseudoInstance pi =
            random_feasible_instance(8, 7, 3, 0.5, 2.0, ctx.seed(37) + i);
        const int v = pi.arrival.back();
        const PseudoInstance reduced = vcomplete_reduction(pi, v);
        const double before =
            frequency(spec, pi, v, trials, ctx.seed(38) + i, ctx.options.jobs);
        const double after = frequency(spec, reduced, reduced.arrival.back(), trials,
                                       ctx.seed(39) + i, ctx.options.jobs);
        if (before > after + 3.0 * sigma_diff(before, after)) {
            ctx.detail << "v-complete reduction decreased the probability";
            return false;
        }

        const PseudoInstance reducible = random_v_complete_reducible(4, ctx.seed(40) + i);
        const auto [split, changed] =
            irreducible_reduction_step(reducible, reducible.arrival.back());
        const double lhs = frequency(spec, reducible, reducible.arrival.back(), trials,
                                     ctx.seed(41) + i, ctx.options.jobs);
        const double rhs = frequency(spec, split, split.arrival.back(), trials,
                                     ctx.seed(42) + i, ctx.options.jobs);
        if (changed && lhs > rhs + 3.0 * sigma_diff(lhs, rhs)) {
            ctx.detail << "irreducible step decreased the probability";
            return false;
        }
    }
    return true;
}

bool check_growth_family(Context& ctx) {
    double previous = 0.0;
    for (int s : {4, 16, 64}) {
        const PseudoInstance pi = adversarial_growth_family(s);
        const double x_v = pi.solution.values[pi.arrival.back()];
        const double ratio = exact_subset_arrival_probability(pi, 1.0) / x_v;
        if (ratio < previous - 1e-9) {
            ctx.detail << "unpenalized ratio dropped at s=" << s;
            return false;
        }
        previous = ratio;
        const double alpha = default_alpha(s);
        if (exact_subset_arrival_probability(pi, alpha) / x_v >
            (7.0 * alpha / 3.0) * harmonic(s) + 1e-9) {
            ctx.detail << "penalized ratio broke the bound at s=" << s;
            return false;
        }
    }
    return true;
}

bool check_threshold_baseline(Context& ctx) {
    const std::uint64_t trials = ctx.trials(100'000, 400'000);
    SchemeSpec spec;
    spec.kind = SchemeKind::kThresholdBaseline;
    const PseudoInstance pi = random_feasible_instance(8, 8, 3, 0.5, 2.0, ctx.seed(43));
    for (const SweepRow& row :
         sweep(spec, {{"thr", pi}}, "s", trials, ctx.seed(44), ctx.options.jobs)) {
        if (row.violated) {
            ctx.detail << "union bound violated";
            return false;
        }
    }
    return true;
}

// ---- edge cover -----------------------------------------------------------

bool check_edge_density(Context& ctx) {
    const double p = 0.46;
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-11;
    cfg.rel_tol = 1e-11;
    const double total =
        integrate([p](double z) { return threshold_density(z, p); }, 0.0, 1.0, cfg);
    if (std::abs(total - 1.0) > 1e-9) {
        ctx.detail << "pdf integral " << total;
        return false;
    }
    const EdgeCoverConstants constants = edge_cover_constants(p);
    for (double l : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double identity = threshold_density(l, p) *
                                (p + (1.0 - p) * std::exp(-p * constants.g0 * l));
        if (std::abs(identity - constants.ln_c_over_p) > 1e-12) {
            ctx.detail << "factor identity off at l=" << l;
            return false;
        }
    }
    for (double epsilon : {0.001, 0.01}) {
        const double tau = compute_tau(epsilon, p);
        for (double l : {0.0, 0.5, 1.0 - tau}) {
            if (threshold_density(l + tau, p) - threshold_density(l, p) >
                epsilon / 2.0 + 1e-15) {
                ctx.detail << "Lipschitz slack violated";
                return false;
            }
        }
    }
    return true;
}

bool check_edge_sampler(Context& ctx) {
    const std::uint64_t n = ctx.trials(200'000, 1'000'000);
    std::vector<double> samples(n);
    RandomStream stream = derive_stream(ctx.seed(45), 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        samples[i] = sample_threshold(0.46, stream);
    }
    const double d = ks_distance(std::move(samples),
                                 [](double z) { return threshold_cdf(z, 0.46); });
    ctx.detail << "KS=" << d;
    return d < 0.005;
}

bool check_edge_crossing(Context& ctx) {
    const std::uint64_t trials = ctx.trials(100'000, 300'000);
    std::uint64_t crossed = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        EdgeCoverSession session(3, {}, derive_stream(ctx.seed(46), t));
        session.feed_edge(0, 1, 0.45);
        session.feed_edge(0, 2, 0.3);
        if (session.thresholds()[0] <= session.accumulated_mass(0)) ++crossed;
    }
    const double expected = threshold_cdf(0.75, 0.46);
    const double p_hat = static_cast<double>(crossed) / trials;
    ctx.detail << "crossing " << p_hat << " vs " << expected;
    return std::abs(p_hat - expected) < 0.005;
}

bool check_edge_bounds(Context& ctx) {
    const std::uint64_t trials = ctx.trials(50'000, 200'000);
    std::uint64_t marks = 0;
    const double x = 0.5;
    for (std::uint64_t t = 0; t < trials; ++t) {
        EdgeCoverSession session(2, {}, derive_stream(ctx.seed(47), t));
        if (session.feed_edge(0, 1, x).marked_by_endpoint[0]) ++marks;
    }
    const double p_hat = static_cast<double>(marks) / trials;
    const double bound = (edge_cover_constants(0.46).ln_c_over_p + 0.0005) * x;
    if (p_hat > bound + three_sigma(bound, trials)) {
        ctx.detail << "endpoint mark " << p_hat << " > " << bound;
        return false;
    }

    SchemeSpec spec;
    spec.kind = SchemeKind::kEdgeCover;
    for (const SweepRow& row : sweep(spec, {{"tri", triangle_half_integral()}},
                                     "edge-1.8", trials, ctx.seed(48),
                                     ctx.options.jobs)) {
        if (row.violated) {
            ctx.detail << "1.8 bound violated on the triangle";
            return false;
        }
    }
    return true;
}

bool check_edge_feasibility(Context& ctx) {
    const std::uint64_t runs = ctx.trials(2'000, 20'000);
    for (std::uint64_t i = 0; i < 5; ++i) {
        const PseudoInstance pi = random_edge_instance(5, ctx.seed(49) + i);
        for (std::uint64_t t = 0; t < runs / 5; ++t) {
            const RoundingOutcome outcome =
                run_edge_cover(pi, {}, derive_stream(ctx.seed(50) + i, t));
            for (int u = 0; u < pi.system.num_elements; ++u) {
                if (!outcome.covered[u]) {
                    ctx.detail << "uncovered vertex";
                    return false;
                }
            }
        }
    }
    return true;
}

// ---- analysis -------------------------------------------------------------

bool check_analysis_identities(Context& ctx) {
    for (int k = 1; k <= 64; ++k) {
        if (std::abs(offline_factor_integral(0.0, k) - harmonic(k)) > 1e-8) {
            ctx.detail << "H_k identity failed at k=" << k;
            return false;
        }
    }
    for (int k : {2, 8}) {
        double previous = harmonic(k) + 1e-8;
        for (double y : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double value = offline_factor_integral(y, k);
            if (value > previous + 1e-9) {
                ctx.detail << "monotonicity failed";
                return false;
            }
            previous = value;
        }
    }
    return true;
}

bool check_analysis_penalized(Context& ctx) {
    RandomStream stream = derive_stream(ctx.seed(51), 0);
    for (int i = 0; i < 1000; ++i) {
        const double z = 20.0 * stream.uniform01();
        const double y = stream.uniform01();
        const double r = stream.uniform01();
        const double alpha = 1.0 + 5.0 * stream.uniform01();
        if (penalized_f(z, y, r_star(z, y, alpha), alpha) >
            penalized_f(z, y, r, alpha) + 1e-12) {
            ctx.detail << "r_star not a minimizer";
            return false;
        }
    }
    for (int k : {2, 16, 256, 1024}) {
        const double alpha = std::max(2.0, std::log(static_cast<double>(k)));
        if (tail_integral_singular(alpha, k) >
            (7.0 * std::exp(1.0) / 3.0) * tail_integral_plain(alpha, k) * (1.0 + 1e-9)) {
            ctx.detail << "secbnd ratio failed at k=" << k;
            return false;
        }
    }
    return true;
}

bool check_analysis_footnote(Context& ctx) {
    const AlphaOptimum factor =
        minimize_over_alpha([](double a) { return subset_arrival_factor(a, 2); });
    const AlphaOptimum refined =
        minimize_over_alpha([](double a) { return edge_refined_factor(a); });
    ctx.detail << "factor2 min " << factor.value << " @ " << factor.alpha
               << "; refined " << refined.value << " @ " << refined.alpha;
    return factor.value >= 3.41 && factor.value <= 3.43 && factor.alpha >= 1.70 &&
           factor.alpha <= 1.75 && refined.value >= 1.884 && refined.value <= 1.904 &&
           refined.alpha >= 1.08 && refined.alpha <= 1.13;
}

// ---- montecarlo -----------------------------------------------------------

bool check_mc_determinism(Context& ctx) {
    SchemeSpec spec;
    spec.kind = SchemeKind::kOffline;
    const PseudoInstance pi = triangle_half_integral();
    const TrialReport a = estimate_event(spec, pi, "selected:0", 20'000, ctx.seed(52), 1);
    const TrialReport b = estimate_event(spec, pi, "selected:0", 20'000, ctx.seed(52), 4);
    if (a.estimate != b.estimate || a.ci_lo != b.ci_lo) {
        ctx.detail << "sharding changed the report";
        return false;
    }
    std::uint64_t covered = 0;
    const int meta = 400;
    for (int i = 0; i < meta; ++i) {
        const TrialReport report = estimate_event(SchemeSpec{}, PseudoInstance{},
                                                  "bernoulli:0.3", 1000,
                                                  ctx.seed(53) + i);
        if (report.ci_lo <= 0.3 && 0.3 <= report.ci_hi) ++covered;
    }
    ctx.detail << "CI coverage " << covered << "/" << meta;
    return covered >= meta * 99 / 100;
}

std::vector<Check> build_checks() {
    return {
        {"clocks/min-law", check_min_law},
        {"clocks/argmin-law", check_argmin_law},
        {"clocks/stochastic-order", check_stochastic_order},
        {"clocks/stream-independence", check_stream_independence},
        {"instance/file-roundtrip", check_roundtrip},
        {"instance/restrict-identity", check_restrict_identity},
        {"instance/validate-monotone", check_validate_monotone},
        {"offline/feasibility", check_offline_feasibility},
        {"offline/per-subset-bound", check_offline_subset_bound},
        {"offline/oracle-equivalence", check_offline_oracle},
        {"offline/cost-and-halfint", check_offline_cost_and_halfint},
        {"offline/order-independence", check_offline_order_free},
        {"element/feasible-irrevocable", check_element_feasible_irrevocable},
        {"element/offline-coupling", check_element_coupling},
        {"element/copy-and-cost-bounds", check_element_bounds},
        {"subset/feasibility", check_subset_feasibility},
        {"subset/uncovered-survival", check_subset_survival},
        {"subset/penalized-bound", check_subset_penalized_bound},
        {"subset/oracle-equivalence", check_subset_oracle},
        {"subset/reduction-monotonicity", check_subset_reduction_monotone},
        {"subset/growth-family", check_growth_family},
        {"threshold/union-bound", check_threshold_baseline},
        {"edge/density-and-tau", check_edge_density},
        {"edge/sampler-ks", check_edge_sampler},
        {"edge/disjoint-crossing", check_edge_crossing},
        {"edge/mark-and-selection-bounds", check_edge_bounds},
        {"edge/feasibility", check_edge_feasibility},
        {"analysis/integral-identities", check_analysis_identities},
        {"analysis/penalized-lemmas", check_analysis_penalized},
        {"analysis/footnote-minima", check_analysis_footnote},
        {"montecarlo/determinism-and-ci", check_mc_determinism},
    };
}

}  // namespace

int run_suite(const Options& options) {
    int failures = 0;
    for (const Check& check : build_checks()) {
        Context ctx{options, {}};
        bool ok = false;
        try {
            ok = check.run(ctx);
        } catch (const std::exception& e) {
            ctx.detail << "exception: " << e.what();
        }
        const std::string detail = ctx.detail.str();
        std::printf("[%s] %-34s %s\n", ok ? " OK " : "FAIL", check.name.c_str(),
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}

}  // namespace cover::verify
