#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cover/analysis.hpp"
#include "cover/errors.hpp"
#include "cover/generators.hpp"
#include "cover/montecarlo.hpp"
#include "cover/subset_arrival.hpp"
#include "test_util.hpp"

using namespace cover;

namespace {

double selection_frequency(const PseudoInstance& pi, int target,
                           std::optional<double> alpha, int trials, std::uint64_t seed) {
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        const RoundingOutcome outcome =
            run_subset_arrival(pi, alpha, derive_stream(seed, t));
        if (std::binary_search(outcome.selected.begin(), outcome.selected.end(), target)) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / trials;
}

}  // namespace

TEST_CASE("alpha defaults to max{2, ln s}") {
    CHECK(default_alpha(4) == doctest::Approx(2.0));
    CHECK(default_alpha(1000) == doctest::Approx(std::log(1000.0)));
    SubsetArrivalSession session(3, 4, std::nullopt, derive_stream(1, 0));
    CHECK(session.alpha() == doctest::Approx(2.0));
    SubsetArrivalSession penalty_free(3, 4, 1.0, derive_stream(1, 1));
    CHECK(penalty_free.alpha() == doctest::Approx(1.0));
    CHECK_THROWS_AS(SubsetArrivalSession(3, 4, 0.0, derive_stream(1, 2)), ParameterError);
    CHECK_THROWS_AS(SubsetArrivalSession(3, 0, std::nullopt, derive_stream(1, 3)),
                    ParameterError);
}

TEST_CASE("crossing the remaining mass marks deterministically") {
    const std::vector<int> all = {0};
    for (int t = 0; t < 50; ++t) {
        SubsetArrivalSession session(1, 1, std::nullopt, derive_stream(2, t));
        const auto decision = session.feed_subset(all, 1.0);
        CHECK(decision.selected);
        CHECK(decision.deterministic);
        CHECK(decision.marked_by == 0);
        CHECK(session.is_covered(0));
    }
}

TEST_CASE("the two-subset chain selects v with probability 0.2") {
    const PseudoInstance chain = irreducible_v_complete(1, 0.6, {{0.4}});
    const double p_hat = selection_frequency(chain, 1, std::nullopt, 1'000'000, 3);
    CHECK(std::abs(p_hat - 0.2) < 0.005);
}

TEST_CASE("x = 0 subsets are never selected while mass remains") {
    const std::vector<int> all = {0};
    for (int t = 0; t < 2000; ++t) {
        SubsetArrivalSession session(1, 1, std::nullopt, derive_stream(4, t));
        const auto decision = session.feed_subset(all, 0.0);
        CHECK(!decision.selected);
    }
}

TEST_CASE("accumulated mass grows for covered neighbors too") {
    SubsetArrivalSession session(2, 2, std::nullopt, derive_stream(5, 0));
    const std::vector<int> pair = {0, 1};
    session.feed_subset(pair, 1.0);  // deterministic; covers both
    CHECK(session.is_covered(0));
    CHECK(session.is_covered(1));
    session.feed_subset(pair, 0.25);
    CHECK(session.accumulated_mass(0) == doctest::Approx(1.25));
    CHECK(session.accumulated_mass(1) == doctest::Approx(1.25));
}

TEST_CASE("contract violations throw") {
    SubsetArrivalSession session(3, 2, std::nullopt, derive_stream(6, 0));
    const std::vector<int> too_big = {0, 1, 2};
    CHECK_THROWS_AS(session.feed_subset(too_big, 0.5), AdversaryContractError);
    const std::vector<int> unknown = {5};
    CHECK_THROWS_AS(session.feed_subset(unknown, 0.5), ParameterError);
    const std::vector<int> duplicated = {1, 1};
    CHECK_THROWS_AS(session.feed_subset(duplicated, 0.5), MalformedInstanceError);
    const std::vector<int> ok = {0};
    CHECK_THROWS_AS(session.feed_subset(ok, -0.5), ParameterError);
}

TEST_CASE("feasible instances are always covered") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const PseudoInstance pi = random_feasible_instance(9, 8, 4, 0.5, 2.0, seed);
        for (int t = 0; t < 250; ++t) {
            const RoundingOutcome outcome =
                run_subset_arrival(pi, std::nullopt, derive_stream(7 + seed, t));
            for (int u = 0; u < pi.system.num_elements; ++u) {
                REQUIRE(outcome.covered[u]);
            }
        }
    }
}

TEST_CASE("an empty feed sequence gives an empty cover") {
    SubsetArrivalSession session(0, 1, std::nullopt, derive_stream(8, 0));
    const RoundingOutcome outcome = session.finish();
    CHECK(outcome.selected.empty());
    CHECK(outcome.total_cost == 0.0);
}

TEST_CASE("pseudo-instances report coverage without a guarantee") {
    // Total mass 0.4 < 1: the element stays uncovered with probability
    // 0.4 * 5/7 (both random marks fail), so misses must show up.
    const PseudoInstance pi = irreducible_v_complete(1, 0.1, {{0.3}});
    int uncovered_runs = 0;
    for (int t = 0; t < 4000; ++t) {
        const RoundingOutcome outcome =
            run_subset_arrival(pi, std::nullopt, derive_stream(9, t));
        if (!outcome.covered[0]) ++uncovered_runs;
    }
    CHECK(uncovered_runs > 0);

    // The split-singleton fixture is also infeasible, yet its fully bare
    // element forces a deterministic mark on v, so runs still cover there.
    const PseudoInstance forced =
        irreducible_v_complete(3, 0.5, {{0.2, 0.3}, {0.3}, {}}, {0, 1, 0});
    for (int t = 0; t < 500; ++t) {
        const RoundingOutcome outcome =
            run_subset_arrival(forced, std::nullopt, derive_stream(10, t));
        CHECK(outcome.covered[2]);
    }
}

TEST_CASE("uncovered-survival on a singleton chain stays under r^alpha") {
    // Three singletons of 0.2 on one element: after them r = 0.4, and the
    // survival bound is r^alpha evaluated stepwise.
    const double alpha = 2.0;
    const int trials = 400'000;
    int uncovered = 0;
    const std::vector<int> only = {0};
    for (int t = 0; t < trials; ++t) {
        SubsetArrivalSession session(1, 1, alpha, derive_stream(10, t));
        for (int i = 0; i < 3; ++i) {
            session.feed_subset(only, 0.2);
        }
        if (!session.is_covered(0)) ++uncovered;
    }
    const double p_hat = static_cast<double>(uncovered) / trials;
    const double bound = std::pow(0.4, alpha);
    CHECK(p_hat <= bound + testutil::three_sigma(bound, trials));
}

TEST_CASE("irreducible fixtures respect the (7 alpha / 3) H_k x bound") {
    for (std::uint64_t seed : {21, 22, 23}) {
        const PseudoInstance pi = random_irreducible_instance(4, seed);
        const int v = pi.arrival.back();
        const double x_v = pi.solution.values[v];
        const double alpha = default_alpha(4);
        const double p_hat = selection_frequency(pi, v, std::nullopt, 200'000, seed);
        const double bound = (7.0 * alpha / 3.0) * harmonic(4) * x_v;
        CHECK(p_hat <= bound + testutil::three_sigma(std::max(p_hat, 1e-3), 200'000));
    }
}

TEST_CASE("monte carlo matches the exact oracle on irreducible fixtures") {
    for (std::uint64_t seed : {31, 32, 33}) {
        const PseudoInstance pi = random_irreducible_instance(3, seed);
        const int v = pi.arrival.back();
        const double exact = exact_subset_arrival_probability(pi, default_alpha(3));
        const double p_hat = selection_frequency(pi, v, std::nullopt, 400'000, 500 + seed);
        CHECK(std::abs(p_hat - exact) <
              testutil::three_sigma(std::max(exact, 1e-4), 400'000) + 1e-9);
    }
}

TEST_CASE("reductions only increase the selection probability") {
    const int trials = 200'000;
    // Arbitrary pseudo-instance against its v-complete reduction.
    for (std::uint64_t seed : {41, 42, 43, 44, 45}) {
        const PseudoInstance pi = random_feasible_instance(8, 7, 3, 0.5, 2.0, seed);
        const int v = pi.arrival.back();
        const PseudoInstance reduced = vcomplete_reduction(pi, v);
        const double before = selection_frequency(pi, v, std::nullopt, trials, 600 + seed);
        const double after = selection_frequency(reduced, reduced.arrival.back(),
                                                 std::nullopt, trials, 700 + seed);
        CHECK(before <= after + 2.0 * testutil::three_sigma(std::max(after, 1e-3), trials));
    }
    // v-complete against one irreducibility step.
    for (std::uint64_t seed : {51, 52, 53, 54, 55}) {
        const PseudoInstance pi = random_v_complete_reducible(4, seed);
        const int v = pi.arrival.back();
        const auto [split, changed] = irreducible_reduction_step(pi, v);
        REQUIRE(changed);
        const double before = selection_frequency(pi, v, std::nullopt, trials, 800 + seed);
        const double after = selection_frequency(split, split.arrival.back(),
                                                 std::nullopt, trials, 900 + seed);
        CHECK(before <= after + 2.0 * testutil::three_sigma(std::max(after, 1e-3), trials));
    }
}

TEST_CASE("threshold baseline crosses partitions exactly once per element") {
    // Four singletons of 0.25 per element tile [0, 1).
    std::vector<std::pair<std::vector<int>, double>> raw;
    FractionalSolution solution;
    for (int u = 0; u < 3; ++u) {
        for (int i = 0; i < 4; ++i) {
            raw.emplace_back(std::vector<int>{u}, 1.0);
            solution.values.push_back(0.25);
        }
    }
    const PseudoInstance pi =
        make_pseudo_instance(build_set_system(3, std::move(raw)), std::move(solution));
    for (int t = 0; t < 4000; ++t) {
        const RoundingOutcome outcome = run_threshold_baseline(pi, derive_stream(11, t));
        CHECK(outcome.selected.size() == 3);  // one crossing per element
        for (int u = 0; u < 3; ++u) {
            CHECK(outcome.covered[u]);
        }
    }
}

TEST_CASE("threshold baseline matches its crossing oracle") {
    const PseudoInstance pi = random_feasible_instance(6, 6, 3, 0.5, 2.0, 77);
    const int trials = 400'000;
    std::vector<int> hits(pi.system.num_subsets(), 0);
    for (int t = 0; t < trials; ++t) {
        const RoundingOutcome outcome = run_threshold_baseline(pi, derive_stream(12, t));
        for (int v : outcome.selected) ++hits[v];
    }
    // Oracle: Pr[selected] = 1 - prod_u (1 - |(mass_u, mass_u + x] cap (0,1)|).
    std::vector<double> mass(pi.system.num_elements, 0.0);
    for (int step = 0; step < pi.system.num_subsets(); ++step) {
        const int v = pi.arrival[step];
        const double x = pi.solution.values[v];
        double miss = 1.0;
        for (int u : pi.system.subsets[v].neighbors) {
            const double lo = std::min(mass[u], 1.0);
            const double hi = std::min(mass[u] + x, 1.0);
            miss *= 1.0 - std::max(0.0, hi - lo);
        }
        const double exact = 1.0 - miss;
        const double p_hat = static_cast<double>(hits[v]) / trials;
        CHECK(std::abs(p_hat - exact) <
              testutil::three_sigma(std::max(exact, 1e-4), trials) + 1e-9);
        // Union bound from the statement of the baseline.
        CHECK(exact <= pi.system.subsets[v].neighbors.size() * x + 1e-12);
        for (int u : pi.system.subsets[v].neighbors) {
            mass[u] += x;
        }
    }
}

TEST_CASE("threshold baseline never selects zero-value subsets") {
    SetSystem system = build_set_system(1, {{{0}, 1.0}, {{0}, 1.0}});
    const PseudoInstance pi =
        make_pseudo_instance(std::move(system), FractionalSolution{{0.0, 1.0}});
    for (int t = 0; t < 2000; ++t) {
        const RoundingOutcome outcome = run_threshold_baseline(pi, derive_stream(13, t));
        CHECK(outcome.selected == std::vector<int>{1});
    }
}

TEST_CASE("unpenalized clocks inflate the growth family, penalized ones do not") {
    double previous_ratio = 0.0;
    for (int s : {4, 16, 64}) {
        const PseudoInstance pi = adversarial_growth_family(s);
        const double x_v = pi.solution.values[pi.arrival.back()];
        const double ratio = exact_subset_arrival_probability(pi, 1.0) / x_v;
        CHECK(ratio >= previous_ratio - 1e-9);
        previous_ratio = ratio;

        const double alpha = default_alpha(s);
        const double penalized_ratio =
            exact_subset_arrival_probability(pi, alpha) / x_v;
        CHECK(penalized_ratio <= (7.0 * alpha / 3.0) * harmonic(s) + 1e-9);
    }
}

TEST_CASE("decision records expose the marking trace") {
    SubsetArrivalSession session(2, 2, std::nullopt, derive_stream(14, 0));
    const std::vector<int> first = {0};
    const std::vector<int> both = {0, 1};
    session.feed_subset(first, 0.3);
    session.feed_subset(both, 1.0);
    REQUIRE(session.decisions().size() == 2);
    const auto& second = session.decisions()[1];
    CHECK(second.selected);
    CHECK(second.deterministic);
    CHECK(second.arrival_index == 1);
    CHECK((second.marked_by == 0 || second.marked_by == 1));
}
