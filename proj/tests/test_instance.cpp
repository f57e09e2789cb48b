#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "cover/errors.hpp"
#include "cover/generators.hpp"
#include "cover/instance.hpp"

using namespace cover;

namespace {

SetSystem triangle() {
    return build_set_system(3, {{{0, 1}, 1.0}, {{1, 2}, 1.0}, {{0, 2}, 1.0}});
}

// The 5-element / 5-subset running example.
SetSystem figure_system() {
    return build_set_system(5, {{{0, 1}, 1.0},
                                {{1, 2}, 1.0},
                                {{1, 2, 3}, 1.0},
                                {{2, 3, 4}, 1.0},
                                {{0, 4}, 1.0}});
}

FractionalSolution figure_solution() {
    return FractionalSolution{{0.2, 0.3, 0.5, 0.5, 0.8}};
}

}  // namespace

TEST_CASE("triangle system builds and has s = 2") {
    const SetSystem system = triangle();
    CHECK(system.num_elements == 3);
    CHECK(system.num_subsets() == 3);
    CHECK(max_subset_size(system) == 2);
    CHECK(system.element_subsets[1] == std::vector<int>{0, 1});
}

TEST_CASE("the five-subset example validates as feasible with s = 3") {
    const SetSystem system = figure_system();
    const CoverageReport report = validate_fractional_cover(system, figure_solution());
    CHECK(report.feasible);
    CHECK(report.totals[0] == doctest::Approx(1.0));
    CHECK(report.totals[2] == doctest::Approx(1.3));
    CHECK(max_subset_size(system) == 3);
}

TEST_CASE("malformed systems are rejected") {
    CHECK_THROWS_AS(build_set_system(3, {{{0, 7}, 1.0}}), MalformedInstanceError);
    CHECK_THROWS_AS(build_set_system(3, {{{0, 0}, 1.0}}), MalformedInstanceError);
    CHECK_THROWS_AS(build_set_system(3, {{{0}, -1.0}}), MalformedInstanceError);
    CHECK_THROWS_AS(build_set_system(3, {{{0}, std::numeric_limits<double>::infinity()}}),
                    MalformedInstanceError);
    CHECK_THROWS_AS(build_set_system(-1, {}), MalformedInstanceError);
}

TEST_CASE("empty-neighbor subsets only warn") {
    const SetSystem system = build_set_system(2, {{{0, 1}, 1.0}, {{}, 1.0}});
    const auto warnings = validation_warnings(system);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("subset 1") != std::string::npos);
    CHECK(validation_warnings(triangle()).empty());
}

TEST_CASE("coverage report flags shortfalls per element") {
    const SetSystem system = triangle();
    const CoverageReport full =
        validate_fractional_cover(system, FractionalSolution{{0.5, 0.5, 0.5}});
    CHECK(full.feasible);
    for (double total : full.totals) {
        CHECK(total == doctest::Approx(1.0));
    }
    const CoverageReport partial =
        validate_fractional_cover(system, FractionalSolution{{0.5, 0.5, 0.0}});
    CHECK(!partial.feasible);
    CHECK(partial.totals[2] == doctest::Approx(0.5));
    CHECK_THROWS_AS(validate_fractional_cover(system, FractionalSolution{{0.5}}),
                    MalformedInstanceError);
}

TEST_CASE("validate is monotone in every x entry") {
    const SetSystem system = figure_system();
    FractionalSolution solution = figure_solution();
    REQUIRE(validate_fractional_cover(system, solution).feasible);
    for (std::size_t v = 0; v < solution.values.size(); ++v) {
        FractionalSolution bumped = solution;
        bumped.values[v] += 0.7;
        CHECK(validate_fractional_cover(system, bumped).feasible);
    }
}

TEST_CASE("max_subset_size edge cases") {
    CHECK(max_subset_size(build_set_system(3, {{{0}, 1.0}, {{1}, 1.0}, {{2}, 1.0}})) == 1);
    SetSystem empty;
    empty.num_elements = 3;
    CHECK_THROWS_AS(max_subset_size(empty), MalformedInstanceError);
}

TEST_CASE("restrict keeps what it is told and nothing else") {
    const SetSystem system = figure_system();
    const FractionalSolution solution = figure_solution();

    const auto [all_sys, all_sol] = restrict_system(system, solution, {0, 1, 2, 3, 4});
    CHECK(all_sys.num_subsets() == 5);
    CHECK(all_sol.values == solution.values);

    // Subsets sharing an element with subset 2: everything except {0,4}.
    const auto [sub_sys, sub_sol] = restrict_system(system, solution, {0, 1, 2, 3});
    CHECK(sub_sys.num_elements == 5);
    CHECK(sub_sys.num_subsets() == 4);
    CHECK(sub_sol.values == std::vector<double>{0.2, 0.3, 0.5, 0.5});
    CHECK(sub_sys.subsets[2].neighbors == std::vector<int>{1, 2, 3});

    const auto [none_sys, none_sol] = restrict_system(system, solution, {});
    CHECK(none_sys.num_subsets() == 0);
    CHECK(none_sol.values.empty());

    CHECK_THROWS_AS(restrict_system(system, solution, {5}), MalformedInstanceError);
}

TEST_CASE("nested restriction equals restricting once") {
    const SetSystem system = figure_system();
    const FractionalSolution solution = figure_solution();
    const auto [outer_sys, outer_sol] = restrict_system(system, solution, {0, 2, 3, 4});
    // {2, 4} sit at positions {1, 3} of the outer restriction.
    const auto [twice_sys, twice_sol] = restrict_system(outer_sys, outer_sol, {1, 3});
    const auto [once_sys, once_sol] = restrict_system(system, solution, {2, 4});
    REQUIRE(twice_sys.num_subsets() == once_sys.num_subsets());
    for (int v = 0; v < once_sys.num_subsets(); ++v) {
        CHECK(twice_sys.subsets[v].neighbors == once_sys.subsets[v].neighbors);
        CHECK(twice_sys.subsets[v].cost == once_sys.subsets[v].cost);
        CHECK(twice_sol.values[v] == once_sol.values[v]);
    }
}

TEST_CASE("instance files round-trip") {
    const PseudoInstance pi = make_pseudo_instance(figure_system(), figure_solution());
    const std::string text = serialize_instance(pi);
    CHECK(serialize_instance(parse_instance(text)) == text);

    const PseudoInstance again = parse_instance(text);
    CHECK(again.system.num_elements == 5);
    CHECK(again.solution.values == pi.solution.values);
    CHECK(again.arrival == pi.arrival);
}

TEST_CASE("random instances round-trip exactly") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const PseudoInstance pi = random_feasible_instance(9, 7, 4, 0.5, 2.0, seed);
        const PseudoInstance back = parse_instance(serialize_instance(pi));
        CHECK(back.solution.values == pi.solution.values);
        CHECK(back.arrival == pi.arrival);
        REQUIRE(back.system.num_subsets() == pi.system.num_subsets());
        for (int v = 0; v < pi.system.num_subsets(); ++v) {
            CHECK(back.system.subsets[v].neighbors == pi.system.subsets[v].neighbors);
            CHECK(back.system.subsets[v].cost == pi.system.subsets[v].cost);
        }
    }
}

TEST_CASE("the split-singleton example file parses") {
    // Three live elements; x = (0.2, 0.3, 0.3, 0.5); singletons except the
    // last subset, which spans everything and arrives last.
    const std::string text = R"({
        "n": 3,
        "subsets": [
            {"neighbors": [0], "cost": 1, "x": 0.2},
            {"neighbors": [1], "cost": 1, "x": 0.3},
            {"neighbors": [0], "cost": 1, "x": 0.3},
            {"neighbors": [0, 1, 2], "cost": 1, "x": 0.5}
        ]
    })";
    const PseudoInstance pi = parse_instance(text);
    CHECK(pi.system.num_elements == 3);
    CHECK(pi.solution.values == std::vector<double>{0.2, 0.3, 0.3, 0.5});
    CHECK(pi.arrival == std::vector<int>{0, 1, 2, 3});  // default order
    CHECK(!validate_fractional_cover(pi.system, pi.solution).feasible);
}

TEST_CASE("parse errors carry a line number") {
    try {
        parse_instance("{\n  \"n\": 3,\n  \"subsets\": [oops]\n}");
        FAIL("expected a malformed-instance error");
    } catch (const MalformedInstanceError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_instance("{\"n\": 2, \"subsets\": [{\"neighbors\": [5], "
                                   "\"cost\": 1, \"x\": 0}]}"),
                    MalformedInstanceError);
    CHECK_THROWS_AS(
        parse_instance(
            "{\"n\": 2, \"subsets\": [{\"neighbors\": [0], \"cost\": 1, \"x\": 0}], "
            "\"arrival\": [0, 0]}"),
        MalformedInstanceError);
}

TEST_CASE("outcomes account costs and coverage") {
    const SetSystem system = triangle();
    const RoundingOutcome outcome = make_outcome(system, {2, 0, 2});
    CHECK(outcome.selected == std::vector<int>{0, 2});
    CHECK(outcome.total_cost == doctest::Approx(2.0));
    CHECK(outcome.covered == std::vector<bool>{true, true, true});
}
