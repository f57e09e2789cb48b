#include "cover/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cover/clocks.hpp"
#include "cover/errors.hpp"

namespace cover {

namespace {

int uniform_int(RandomStream& stream, int lo, int hi) {   // inclusive bounds
    return lo + static_cast<int>(stream.uniform01() * (hi - lo + 1));
}

double uniform_range(RandomStream& stream, double lo, double hi) {
    return lo + (hi - lo) * stream.uniform01();
}

template <typename T>
void shuffle_vector(std::vector<T>& items, RandomStream& stream) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[uniform_int(stream, 0, static_cast<int>(i) - 1)]);
    }
}

}  // namespace

PseudoInstance random_feasible_instance(int n, int m, int s, double cost_min,
                                        double cost_max, std::uint64_t seed) {
    if (n < 1 || m < 1 || s < 1) {
        throw ParameterError("random_feasible_instance: n, m, s must be >= 1");
    }
    if (!(cost_min >= 0.0) || !(cost_max >= cost_min)) {
        throw ParameterError("random_feasible_instance: bad cost range");
    }
    if (static_cast<long long>(m) * s < n) {
        throw ParameterError("random_feasible_instance: m * s < n cannot cover all elements");
    }
    RandomStream stream = derive_stream(seed, 0x67656eULL);

    // Round-robin seeding guarantees every element appears somewhere.
    std::vector<std::vector<int>> members(m);
    std::vector<std::vector<char>> contains(m, std::vector<char>(n, 0));
    for (int u = 0; u < n; ++u) {
        members[u % m].push_back(u);
        contains[u % m][u] = 1;
    }
    for (int v = 0; v < m; ++v) {
        const int target = uniform_int(stream, 1, s);
        int guard = 0;
        while (static_cast<int>(members[v].size()) < target && guard < 8 * s) {
            const int u = uniform_int(stream, 0, n - 1);
            ++guard;
            if (!contains[v][u]) {
                contains[v][u] = 1;
                members[v].push_back(u);
            }
        }
        std::sort(members[v].begin(), members[v].end());
    }

    std::vector<std::pair<std::vector<int>, double>> raw;
    raw.reserve(m);
    FractionalSolution solution;
    for (int v = 0; v < m; ++v) {
        raw.emplace_back(members[v], uniform_range(stream, cost_min, cost_max));
        solution.values.push_back(uniform_range(stream, 0.05, 0.75));
    }
    SetSystem system = build_set_system(n, std::move(raw));

    // Bump pass: push each deficient element past 1 with some overshoot so
    // feasibility is not an exact-arithmetic accident.
    for (int u = 0; u < n; ++u) {
        double coverage = 0.0;
        for (int v : system.element_subsets[u]) {
            coverage += solution.values[v];
        }
        if (coverage < 1.0) {
            const auto& owners = system.element_subsets[u];
            const int v = owners[uniform_int(stream, 0, static_cast<int>(owners.size()) - 1)];
            solution.values[v] += (1.0 - coverage) * uniform_range(stream, 1.05, 1.25);
        }
    }
    return make_pseudo_instance(std::move(system), std::move(solution));
}

PseudoInstance irreducible_v_complete(int k, double x_v,
                                      std::vector<std::vector<double>> singleton_lists,
                                      std::vector<int> order) {
    if (k < 1) {
        throw ParameterError("irreducible_v_complete: k must be >= 1");
    }
    if (!(x_v >= 0.0) || !std::isfinite(x_v)) {
        throw ParameterError("irreducible_v_complete: x_v must be finite and >= 0");
    }
    if (static_cast<int>(singleton_lists.size()) != k) {
        throw ParameterError("irreducible_v_complete: need one singleton list per element");
    }
    if (order.empty()) {
        for (int u = 0; u < k; ++u) {
            order.insert(order.end(), singleton_lists[u].size(), u);
        }
    }
    std::vector<std::size_t> cursor(k, 0);
    std::vector<std::pair<std::vector<int>, double>> raw;
    FractionalSolution solution;
    for (int u : order) {
        if (u < 0 || u >= k || cursor[u] >= singleton_lists[u].size()) {
            throw ParameterError("irreducible_v_complete: order does not match the lists");
        }
        raw.emplace_back(std::vector<int>{u}, 1.0);
        solution.values.push_back(singleton_lists[u][cursor[u]++]);
    }
    for (int u = 0; u < k; ++u) {
        if (cursor[u] != singleton_lists[u].size()) {
            throw ParameterError("irreducible_v_complete: order does not exhaust the lists");
        }
    }
    std::vector<int> all(k);
    std::iota(all.begin(), all.end(), 0);
    raw.emplace_back(std::move(all), 1.0);
    solution.values.push_back(x_v);
    return make_pseudo_instance(build_set_system(k, std::move(raw)), std::move(solution));
}

PseudoInstance vcomplete_reduction(const PseudoInstance& pi, int v) {
    const SetSystem& system = pi.system;
    if (v < 0 || v >= system.num_subsets()) {
        throw ParameterError("vcomplete_reduction: bad subset index");
    }
    std::vector<int> universe = system.subsets[v].neighbors;
    std::sort(universe.begin(), universe.end());
    std::vector<int> remap(system.num_elements, -1);
    for (std::size_t i = 0; i < universe.size(); ++i) {
        remap[universe[i]] = static_cast<int>(i);
    }

    std::vector<std::pair<std::vector<int>, double>> raw;
    FractionalSolution solution;
    for (int arrived : pi.arrival) {
        std::vector<int> trimmed;
        for (int u : system.subsets[arrived].neighbors) {
            if (remap[u] >= 0) {
                trimmed.push_back(remap[u]);
            }
        }
        std::sort(trimmed.begin(), trimmed.end());
        if (arrived != v && trimmed.empty()) {
            continue;  // shares no element with v
        }
        if (arrived != v) {
            raw.emplace_back(std::move(trimmed), system.subsets[arrived].cost);
            solution.values.push_back(pi.solution.values[arrived]);
        }
        if (arrived == v) {
            raw.emplace_back(std::move(trimmed), system.subsets[v].cost);
            solution.values.push_back(pi.solution.values[v]);
            break;  // later arrivals cannot influence v
        }
    }
    return make_pseudo_instance(
        build_set_system(static_cast<int>(universe.size()), std::move(raw)),
        std::move(solution));
}

std::pair<PseudoInstance, bool> irreducible_reduction_step(const PseudoInstance& pi, int v) {
    const SetSystem& system = pi.system;
    if (v < 0 || v >= system.num_subsets()) {
        throw ParameterError("irreducible_reduction_step: bad subset index");
    }
    if (pi.arrival.back() != v ||
        static_cast<int>(system.subsets[v].neighbors.size()) != system.num_elements) {
        throw MalformedInstanceError(
            "irreducible_reduction_step: input is not v-complete with v last");
    }
    int split_pos = -1;
    for (int pos = static_cast<int>(pi.arrival.size()) - 2; pos >= 0; --pos) {
        if (system.subsets[pi.arrival[pos]].neighbors.size() >= 2) {
            split_pos = pos;
            break;
        }
    }
    if (split_pos < 0) {
        return {pi, false};  // already irreducible
    }

    std::vector<std::pair<std::vector<int>, double>> raw;
    FractionalSolution solution;
    for (std::size_t pos = 0; pos < pi.arrival.size(); ++pos) {
        const int w = pi.arrival[pos];
        std::vector<int> neighbors = system.subsets[w].neighbors;
        if (static_cast<int>(pos) == split_pos) {
            const int detached = *std::min_element(neighbors.begin(), neighbors.end());
            neighbors.erase(std::find(neighbors.begin(), neighbors.end(), detached));
            raw.emplace_back(std::move(neighbors), system.subsets[w].cost);
            solution.values.push_back(pi.solution.values[w]);
            raw.emplace_back(std::vector<int>{detached}, system.subsets[w].cost);
            solution.values.push_back(pi.solution.values[w]);
        } else {
            raw.emplace_back(std::move(neighbors), system.subsets[w].cost);
            solution.values.push_back(pi.solution.values[w]);
        }
    }
    return {make_pseudo_instance(build_set_system(system.num_elements, std::move(raw)),
                                 std::move(solution)),
            true};
}

PseudoInstance adversarial_growth_family(int s, std::uint64_t /*seed*/) {
    if (s < 2) {
        throw ParameterError("adversarial_growth_family: s must be >= 2");
    }
    std::vector<std::vector<double>> lists(s, std::vector<double>(s, 1.0 / (2.0 * s)));
    return irreducible_v_complete(s, 1.0 / s, std::move(lists));
}

PseudoInstance triangle_half_integral() {
    SetSystem system = build_set_system(3, {{{0, 1}, 1.0}, {{1, 2}, 1.0}, {{0, 2}, 1.0}});
    return make_pseudo_instance(std::move(system),
                                FractionalSolution{{0.5, 0.5, 0.5}});
}

PseudoInstance random_irreducible_instance(int k, std::uint64_t seed) {
    if (k < 1) {
        throw ParameterError("random_irreducible_instance: k must be >= 1");
    }
    RandomStream stream = derive_stream(seed, 0x697272ULL);
    std::vector<std::vector<double>> lists(k);
    for (int u = 0; u < k; ++u) {
        const int count = uniform_int(stream, 1, 3);
        double total = 0.0;
        for (int i = 0; i < count; ++i) {
            lists[u].push_back(uniform_range(stream, 0.1, 1.0));
            total += lists[u].back();
        }
        const double target = uniform_range(stream, 0.3, 1.3);
        for (double& x : lists[u]) {
            x *= target / total;
        }
    }
    const double x_v = uniform_range(stream, 0.05, 0.65);
    return irreducible_v_complete(k, x_v, std::move(lists));
}

PseudoInstance random_v_complete_reducible(int k, std::uint64_t seed) {
    if (k < 2) {
        throw ParameterError("random_v_complete_reducible: k must be >= 2");
    }
    RandomStream stream = derive_stream(seed, 0x766370ULL);
    const int others = uniform_int(stream, 2, 2 * k);
    std::vector<std::pair<std::vector<int>, double>> raw;
    FractionalSolution solution;
    bool has_multi = false;
    for (int i = 0; i < others; ++i) {
        const int degree = uniform_int(stream, 1, std::min(3, k));
        std::vector<int> neighbors;
        while (static_cast<int>(neighbors.size()) < degree) {
            const int u = uniform_int(stream, 0, k - 1);
            if (std::find(neighbors.begin(), neighbors.end(), u) == neighbors.end()) {
                neighbors.push_back(u);
            }
        }
        std::sort(neighbors.begin(), neighbors.end());
        has_multi = has_multi || neighbors.size() >= 2;
        raw.emplace_back(std::move(neighbors), 1.0);
        solution.values.push_back(uniform_range(stream, 0.05, 0.8));
    }
    if (!has_multi) {
        std::vector<int> pair = {0, 1};
        raw.emplace_back(std::move(pair), 1.0);
        solution.values.push_back(uniform_range(stream, 0.05, 0.8));
    }
    std::vector<int> all(k);
    std::iota(all.begin(), all.end(), 0);
    raw.emplace_back(std::move(all), 1.0);
    solution.values.push_back(uniform_range(stream, 0.05, 0.65));
    return make_pseudo_instance(build_set_system(k, std::move(raw)), std::move(solution));
}

PseudoInstance random_edge_instance(int vertices, std::uint64_t seed) {
    if (vertices < 3) {
        throw ParameterError("random_edge_instance: need at least 3 vertices");
    }
    RandomStream stream = derive_stream(seed, 0x656467ULL);
    std::vector<std::pair<std::vector<int>, double>> raw;
    FractionalSolution solution;
    // Hamiltonian cycle for baseline coverage, plus random chords.
    for (int u = 0; u < vertices; ++u) {
        std::vector<int> edge = {u, (u + 1) % vertices};
        std::sort(edge.begin(), edge.end());
        raw.emplace_back(std::move(edge), uniform_range(stream, 0.5, 2.0));
        solution.values.push_back(uniform_range(stream, 0.15, 0.6));
    }
    const int chords = uniform_int(stream, 0, vertices);
    for (int i = 0; i < chords; ++i) {
        const int a = uniform_int(stream, 0, vertices - 1);
        const int b = uniform_int(stream, 0, vertices - 1);
        if (a == b) continue;
        std::vector<int> edge = {std::min(a, b), std::max(a, b)};
        raw.emplace_back(std::move(edge), uniform_range(stream, 0.5, 2.0));
        solution.values.push_back(uniform_range(stream, 0.1, 0.5));
    }

    SetSystem system = build_set_system(vertices, std::move(raw));
    for (int u = 0; u < vertices; ++u) {
        double coverage = 0.0;
        for (int e : system.element_subsets[u]) {
            coverage += solution.values[e];
        }
        if (coverage < 1.0) {
            const auto& incident = system.element_subsets[u];
            const int e = incident[uniform_int(stream, 0, static_cast<int>(incident.size()) - 1)];
            solution.values[e] += (1.0 - coverage) * uniform_range(stream, 1.05, 1.25);
        }
    }
    return make_pseudo_instance(std::move(system), std::move(solution));
}

PseudoInstance random_half_integral_vertex_cover(int vertices, std::uint64_t seed) {
    if (vertices < 2) {
        throw ParameterError("random_half_integral_vertex_cover: need >= 2 vertices");
    }
    RandomStream stream = derive_stream(seed, 0x687663ULL);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u + 1 < vertices; ++u) {
        edges.emplace_back(u, u + 1);  // path keeps every vertex incident
    }
    const int extra = uniform_int(stream, vertices / 2, 2 * vertices);
    for (int i = 0; i < extra; ++i) {
        const int a = uniform_int(stream, 0, vertices - 1);
        const int b = uniform_int(stream, 0, vertices - 1);
        if (a == b) continue;
        const auto edge = std::minmax(a, b);
        if (std::find(edges.begin(), edges.end(),
                      std::make_pair(edge.first, edge.second)) == edges.end()) {
            edges.emplace_back(edge.first, edge.second);
        }
    }

    std::vector<char> in_a(vertices, 0);
    for (int u = 0; u < vertices; ++u) {
        in_a[u] = stream.uniform01() < 0.3;
    }
    std::vector<std::vector<int>> incident(vertices);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        incident[edges[e].first].push_back(static_cast<int>(e));
        incident[edges[e].second].push_back(static_cast<int>(e));
    }
    FractionalSolution solution;
    std::vector<std::pair<std::vector<int>, double>> raw;
    for (int u = 0; u < vertices; ++u) {
        raw.emplace_back(incident[u], 1.0);
        if (in_a[u]) {
            solution.values.push_back(1.0);
            continue;
        }
        bool all_neighbors_in_a = true;
        for (int e : incident[u]) {
            const int other = edges[e].first == u ? edges[e].second : edges[e].first;
            all_neighbors_in_a = all_neighbors_in_a && in_a[other];
        }
        solution.values.push_back(all_neighbors_in_a ? 0.0 : 0.5);
    }
    return make_pseudo_instance(
        build_set_system(static_cast<int>(edges.size()), std::move(raw)),
        std::move(solution));
}

AdversaryScript element_arrival_script(const PseudoInstance& pi, ScriptMode mode,
                                       std::uint64_t seed) {
    const SetSystem& system = pi.system;
    if (!validate_fractional_cover(system, pi.solution).feasible) {
        throw InfeasibleInputError("element_arrival_script: needs a feasible solution");
    }
    RandomStream stream = derive_stream(seed, 0x736372ULL);
    std::vector<int> order(system.num_elements);
    std::iota(order.begin(), order.end(), 0);
    shuffle_vector(order, stream);

    std::vector<double> released(system.num_subsets(), 0.0);
    AdversaryScript script;
    for (int u : order) {
        ArrivalStep step;
        step.element = u;
        double covered = 0.0;
        for (int v : system.element_subsets[u]) {
            covered += released[v];
        }
        if (mode == ScriptMode::kFullReveal) {
            for (int v : system.element_subsets[u]) {
                const double remaining = pi.solution.values[v] - released[v];
                if (remaining > 0.0) {
                    step.increments.emplace_back(v, remaining);
                    released[v] += remaining;
                    covered += remaining;
                }
            }
        } else {
            // Random partial releases first, then top up in random order
            // until the arrival contract holds.
            for (int v : system.element_subsets[u]) {
                const double remaining = pi.solution.values[v] - released[v];
                if (remaining > 0.0) {
                    const double delta = remaining * stream.uniform01();
                    if (delta > 0.0) {
                        step.increments.emplace_back(v, delta);
                        released[v] += delta;
                        covered += delta;
                    }
                }
            }
            std::vector<int> owners = system.element_subsets[u];
            shuffle_vector(owners, stream);
            for (int v : owners) {
                if (covered >= 1.0) break;
                const double remaining = pi.solution.values[v] - released[v];
                if (remaining <= 0.0) continue;
                const double delta = std::min(remaining, 1.0 - covered + 1e-9);
                bool merged = false;
                for (auto& [w, existing] : step.increments) {
                    if (w == v) {
                        existing += delta;
                        merged = true;
                        break;
                    }
                }
                if (!merged) {
                    step.increments.emplace_back(v, delta);
                }
                released[v] += delta;
                covered += delta;
            }
        }
        std::sort(step.increments.begin(), step.increments.end());
        script.push_back(std::move(step));
    }
    return script;
}

PseudoInstance make_from_spec(const GeneratorSpec& spec) {
    auto param = [&spec](const std::string& key, double fallback) {
        auto it = spec.params.find(key);
        return it == spec.params.end() ? fallback : it->second;
    };
    if (spec.family == "random-feasible") {
        return random_feasible_instance(static_cast<int>(param("n", 12)),
                                        static_cast<int>(param("m", 10)),
                                        static_cast<int>(param("s", 4)),
                                        param("cost-min", 0.5), param("cost-max", 2.0),
                                        spec.seed);
    }
    if (spec.family == "irreducible") {
        return random_irreducible_instance(static_cast<int>(param("k", 4)), spec.seed);
    }
    if (spec.family == "v-complete-reducible") {
        return random_v_complete_reducible(static_cast<int>(param("k", 4)), spec.seed);
    }
    if (spec.family == "growth") {
        return adversarial_growth_family(static_cast<int>(param("s", 4)), spec.seed);
    }
    if (spec.family == "triangle") {
        return triangle_half_integral();
    }
    if (spec.family == "random-edge") {
        return random_edge_instance(static_cast<int>(param("vertices", 5)), spec.seed);
    }
    if (spec.family == "halfint-vc") {
        return random_half_integral_vertex_cover(static_cast<int>(param("vertices", 8)),
                                                 spec.seed);
    }
    std::string names;
    for (const std::string& name : generator_family_names()) {
        names += (names.empty() ? "" : ", ") + name;
    }
    throw ParameterError("unknown generator family '" + spec.family + "' (expected one of " +
                         names + ")");
}

std::vector<std::string> generator_family_names() {
    return {"random-feasible", "irreducible", "v-complete-reducible", "growth",
            "triangle",        "random-edge", "halfint-vc"};
}

}  // namespace cover
