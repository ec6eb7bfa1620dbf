// Randomised invariant checks against the slow definitions in support/naive.hpp.

#include <doctest.h>

#include <set>

#include "cutspan/oracle.hpp"
#include "cutspan/realization.hpp"
#include "support/naive.hpp"

using namespace cutspan;

namespace {

struct Instance {
    std::string name;
    Metric d;
};

// Alternating block-graph and uniformly random metrics, 2..max_n points.
std::vector<Instance> instances(int per_size, int max_n, std::uint64_t salt) {
    std::vector<Instance> out;
    for (int n = 2; n <= max_n; ++n) {
        for (int i = 0; i < per_size; ++i) {
            const std::uint64_t seed = salt * 1000003 + static_cast<std::uint64_t>(n * 7919 + i);
            if (i % 2) out.push_back({"block n=" + std::to_string(n) + " seed=" + std::to_string(seed),
                                      generate_block_instance(n, seed)});
            else out.push_back({"random n=" + std::to_string(n) + " seed=" + std::to_string(seed), random_metric(n, seed)});
        }
    }
    return out;
}

std::vector<std::uint8_t> mask_of(const Split& s) { return s.mask(); }

std::vector<Split> all_splits(int n) {
    std::vector<Split> out;
    for (std::uint32_t bits = 0; bits + 1 < (1u << (n - 1)); ++bits) {
        std::vector<std::uint8_t> m(n, 1);
        for (int i = 1; i < n; ++i) m[i] = (bits >> (i - 1)) & 1;
        out.push_back(Split::from_mask(m));
    }
    return out;
}

}  // namespace

TEST_CASE("point-map predicates") {
    Rng rng(17);
    for (const auto& [name, d] : instances(16, 7, 1)) {
        CAPTURE(name);
        const int n = d.size();
        for (int x = 0; x < n; ++x) {
            const auto k = kuratowski_map(d, x);
            CHECK(is_in_tight_span(d, k));
            CHECK(static_cast<int>(support(k).size()) == n - 1);
        }
        // Cutpoints, a few nudged copies and raw random maps.
        std::vector<PointMap> probes;
        for (const auto& c : compute_cut_points(d).cutpoints) {
            probes.push_back(c.map);
            PointMap nudged = c.map;
            nudged[rng.uniform(0, n - 1)] += Rational(rng.uniform(-2, 2), 2);
            probes.push_back(nudged);
        }
        for (int i = 0; i < 5; ++i) {
            std::vector<Rational> v;
            for (int x = 0; x < n; ++x) v.emplace_back(rng.uniform(0, 30), 2);
            probes.emplace_back(std::move(v));
        }
        for (const auto& f : probes) {
            CAPTURE(f.str());
            const bool in_t = is_in_tight_span(d, f);
            CHECK(in_t == naive::in_tight_span(d, f.values()));
            CHECK(is_in_polytope(d, f) == naive::in_polytope(d, f.values()));
            if (in_t) {
                CHECK(is_in_polytope(d, f));
                for (int x = 0; x < n; ++x) CHECK(f[x].sign() >= 0);
            }
            if (is_in_polytope(d, f)) {
                std::vector<int> ys;
                for (int x = 0; x < n; ++x)
                    if (rng.chance(1, 2)) ys.push_back(x);
                if (!ys.empty()) CHECK(virtual_distance(d, f, ys).sign() >= 0);
            }
            const auto g = gamma_graph(d, f);
            const auto label = naive::components(d, f.values());
            CHECK(static_cast<int>(g.components.size()) == naive::component_count(label));
            for (std::size_t c = 0; c < g.components.size(); ++c) {
                const auto& comp = g.components[c];
                for (int x : comp) CHECK(label[x] == label[comp[0]]);
                bool clique = true;
                for (int x : comp)
                    for (int y : comp)
                        if (x < y && !naive::edge(d, f.values(), x, y)) clique = false;
                CHECK(g.clique_flags[c] == clique);
            }
            const auto cls = classify_cutstar(d, f);
            CHECK((cls == CutClass::InteriorCutpoint) == naive::interior_cutpoint(d, f.values()));
            if (cls == CutClass::InteriorCutpoint) {
                CHECK(g.components.size() >= 2);
                CHECK((support(f).size() < static_cast<std::size_t>(n) || !g.two_cliques()));
            }
        }
    }
}

TEST_CASE("splits and isolation indices") {
    Rng rng(23);
    for (const auto& [name, d] : instances(12, 7, 2)) {
        CAPTURE(name);
        const int n = d.size();
        std::set<std::vector<std::uint8_t>> found;
        for (const Split& s : all_splits(n)) {
            CAPTURE(s.str(d));
            const Rational alpha = isolation_index(d, s);
            CHECK(alpha == naive::isolation_index(d, mask_of(s)));
            // No sign check: the formula can go below zero (4-cycle unit test).
            const auto r = is_block_split(d, s);
            if (n <= 6) CHECK(r.has_value() == naive::block_split_by_definition(d, mask_of(s)));
            if (!r) continue;
            found.insert(mask_of(s));
            CHECK(r->alpha == alpha);
            for (int a : s.side_a())
                for (int b : s.side_b())
                    CHECK(virtual_distance(d, kuratowski_map(d, a), s.side_b()) +
                              virtual_distance(d, kuratowski_map(d, b), s.side_a()) - d(a, b) ==
                          alpha);
            // random point of the segment
            const Rational ga = alpha * Rational(rng.uniform(0, 8), 8);
            const PointMap f = split_map(d, *r, ga, alpha - ga);
            CHECK(is_in_polytope(d, f));
            for (int a : s.side_a())
                for (int b : s.side_b()) {
                    CHECK(f[a] + f[b] == d(a, b));
                    CHECK_FALSE(naive::edge(d, f.values(), a, b));
                }
            auto [fa, fb] = endpoint_maps(d, *r);
            CHECK(fa == split_map(d, *r, alpha, 0));
            CHECK(fb == split_map(d, *r, 0, alpha));
            CHECK(sup_distance(fa, fb) == alpha);
            for (const auto& e : {fa, fb}) {
                const auto cls = classify_cutstar(d, e);
                CHECK((cls == CutClass::InteriorCutpoint || cls == CutClass::Kuratowski));
            }
        }
        CHECK(found.size() <= static_cast<std::size_t>(std::max(2 * n - 3, 0)));
        const auto by_definition = naive::block_splits(d);
        CHECK(std::vector<std::vector<std::uint8_t>>(found.begin(), found.end()) == by_definition);
    }
}

TEST_CASE("engine against definitions") {
    for (const auto& [name, d] : instances(20, 8, 3)) {
        CAPTURE(name);
        const int n = d.size();
        const CutSystem cs = compute_cut_points(d, {true});
        std::set<PointMap> maps;
        for (const auto& c : cs.cutpoints) {
            CAPTURE(c.map.str());
            maps.insert(c.map);
            if (c.kuratowski_of < 0) CHECK(naive::interior_cutpoint(d, c.map.values()));
        }
        CHECK(maps.size() == cs.cutpoints.size());
        CHECK(static_cast<int>(maps.size()) <= std::max(4 * n - 5, 1));
        for (int x = 0; x < n; ++x) CHECK(maps.contains(kuratowski_map(d, x)));

        std::vector<std::vector<std::uint8_t>> masks;
        for (const auto& r : cs.block_splits) {
            masks.push_back(r.split.mask());
            auto [fa, fb] = endpoint_maps(d, r);
            CHECK(maps.contains(fa));
            CHECK(maps.contains(fb));
        }
        std::sort(masks.begin(), masks.end());
        CHECK(masks == naive::block_splits(d));
        for (std::size_t i = 0; i < cs.block_splits.size(); ++i)
            for (std::size_t j = i + 1; j < cs.block_splits.size(); ++j)
                CHECK(are_compatible(cs.block_splits[i].split, cs.block_splits[j].split));
        CHECK(compare_cut_systems(cs, reference_cut_points(d)).empty());
    }
}

TEST_CASE("realizations against shortest paths") {
    for (const auto& [name, d] : instances(12, 8, 4)) {
        CAPTURE(name);
        const int n = d.size();
        const auto dec = decompose(d);
        const auto& g = dec.graph;
        std::vector<naive::WeightedEdge> edges;
        for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.weight});
        const auto dist = naive::shortest_paths(g.vertex_count(), edges);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                REQUIRE(dist[x][y].has_value());
                CHECK(*dist[x][y] == d(x, y));
                Rational total;
                for (const auto& t : dec.metrics) {
                    CHECK(t[x][y] == t[y][x]);
                    CHECK(t[x][y].sign() >= 0);
                    total += t[x][y];
                }
                CHECK(total == d(x, y));
            }
        // each block is a clique of geodesic edges
        for (const auto& b : dec.blocks)
            for (int u : b)
                for (int v : b)
                    if (u < v) {
                        const int e = g.find_edge(u, v);
                        REQUIRE(e >= 0);
                        CHECK(g.edges[e].weight == *dist[u][v]);
                    }
        // removing a vertex disconnects the graph iff it is an interior cutpoint
        for (int w = 0; w < g.vertex_count(); ++w) {
            std::vector<naive::WeightedEdge> rest;
            for (const auto& e : edges)
                if (e.u != w && e.v != w) rest.push_back(e);
            const auto without = naive::shortest_paths(g.vertex_count(), rest);
            const int start = w == 0 ? 1 : 0;
            bool split = false;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (v != w && !without[start][v]) split = true;
            CHECK(split == g.is_cutpoint[w]);
            if (g.point_of[w] < 0) {
                int degree = 0;
                for (const auto& e : edges) degree += e.u == w || e.v == w;
                CHECK(degree >= 3);
                CHECK(split);
            }
        }
        if (n >= 2) CHECK(static_cast<int>(dec.blocks.size()) <= 3 * n - 5 + (n == 2 ? 1 : 0));
    }
}

TEST_CASE("equivariance under reordering") {
    for (const auto& [name, d] : instances(4, 9, 5)) {
        CAPTURE(name);
        const auto report = permutation_harness(d, 3, d.size());
        CHECK(report.overall);
        if (const auto* f = report.failure()) MESSAGE(f->witness);
    }
}

TEST_CASE("larger instances in verification mode") {
    for (int n : {20, 35}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            CAPTURE(n);
            CAPTURE(seed);
            const Metric d = seed % 2 ? generate_block_instance(n, seed) : random_metric(n, seed);
            const auto cs = compute_cut_points(d, {true});
            const auto report = verify_cut_system(d, cs, {8, true});
            CHECK(report.overall);
            if (const auto* f = report.failure()) MESSAGE(f->name << ": " << f->witness);
        }
    }
}
