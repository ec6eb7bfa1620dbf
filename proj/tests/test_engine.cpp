#include <doctest.h>

#include <set>

#include "cutspan/engine.hpp"
#include "cutspan/oracle.hpp"
#include "support/fixtures.hpp"

using namespace cutspan;
using fixtures::five_point;
using fixtures::map;

namespace {

std::set<std::string> split_strings(const Metric& d, const std::vector<BlockSplitRecord>& records) {
    std::set<std::string> out;
    for (const auto& r : records) out.insert(r.split.str(d));
    return out;
}

std::set<PointMap> maps_of(const CutSystem& cs) {
    std::set<PointMap> out;
    for (const auto& c : cs.cutpoints) out.insert(c.map);
    return out;
}

std::set<PointMap> kuratowski_set(const Metric& d) {
    std::set<PointMap> out;
    for (int x = 0; x < d.size(); ++x) out.insert(kuratowski_map(d, x));
    return out;
}

}  // namespace

TEST_CASE("five-point example") {
    const Metric d = five_point();
    const CutSystem cs = compute_cut_points(d, {true});
    CHECK(split_strings(d, cs.block_splits) ==
          std::set<std::string>{"{a}|{b,c,d,e}", "{a,c,d,e}|{b}", "{a,b,c,e}|{d}", "{a,b}|{c,d,e}"});
    auto expected = kuratowski_set(d);
    expected.insert({map({2, 1, 4, 7, 3}), map({3, 2, 3, 6, 2}), map({8, 7, 2, 1, 3})});
    CHECK(maps_of(cs) == expected);
    CHECK(cs.cutpoints.size() == 8);
    for (const auto& c : cs.cutpoints) {
        if (c.kuratowski_of >= 0) {
            CHECK(c.classification == CutClass::Kuratowski);
        } else {
            CHECK(c.classification == CutClass::InteriorCutpoint);
        }
    }
    const int i = cs.find(map({8, 7, 2, 1, 3}));
    REQUIRE(i >= 0);
    CHECK(cs.cutpoints[i].components == std::vector<std::vector<int>>{{0, 1, 2, 4}, {3}});
    CHECK(cs.cutpoints[i].clique_flags == std::vector<bool>{false, true});
    for (const auto& r : cs.block_splits) {
        if (r.split.str(d) == "{a,b}|{c,d,e}") CHECK(r.alpha == 1);
    }
}

TEST_CASE("five-point example without c") {
    const Metric d = fixtures::five_point_without_c();
    const CutSystem cs = compute_cut_points(d, {true});
    CHECK(split_strings(d, cs.block_splits) ==
          std::set<std::string>{"{a}|{b,d,e}", "{a,d,e}|{b}", "{a,b,e}|{d}", "{a,b}|{d,e}"});
    auto expected = kuratowski_set(d);
    expected.insert(map({2, 1, 7, 3}));
    CHECK(maps_of(cs) == expected);
}

TEST_CASE("4-cycle has no block splits") {
    const Metric d = fixtures::cycle4();
    const CutSystem cs = compute_cut_points(d, {true});
    CHECK(cs.block_splits.empty());
    CHECK(maps_of(cs) == kuratowski_set(d));
}

TEST_CASE("tiny metrics") {
    const Metric one = fixtures::from_ints({"solo"}, {{0}});
    const CutSystem cs1 = compute_cut_points(one);
    REQUIRE(cs1.cutpoints.size() == 1);
    CHECK(cs1.cutpoints[0].map == map({0}));
    CHECK(cs1.block_splits.empty());

    const Metric two = fixtures::two_point(fixtures::q("3/2"));
    const CutSystem cs2 = compute_cut_points(two);
    REQUIRE(cs2.block_splits.size() == 1);
    CHECK(cs2.block_splits[0].alpha == fixtures::q("3/2"));
    CHECK(maps_of(cs2) == kuratowski_set(two));

    const CutSystem star = compute_cut_points(fixtures::star3(), {true});
    CHECK(star.block_splits.size() == 3);
    CHECK(star.cutpoints.size() == 4);
    CHECK(star.find(map({1, 1, 1})) >= 0);
}

TEST_CASE("extend_splits adds the last point") {
    const Metric d = fixtures::five_point_c_last();
    const CutSystem prior = compute_cut_points(d.prefix(4));
    const auto grown = extend_splits(d, prior.block_splits);
    CHECK(split_strings(d, grown) ==
          std::set<std::string>{"{a}|{b,d,e,c}", "{a,d,e,c}|{b}", "{a,b,e,c}|{d}", "{a,b}|{d,e,c}"});
    // the reference point of {a,b}|{d,e} is inherited, not recomputed
    for (const auto& r : grown) {
        if (r.split.str(d) == "{a,b}|{d,e,c}") {
            CHECK(r.a_s == 0);
            CHECK(r.b_s == 2);
            CHECK(r.alpha == 1);
        }
    }
    // no prior splits: only the singleton split can appear
    const Metric two = fixtures::two_point(5);
    const auto base = extend_splits(two, std::vector<BlockSplitRecord>{});
    REQUIRE(base.size() == 1);
    CHECK(base[0].alpha == 5);
    CHECK(extend_splits(fixtures::cycle4(), std::vector<BlockSplitRecord>{}).empty());
    CHECK_THROWS_AS(extend_splits(d, compute_cut_points(d.prefix(3)).block_splits), std::invalid_argument);
}

TEST_CASE("extend_cutpoint") {
    const Metric d = fixtures::five_point_c_last();  // a, b, d, e, c
    CHECK(extend_cutpoint(d, map({2, 1, 7, 3})) == map({2, 1, 7, 3, 4}));
    CHECK(extend_cutpoint(d, map({0, 3, 9, 5})) == kuratowski_map(d, 0));
    const Metric two = fixtures::two_point(4);
    const PointMap f = extend_cutpoint(two, map({0}));
    CHECK(f == map({0, 4}));
    CHECK(gamma_graph(two, f).components.size() == 1);
    CHECK_THROWS_AS(extend_cutpoint(two, map({0, 4})), std::invalid_argument);
}

TEST_CASE("incremental components") {
    const Metric d = fixtures::five_point_c_last();
    const PointMap prior = map({2, 1, 7, 3});
    const auto before = ComponentIndex::from_graph(gamma_graph(d, prior), 4);
    CHECK(before.count() == 3);
    const PointMap f = extend_cutpoint(d, prior);
    const auto after = incremental_components(d, 4, before, f);
    CHECK(after.count() == 3);
    CHECK(after.same_structure(ComponentIndex::from_graph(gamma_graph(d, f), 5)));
    auto [members, cliques] = after.listed();
    CHECK(members == std::vector<std::vector<int>>{{0}, {1}, {2, 3, 4}});
    CHECK(cliques == std::vector<bool>{true, true, true});

    // Kuratowski extension: x joins the single component
    const auto kb = ComponentIndex::from_graph(gamma_graph(d, map({0, 3, 9, 5})), 4);
    const auto ka = incremental_components(d, 4, kb, kuratowski_map(d, 0));
    CHECK(ka.same_structure(ComponentIndex::from_graph(gamma_graph(d, kuratowski_map(d, 0)), 5)));
    CHECK(ka.count() == 1);

    // endpoint f_B of {a,b}|{c,d,e}: the old sides were two cliques
    const Metric full = five_point();
    const PointMap fb = map({3, 2, 3, 6, 2});
    const auto direct = ComponentIndex::from_graph(gamma_graph(full, fb), 5);
    auto [m2, c2] = direct.listed();
    CHECK(m2 == std::vector<std::vector<int>>{{0, 1}, {2, 3, 4}});
    CHECK(c2 == std::vector<bool>{true, false});

    CHECK_THROWS_AS(incremental_components(d, 3, before, f), std::invalid_argument);
}

TEST_CASE("dedup dictionary") {
    CutpointDictionary dic;
    CHECK(dedup_insert(dic, map({2, 1, 4, 7, 3})));
    CHECK_FALSE(dedup_insert(dic, map({2, 1, 4, 7, 3})));
    CHECK(dedup_insert(dic, map({"2", "1", "4", "7", "301/100"})));
    const Metric d = five_point();
    CHECK(dedup_insert(dic, kuratowski_map(d, "d")));
    auto [ga, gb] = endpoint_maps(d, *is_block_split(d, Split::from_side(5, std::vector<int>{3})));
    CHECK_FALSE(dedup_insert(dic, gb));
    CHECK(dic.size() == 3);
    CHECK(dic.find(map({2, 1, 4, 7, 3})) == 0);
    CHECK(dic.find(map({2, 1, 4, 7})) == -1);
}

TEST_CASE("verification mode on random instances") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const int n = 2 + static_cast<int>(seed % 9);
        const Metric d = seed % 2 ? generate_block_instance(n, seed) : random_metric(n, seed);
        CHECK_NOTHROW(compute_cut_points(d, {true}));
    }
}
