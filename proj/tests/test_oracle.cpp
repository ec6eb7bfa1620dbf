#include <doctest.h>

#include <numeric>
#include <set>

#include "cutspan/oracle.hpp"
#include "cutspan/realization.hpp"
#include "support/fixtures.hpp"

using namespace cutspan;
using fixtures::five_point;
using fixtures::map;

TEST_CASE("exhaustive block splits") {
    const Metric d = five_point();
    const auto splits = brute_force_block_splits(d);
    std::set<std::string> names;
    for (const auto& r : splits) names.insert(r.split.str(d));
    CHECK(names == std::set<std::string>{"{a}|{b,c,d,e}", "{a,c,d,e}|{b}", "{a,b,c,e}|{d}", "{a,b}|{c,d,e}"});
    CHECK(brute_force_block_splits(fixtures::cycle4()).empty());
    const auto two = brute_force_block_splits(fixtures::two_point(2));
    REQUIRE(two.size() == 1);
    CHECK(two[0].alpha == 2);
    CHECK(brute_force_block_splits(fixtures::from_ints({"p"}, {{0}})).empty());
    CHECK_THROWS_AS(brute_force_block_splits(d, 4), CapExceeded);
}

TEST_CASE("reference construction") {
    const Metric d = five_point();
    CHECK(compare_cut_systems(reference_cut_points(d), compute_cut_points(d)).empty());
    const auto one = reference_cut_points(fixtures::from_ints({"p"}, {{0}}));
    REQUIRE(one.cutpoints.size() == 1);
    CHECK(one.block_splits.empty());
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Metric r = random_metric(6, seed);
        CHECK(compare_cut_systems(reference_cut_points(r), compute_cut_points(r)).empty());
    }
    CHECK_THROWS_AS(reference_cut_points(d, 3), CapExceeded);
}

TEST_CASE("cut system comparison reports differences") {
    const Metric d = five_point();
    const auto cs = compute_cut_points(d);
    auto fewer = cs;
    fewer.cutpoints.pop_back();
    CHECK_FALSE(compare_cut_systems(cs, fewer).empty());
    auto other_alpha = cs;
    other_alpha.block_splits[0].alpha += 1;
    CHECK(compare_cut_systems(cs, other_alpha).find("isolation index") != std::string::npos);
}

TEST_CASE("verification report") {
    const Metric d = five_point();
    const auto cs = compute_cut_points(d);
    const auto ok = verify_cut_system(d, cs);
    CHECK(ok.overall);
    CHECK(ok.failure() == nullptr);
    CHECK(ok.skipped.empty());

    auto perturbed = cs;
    perturbed.cutpoints[static_cast<std::size_t>(cs.find(map({2, 1, 4, 7, 3})))].map = map({2, 1, 4, 7, 4});
    const auto bad = verify_cut_system(d, perturbed);
    CHECK_FALSE(bad.overall);
    REQUIRE(bad.failure() != nullptr);
    CHECK(bad.failure()->name == "tight_span_membership");
    CHECK(bad.failure()->witness.find("coordinate e") != std::string::npos);

    auto missing = cs;
    std::erase_if(missing.block_splits, [&](const BlockSplitRecord& r) { return r.split.str(d) == "{a,b}|{c,d,e}"; });
    const auto incomplete = verify_cut_system(d, missing);
    CHECK_FALSE(incomplete.overall);
    bool flagged = false;
    for (const auto& c : incomplete.checks)
        if (c.name == "splits_match_exhaustive_search" && !c.passed) flagged = true;
    CHECK(flagged);

    const auto capped = verify_cut_system(d, cs, {3, false});
    CHECK(capped.overall);
    CHECK(capped.skipped.size() == 1);
}

TEST_CASE("generators") {
    const Metric a = generate_block_instance(5, 42);
    const Metric b = generate_block_instance(5, 42);
    CHECK(a == b);
    CHECK(a.size() == 5);
    CHECK_FALSE(a == generate_block_instance(5, 43));
    CHECK(generate_block_instance(2, 9).size() == 2);
    CHECK_THROWS_AS(generate_block_instance(1, 9), std::invalid_argument);
    CHECK(random_metric(7, 3) == random_metric(7, 3));

    // every generated instance with at least two blocks has a bridge
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Metric g = generate_block_instance(3 + static_cast<int>(seed % 8), seed);
        const auto dec = decompose(g);
        CHECK(std::accumulate(dec.metrics.begin(), dec.metrics.end(), Rational(0),
                              [](Rational s, const auto& t) { return s + t[0][1]; }) == g(0, 1));
        if (dec.blocks.size() >= 2) CHECK(std::find(dec.bridge.begin(), dec.bridge.end(), true) != dec.bridge.end());
    }

    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const int v = rng.uniform(-2, 3);
        CHECK((v >= -2 && v <= 3));
    }
}

TEST_CASE("permutation harness") {
    const auto fig = permutation_harness(five_point(), 20, 11);
    CHECK(fig.overall);
    CHECK(fig.checks.size() == 20);
    CHECK(permutation_harness(generate_block_instance(10, 3), 10, 4).overall);
    const Metric d = five_point();
    CHECK(reorder(d, {0, 1, 2, 3, 4}) == d);
    CHECK_THROWS_AS(reorder(d, {0, 1, 1, 3, 4}), std::invalid_argument);
}
