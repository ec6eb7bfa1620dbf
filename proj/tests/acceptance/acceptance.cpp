// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "cutspan/io.hpp"
#include "support/fixtures.hpp"
#include "support/naive.hpp"

using namespace cutspan;
using fixtures::five_point;
using fixtures::map;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(const std::string& why) {
        if (passed) detail = why;
        passed = false;
    }
};

std::set<std::string> split_names(const Metric& d, const std::vector<BlockSplitRecord>& splits) {
    std::set<std::string> out;
    for (const auto& r : splits) out.insert(r.split.str(d));
    return out;
}

std::set<PointMap> maps_of(const CutSystem& cs) {
    std::set<PointMap> out;
    for (const auto& c : cs.cutpoints) out.insert(c.map);
    return out;
}

PointMap distances_from(const Metric& d, int x) {
    const auto r = d.row(x);
    return PointMap(std::vector<Rational>(r.begin(), r.end()));
}

std::set<PointMap> kuratowski_maps(const Metric& d) {
    std::set<PointMap> out;
    for (int x = 0; x < d.size(); ++x) out.insert(distances_from(d, x));
    return out;
}

const BlockSplitRecord* find_split(const Metric& d, const CutSystem& cs, const std::string& name) {
    for (const auto& r : cs.block_splits)
        if (r.split.str(d) == name) return &r;
    return nullptr;
}

Outcome ac1() {
    Outcome o;
    const Metric d = five_point();
    const auto start = Clock::now();
    const CutSystem cs = compute_cut_points(d);
    const double t = seconds_since(start);
    const std::set<std::string> expected{"{a}|{b,c,d,e}", "{a,c,d,e}|{b}", "{a,b,c,e}|{d}", "{a,b}|{c,d,e}"};
    if (split_names(d, cs.block_splits) != expected) o.fail("split set differs");
    const auto* ab = find_split(d, cs, "{a,b}|{c,d,e}");
    if (!ab || ab->alpha != Rational(1)) o.fail("alpha({a,b}|{c,d,e}) != 1");
    if (t >= 1.0) o.fail("runtime " + std::to_string(t) + " s");
    if (o.passed) o.detail = "4 splits, alpha=1, " + std::to_string(t) + " s";
    return o;
}

Outcome ac2() {
    Outcome o;
    const Metric d = five_point();
    auto expected = kuratowski_maps(d);
    expected.insert(map({2, 1, 4, 7, 3}));
    expected.insert(map({3, 2, 3, 6, 2}));
    expected.insert(map({8, 7, 2, 1, 3}));
    const auto got = maps_of(compute_cut_points(d));
    if (got != expected) o.fail("cutpoint set differs (" + std::to_string(got.size()) + " maps)");
    else o.detail = "8 maps";
    return o;
}

Outcome ac3() {
    Outcome o;
    const Metric d = fixtures::five_point_without_c();
    const CutSystem cs = compute_cut_points(d);
    const std::set<std::string> expected{"{a}|{b,d,e}", "{a,d,e}|{b}", "{a,b,e}|{d}", "{a,b}|{d,e}"};
    if (split_names(d, cs.block_splits) != expected) o.fail("split set differs");
    auto maps = kuratowski_maps(d);
    maps.insert(map({2, 1, 7, 3}));
    if (maps_of(cs) != maps) o.fail("cutpoint set differs");
    if (o.passed) o.detail = "4 splits, 5 maps";
    return o;
}

Outcome ac4() {
    Outcome o;
    const Metric d = five_point();
    const auto dec = decompose(d);
    const int a = d.index_of("a"), dd = d.index_of("d");
    bool found = false;
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        if (dec.blocks[b].size() != 4) continue;
        found = true;
        if (dec.metrics[b][a][dd] != Rational(5)) o.fail("D_B(a,d) = " + dec.metrics[b][a][dd].str());
    }
    if (!found) o.fail("no 4-clique block");
    for (int x = 0; x < d.size(); ++x)
        for (int y = 0; y < d.size(); ++y) {
            Rational sum;
            for (const auto& m : dec.metrics) sum += m[x][y];
            if (sum != d(x, y)) o.fail("block metrics do not sum to D at " + d.label(x) + "," + d.label(y));
        }
    if (dec.cut_vertices.size() != 3) o.fail(std::to_string(dec.cut_vertices.size()) + " cut vertices");
    if (o.passed) o.detail = "D_B(a,d)=5, sum exact, 3 cut vertices";
    return o;
}

struct Instance {
    std::string name;
    Metric d;
};

std::vector<Instance> oracle_instances() {
    std::vector<Instance> out;
    for (int n = 2; n <= 8; ++n)
        for (int i = 0; i < 200; ++i) {
            const std::uint64_t seed = 100000ULL * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i);
            if (i % 2 == 0)
                out.push_back({"block n=" + std::to_string(n) + " seed=" + std::to_string(seed), generate_block_instance(n, seed)});
            else
                out.push_back({"random n=" + std::to_string(n) + " seed=" + std::to_string(seed), random_metric(n, seed)});
        }
    return out;
}

Outcome ac5(const std::vector<Instance>& instances) {
    Outcome o;
    const auto start = Clock::now();
    for (const auto& inst : instances) {
        const CutSystem cs = compute_cut_points(inst.d);
        if (auto bad = compare_cut_systems(cs, reference_cut_points(inst.d)); !bad.empty())
            o.fail(inst.name + ": reference differs: " + bad);
        if (split_names(inst.d, cs.block_splits) != split_names(inst.d, brute_force_block_splits(inst.d)))
            o.fail(inst.name + ": exhaustive split search differs");
    }
    const double t = seconds_since(start);
    if (t >= 300) o.fail("suite took " + std::to_string(t) + " s");
    if (o.passed) o.detail = std::to_string(instances.size()) + " instances, " + std::to_string(t) + " s";
    return o;
}

// Soundness of each map checked with the plain-loop definitions, plus the
// library's full verification (bounds, closure, compatibility, realization
// and path independence of the block metrics).
std::string invariant_failure(const Metric& d) {
    const CutSystem cs = compute_cut_points(d);
    for (const auto& c : cs.cutpoints) {
        const auto& f = c.map.values();
        if (!naive::in_tight_span(d, f)) return "map outside the tight span";
        if (c.kuratowski_of >= 0) {
            if (c.map != distances_from(d, c.kuratowski_of)) return "mislabelled Kuratowski map";
            continue;
        }
        if (naive::component_count(naive::components(d, f)) < 2) return "cutpoint with connected support graph";
        if (!naive::interior_cutpoint(d, f)) return "map excluded by the two-cliques rule";
    }
    const auto report = verify_cut_system(d, cs, {kDefaultOracleCap, true});
    if (!report.overall) return report.failure()->name + ": " + report.failure()->witness;
    if (!report.skipped.empty()) return "skipped: " + report.skipped.front();
    const auto dec = decompose(d, cs, {8});
    const int n = d.size();
    if (n >= 2 && static_cast<int>(dec.blocks.size()) > 3 * n - 5) return "too many blocks";
    return {};
}

Outcome ac6(const std::vector<Instance>& instances) {
    Outcome o;
    if (auto bad = invariant_failure(five_point()); !bad.empty()) o.fail("fixture: " + bad);
    for (const auto& inst : instances) {
        try {
            if (auto bad = invariant_failure(inst.d); !bad.empty()) o.fail(inst.name + ": " + bad);
        } catch (const std::exception& e) {
            o.fail(inst.name + ": " + e.what());
        }
    }
    if (o.passed) o.detail = std::to_string(instances.size() + 1) + " instances, 0 failures";
    return o;
}

Outcome ac7() {
    Outcome o;
    auto run = [&o](const std::string& name, const Metric& d, std::uint64_t seed) {
        const auto report = permutation_harness(d, 20, seed);
        if (!report.overall) o.fail(name + ": " + report.failure()->name + ": " + report.failure()->witness);
    };
    run("fixture", five_point(), 1);
    for (std::uint64_t s = 1; s <= 10; ++s) run("block n=10 seed=" + std::to_string(s), generate_block_instance(10, 7000 + s), s);
    if (o.passed) o.detail = "11 instances x 20 reorderings";
    return o;
}

Outcome ac8() {
    Outcome o;
    const char* argv[] = {"cutspan", "bench", "--sizes", "50,100,200,400", "--reference-sizes", "20,40,80", "--seed", "7"};
    std::istringstream in;
    std::ostringstream out, err;
    if (run_cli(8, argv, in, out, err) != 0) {
        o.fail("bench failed: " + err.str());
        return o;
    }
    const Json j = Json::parse(out.str());
    const double slope = j["engine_slope"];
    const double reference = j["reference_slope"];
    const double same_sizes = j["engine_slope_at_reference_sizes"];
    double t400 = -1;
    for (const auto& row : j["engine"])
        if (row["n"] == 400) t400 = row["seconds"];
    if (slope > 3.5) o.fail("engine slope " + std::to_string(slope));
    if (t400 < 0 || t400 >= 300) o.fail("n=400 took " + std::to_string(t400) + " s");
    if (reference - slope < 0.5) o.fail("reference slope only " + std::to_string(reference - slope) + " above engine");
    if (reference - same_sizes < 0.5)
        o.fail("reference slope only " + std::to_string(reference - same_sizes) + " above engine at the same sizes");
    char buf[256];
    std::snprintf(buf, sizeof buf, "engine slope %.2f, n=400 %.1f s, reference slope %.2f (engine %.2f at same sizes)",
                  slope, t400, reference, same_sizes);
    if (o.passed) o.detail = buf;
    else o.detail += "; " + std::string(buf);
    return o;
}

}  // namespace

int main() {
    bool all = true;
    auto report = [&all](const char* id, const std::function<Outcome()>& check) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        all = all && o.passed;
        std::printf("%s %s %s\n", id, o.passed ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    };
    report("AC1", ac1);
    report("AC2", ac2);
    report("AC3", ac3);
    report("AC4", ac4);
    const auto instances = oracle_instances();
    report("AC5", [&] { return ac5(instances); });
    report("AC6", [&] { return ac6(instances); });
    report("AC7", ac7);
    report("AC8", ac8);
    return all ? 0 : 1;
}
