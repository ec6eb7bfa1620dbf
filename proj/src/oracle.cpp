#include "cutspan/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "cutspan/realization.hpp"

namespace cutspan {

namespace {

void require_cap(const Metric& d, int cap) {
    if (d.size() > cap) throw CapExceeded(d.size(), cap);
}

CutpointInfo describe(const Metric& d, const PointMap& f) {
    CutpointInfo info;
    info.map = f;
    info.classification = classify_cutstar(d, f);
    info.kuratowski_of = kuratowski_point(d, f);
    auto g = gamma_graph(d, f);
    info.components = std::move(g.components);
    info.clique_flags = std::move(g.clique_flags);
    return info;
}

}  // namespace

std::vector<BlockSplitRecord> brute_force_block_splits(const Metric& d, int cap) {
    require_cap(d, cap);
    const int n = d.size();
    std::vector<BlockSplitRecord> out;
    if (n < 2) return out;
    // Point 0 always on side A; the remaining points enumerate 2^(n-1) - 1
    // proper splits.
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t bits = 0; bits + 1 < count; ++bits) {
        std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 1);
        for (int i = 1; i < n; ++i) mask[static_cast<std::size_t>(i)] = (bits >> (i - 1)) & 1 ? 1 : 0;
        const Split s = Split::from_mask(std::move(mask));
        const auto side_a = s.side_a();
        const auto side_b = s.side_b();
        auto least = [&](const std::vector<int>& side) {
            return *std::min_element(side.begin(), side.end(),
                                     [&](int p, int q) { return d.label_rank(p) < d.label_rank(q); });
        };
        const int a0 = least(side_a);
        const int b0 = least(side_b);
        if (!has_additive_cross_distances(d, s, a0, b0)) continue;
        Rational alpha = isolation_index(d, s);
        if (alpha.sign() <= 0) continue;
        out.push_back({s, a0, b0, virtual_distance(d, kuratowski_map(d, a0), side_b),
                       virtual_distance(d, kuratowski_map(d, b0), side_a), std::move(alpha)});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.split < y.split; });
    return out;
}

CutSystem reference_cut_points(const Metric& d, int cap) {
    require_cap(d, cap);
    const int n = d.size();
    std::vector<Split> splits;
    std::set<PointMap> maps{PointMap{Rational(0)}};
    for (int k = 2; k <= n; ++k) {
        const Metric sub = d.prefix(k);
        const int x = k - 1;
        std::vector<BlockSplitRecord> records;
        for (const auto& s : splits) {
            for (bool to_a : {true, false}) {
                if (auto r = is_block_split(sub, s.extended(to_a))) records.push_back(std::move(*r));
            }
        }
        const int single[] = {x};
        if (auto r = is_block_split(sub, Split::from_side(k, single))) records.push_back(std::move(*r));

        std::set<PointMap> grown;
        for (const auto& r : records) {
            grown.insert(split_map(sub, r, r.alpha, Rational(0)));
            grown.insert(split_map(sub, r, Rational(0), r.alpha));
        }
        for (const auto& prev : maps) {
            Rational fx = sub(x, 0) - prev[0];
            for (int y = 1; y < x; ++y) fx = max(fx, sub(x, y) - prev[y]);
            PointMap f = prev.extended(fx);
            if (is_in_polytope(sub, f) && classify_cutstar(sub, f) == CutClass::InteriorCutpoint) grown.insert(f);
        }
        for (int y = 0; y < k; ++y) grown.insert(kuratowski_map(sub, y));

        maps = std::move(grown);
        splits.clear();
        for (const auto& r : records) splits.push_back(r.split);
    }

    CutSystem cs{d, {}, {}};
    for (const auto& f : maps) cs.cutpoints.push_back(describe(d, f));
    for (const auto& s : splits) {
        auto r = is_block_split(d, s);
        if (!r) throw std::logic_error("reference split lost its block property");
        cs.block_splits.push_back(std::move(*r));
    }
    std::sort(cs.block_splits.begin(), cs.block_splits.end(),
              [](const auto& x, const auto& y) { return x.split < y.split; });
    return cs;
}

std::string compare_cut_systems(const CutSystem& x, const CutSystem& y) {
    const Metric& d = x.metric;
    std::set<PointMap> mx, my;
    for (const auto& c : x.cutpoints) mx.insert(c.map);
    for (const auto& c : y.cutpoints) my.insert(c.map);
    if (mx.size() != x.cutpoints.size()) return "first result repeats a cutpoint";
    if (my.size() != y.cutpoints.size()) return "second result repeats a cutpoint";
    for (const auto& f : mx) {
        if (!my.contains(f)) return "cutpoint " + f.str() + " only in first result";
    }
    for (const auto& f : my) {
        if (!mx.contains(f)) return "cutpoint " + f.str() + " only in second result";
    }
    std::map<Split, Rational> sx, sy;
    for (const auto& r : x.block_splits) sx.emplace(r.split, r.alpha);
    for (const auto& r : y.block_splits) sy.emplace(r.split, r.alpha);
    if (sx.size() != x.block_splits.size() || sy.size() != y.block_splits.size()) return "a result repeats a split";
    for (const auto& [s, a] : sx) {
        auto it = sy.find(s);
        if (it == sy.end()) return "split " + s.str(d) + " only in first result";
        if (it->second != a) return "split " + s.str(d) + " has isolation index " + a.str() + " vs " + it->second.str();
    }
    for (const auto& [s, a] : sy) {
        if (!sx.contains(s)) return "split " + s.str(d) + " only in second result";
    }
    return {};
}

void VerificationReport::add(std::string name, bool passed, std::string witness) {
    checks.push_back({std::move(name), passed, passed ? std::string{} : std::move(witness)});
    overall = overall && passed;
}

const VerificationCheck* VerificationReport::failure() const {
    for (const auto& c : checks) {
        if (!c.passed) return &c;
    }
    return nullptr;
}

namespace {

std::string bridge_mismatch(const Metric& d, const CutSystem& cs, const BlockDecomposition& dec) {
    const auto& g = dec.graph;
    const int m = g.vertex_count();
    const auto adj = g.adjacency();
    std::map<Split, Rational> bridges;
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        if (!dec.bridge[b]) continue;
        const int u = dec.blocks[b][0];
        const int v = dec.blocks[b][1];
        const int e = g.find_edge(u, v);
        // Points reachable from u without the bridge.
        std::vector<bool> seen(static_cast<std::size_t>(m), false);
        std::vector<int> todo{u};
        seen[static_cast<std::size_t>(u)] = true;
        while (!todo.empty()) {
            const int p = todo.back();
            todo.pop_back();
            for (auto [q, f] : adj[p]) {
                if (f == e || seen[static_cast<std::size_t>(q)]) continue;
                seen[static_cast<std::size_t>(q)] = true;
                todo.push_back(q);
            }
        }
        std::vector<std::uint8_t> mask(static_cast<std::size_t>(d.size()));
        for (int x = 0; x < d.size(); ++x) mask[static_cast<std::size_t>(x)] = seen[g.vertex_of[x]] ? 1 : 0;
        try {
            bridges.emplace(Split::from_mask(std::move(mask)), g.edges[static_cast<std::size_t>(e)].weight);
        } catch (const std::invalid_argument&) {
            return "bridge " + g.names[u] + "-" + g.names[v] + " does not separate any points";
        }
    }
    for (const auto& r : cs.block_splits) {
        auto it = bridges.find(r.split);
        if (it == bridges.end()) return "no bridge for split " + r.split.str(d);
        if (it->second != r.alpha) {
            return "bridge for " + r.split.str(d) + " has weight " + it->second.str() + ", isolation index " +
                   r.alpha.str();
        }
        bridges.erase(it);
    }
    if (!bridges.empty()) return "bridge separating " + bridges.begin()->first.str(d) + " is not a block split";
    return {};
}

}  // namespace

VerificationReport verify_cut_system(const Metric& d, const CutSystem& cs, const VerifyOptions& options) {
    VerificationReport report;
    const int n = d.size();

    {
        std::set<PointMap> seen;
        std::string bad;
        for (const auto& c : cs.cutpoints) {
            if (c.map.size() != n) bad = c.map.str() + " has the wrong number of values";
            else if (!seen.insert(c.map).second) bad = c.map.str() + " listed twice";
            if (!bad.empty()) break;
        }
        report.add("distinct_maps", bad.empty(), bad);
        if (!bad.empty()) return report;
    }

    std::string ts_bad, cut_bad, meta_bad;
    for (const auto& c : cs.cutpoints) {
        if (int x = tight_span_violation(d, c.map); x >= 0 && ts_bad.empty()) {
            ts_bad = c.map.str() + " fails at coordinate " + d.label(x);
        }
        const auto fresh = describe(d, c.map);
        if (cut_bad.empty() && fresh.classification != CutClass::InteriorCutpoint &&
            fresh.classification != CutClass::Kuratowski) {
            cut_bad = c.map.str() + " is " + to_string(fresh.classification);
        }
        if (meta_bad.empty() && (fresh.classification != c.classification || fresh.kuratowski_of != c.kuratowski_of ||
                                 fresh.components != c.components || fresh.clique_flags != c.clique_flags)) {
            meta_bad = "stored support-graph data of " + c.map.str() + " differs from recomputation";
        }
    }
    report.add("tight_span_membership", ts_bad.empty(), ts_bad);
    report.add("cutstar_membership", cut_bad.empty(), cut_bad);
    report.add("cutpoint_metadata", meta_bad.empty(), meta_bad);

    {
        std::string bad;
        for (int x = 0; x < n && bad.empty(); ++x) {
            if (cs.find(kuratowski_map(d, x)) < 0) bad = "Kuratowski map of " + d.label(x) + " missing";
        }
        report.add("kuratowski_maps_present", bad.empty(), bad);
    }

    std::string rec_bad, end_bad;
    for (const auto& r : cs.block_splits) {
        if (!rec_bad.empty()) break;
        const auto side_a = r.split.side_a();
        const auto side_b = r.split.side_b();
        if (r.split.size() != n || !r.split.in_a(r.a_s) || r.split.in_a(r.b_s)) {
            rec_bad = "reference points of " + r.split.str(d) + " are not on their sides";
        } else if (r.va != virtual_distance(d, kuratowski_map(d, r.a_s), side_b) ||
                   r.vb != virtual_distance(d, kuratowski_map(d, r.b_s), side_a)) {
            rec_bad = "stored virtual distances of " + r.split.str(d) + " are wrong";
        } else if (r.alpha != r.va + r.vb - d(r.a_s, r.b_s) || r.alpha != isolation_index(d, r.split) ||
                   r.alpha.sign() <= 0) {
            rec_bad = "isolation index of " + r.split.str(d) + " is wrong";
        } else if (!has_additive_cross_distances(d, r.split, r.a_s, r.b_s)) {
            rec_bad = r.split.str(d) + " fails the cross-sum condition";
        }
        if (rec_bad.empty() && end_bad.empty()) {
            auto [fa, fb] = endpoint_maps(d, r);
            if (cs.find(fa) < 0) end_bad = "endpoint " + fa.str() + " of " + r.split.str(d) + " missing";
            else if (cs.find(fb) < 0) end_bad = "endpoint " + fb.str() + " of " + r.split.str(d) + " missing";
        }
    }
    report.add("split_records", rec_bad.empty(), rec_bad);
    report.add("endpoint_closure", end_bad.empty(), end_bad);

    const int split_cap = std::max(2 * n - 3, 0);
    const int cut_cap = std::max(4 * n - 5, 1);
    report.add("split_count_bound", static_cast<int>(cs.block_splits.size()) <= split_cap,
               std::to_string(cs.block_splits.size()) + " splits > " + std::to_string(split_cap));
    report.add("cutpoint_count_bound", static_cast<int>(cs.cutpoints.size()) <= cut_cap,
               std::to_string(cs.cutpoints.size()) + " cutpoints > " + std::to_string(cut_cap));

    {
        std::string bad;
        for (std::size_t i = 0; i < cs.block_splits.size() && bad.empty(); ++i) {
            for (std::size_t j = i + 1; j < cs.block_splits.size() && bad.empty(); ++j) {
                if (!are_compatible(cs.block_splits[i].split, cs.block_splits[j].split)) {
                    bad = cs.block_splits[i].split.str(d) + " and " + cs.block_splits[j].split.str(d);
                }
            }
        }
        report.add("pairwise_compatibility", bad.empty(), bad);
    }

    if (n <= options.cap) {
        CutSystem brute{d, {}, brute_force_block_splits(d, options.cap)};
        // Only the split part is compared here; the maps come next.
        std::string bad;
        {
            CutSystem splits_only{d, {}, cs.block_splits};
            bad = compare_cut_systems(splits_only, brute);
        }
        report.add("splits_match_exhaustive_search", bad.empty(), bad);
        const auto reference = reference_cut_points(d, options.cap);
        bad = compare_cut_systems(cs, reference);
        report.add("matches_reference_construction", bad.empty(), bad);
    } else {
        report.skipped.push_back("oracle comparisons: " + std::to_string(n) + " points exceed cap " +
                                 std::to_string(options.cap));
    }

    if (options.realization && report.overall) {
        try {
            const auto dec = decompose(d, cs);
            report.add("realization", true);
            const int block_cap = n >= 2 ? 3 * n - 5 : 1;
            report.add("block_count_bound", static_cast<int>(dec.blocks.size()) <= block_cap,
                       std::to_string(dec.blocks.size()) + " blocks > " + std::to_string(block_cap));
            const auto bad = bridge_mismatch(d, cs, dec);
            report.add("bridges_match_splits", bad.empty(), bad);
        } catch (const RealizationCheckFailed& e) {
            report.add("realization", false, e.what());
        }
    } else if (options.realization) {
        report.skipped.push_back("realization: cut system already failed");
    }
    return report;
}

Rng::Rng(std::uint64_t seed) : state_(seed) {}

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int Rng::uniform(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v;
    do v = next();
    while (v >= limit);
    return lo + static_cast<int>(v % range);
}

bool Rng::chance(int numerator, int denominator) { return uniform(0, denominator - 1) < numerator; }

namespace {

std::vector<std::string> point_names(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
    return names;
}

// Shortest-path closure of a partial weight table (nullopt = no edge).
void close_paths(std::vector<std::vector<std::optional<Rational>>>& w) {
    const std::size_t m = w.size();
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            if (!w[i][k]) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (!w[k][j]) continue;
                Rational via = *w[i][k] + *w[k][j];
                if (!w[i][j] || via < *w[i][j]) w[i][j] = std::move(via);
            }
        }
    }
}

}  // namespace

Metric generate_block_instance(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("block instances need at least two points");
    Rng rng(seed);
    std::vector<std::vector<int>> blocks;
    std::vector<bool> labelled;
    int label_count = 0;
    auto add_vertex = [&] {
        labelled.push_back(true);
        ++label_count;
        return static_cast<int>(labelled.size()) - 1;
    };

    std::vector<int> first;
    for (int i = std::min(rng.uniform(2, 4), n); i > 0; --i) first.push_back(add_vertex());
    blocks.push_back(std::move(first));
    while (label_count < n) {
        const int v = rng.uniform(0, static_cast<int>(labelled.size()) - 1);
        // The second block is a bridge so every multi-block instance has one.
        const int size = blocks.size() == 1 ? 2 : std::min(rng.uniform(2, 4), n - label_count + 1);
        std::vector<int> block{v};
        for (int i = 1; i < size; ++i) block.push_back(add_vertex());
        blocks.push_back(std::move(block));
        int degree = 0;
        for (const auto& b : blocks) {
            if (std::find(b.begin(), b.end(), v) != b.end()) degree += static_cast<int>(b.size()) - 1;
        }
        // v now lies in two blocks, so it is a cut vertex; drop its label
        // sometimes once its degree allows.
        if (labelled[v] && degree >= 3 && rng.chance(1, 2)) {
            labelled[v] = false;
            --label_count;
        }
    }

    const int den = rng.uniform(1, 3);
    const std::size_t m = labelled.size();
    std::vector<std::vector<std::optional<Rational>>> w(m, std::vector<std::optional<Rational>>(m));
    for (std::size_t i = 0; i < m; ++i) w[i][i] = Rational(0);
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = i + 1; j < b.size(); ++j) {
                Rational r(rng.uniform(1, 20), den);
                w[b[i]][b[j]] = w[b[j]][b[i]] = r;
            }
        }
    }
    close_paths(w);

    std::vector<int> keep;
    for (std::size_t v = 0; v < m; ++v) {
        if (labelled[v]) keep.push_back(static_cast<int>(v));
    }
    std::vector<std::vector<Rational>> table(keep.size(), std::vector<Rational>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = 0; j < keep.size(); ++j) table[i][j] = *w[keep[i]][keep[j]];
    }
    return validate_metric(point_names(n), table);
}

Metric random_metric(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("a metric needs at least one point");
    Rng rng(seed);
    const int den = rng.uniform(1, 3);
    const std::size_t m = static_cast<std::size_t>(n);
    std::vector<std::vector<std::optional<Rational>>> w(m, std::vector<std::optional<Rational>>(m));
    for (std::size_t i = 0; i < m; ++i) {
        w[i][i] = Rational(0);
        for (std::size_t j = i + 1; j < m; ++j) w[i][j] = w[j][i] = Rational(rng.uniform(1, 20), den);
    }
    close_paths(w);
    std::vector<std::vector<Rational>> table(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) table[i][j] = *w[i][j];
    }
    return validate_metric(point_names(n), table);
}

Metric reorder(const Metric& d, const std::vector<int>& order) {
    std::vector<int> check(order);
    std::sort(check.begin(), check.end());
    for (int i = 0; i < static_cast<int>(check.size()); ++i) {
        if (check[static_cast<std::size_t>(i)] != i || static_cast<int>(check.size()) != d.size()) {
            throw std::invalid_argument("not a permutation of the points");
        }
    }
    return d.subset(order);
}

VerificationReport permutation_harness(const Metric& d, int trials, std::uint64_t seed) {
    VerificationReport report;
    const int n = d.size();
    const CutSystem base = compute_cut_points(d);
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed ^ (0x632be59bd9b4e019ULL * static_cast<std::uint64_t>(t + 1)));
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        const CutSystem moved = compute_cut_points(reorder(d, order));

        // Back to the original point indices.
        CutSystem back{d, {}, {}};
        for (const auto& c : moved.cutpoints) {
            std::vector<Rational> f(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(order[i])] = c.map[i];
            CutpointInfo info;
            info.map = PointMap(std::move(f));
            back.cutpoints.push_back(std::move(info));
        }
        for (const auto& r : moved.block_splits) {
            std::vector<std::uint8_t> mask(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) mask[static_cast<std::size_t>(order[i])] = r.split.in_a(i) ? 1 : 0;
            back.block_splits.push_back({Split::from_mask(std::move(mask)), order[r.a_s], order[r.b_s], r.va, r.vb,
                                         r.alpha});
        }
        std::string order_str;
        for (int i : order) order_str += (order_str.empty() ? "" : ",") + d.label(i);
        const auto diff = compare_cut_systems(base, back);
        report.add("reordering " + std::to_string(t + 1), diff.empty(), "order " + order_str + ": " + diff);
    }
    return report;
}

}  // namespace cutspan
