#include "cutspan/engine.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace cutspan {

// ---------------------------------------------------------------------------
// Dictionary

std::pair<int, bool> CutpointDictionary::insert(PointMap f) {
    const std::size_t h = f.hash();
    auto [lo, hi] = by_hash_.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
        if (maps_[static_cast<std::size_t>(it->second)] == f) return {it->second, false};
    }
    const int index = static_cast<int>(maps_.size());
    maps_.push_back(std::move(f));
    by_hash_.emplace(h, index);
    return {index, true};
}

int CutpointDictionary::find(const PointMap& f) const {
    auto [lo, hi] = by_hash_.equal_range(f.hash());
    for (auto it = lo; it != hi; ++it) {
        if (maps_[static_cast<std::size_t>(it->second)] == f) return it->second;
    }
    return -1;
}

bool dedup_insert(CutpointDictionary& dic, const PointMap& f) { return dic.insert(f).second; }

// ---------------------------------------------------------------------------
// Component bookkeeping

ComponentIndex ComponentIndex::from_graph(const SupportGraph& g, int n) {
    ComponentIndex ci;
    ci.component_of.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < g.components.size(); ++c) {
        for (int v : g.components[c]) ci.component_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
        ci.sizes.push_back(static_cast<int>(g.components[c].size()));
        ci.clique.push_back(g.clique_flags[c] ? 1 : 0);
    }
    ci.support_size = static_cast<int>(g.vertices.size());
    return ci;
}

std::pair<std::vector<std::vector<int>>, std::vector<bool>> ComponentIndex::listed() const {
    std::vector<int> order(sizes.size(), -1);
    std::vector<std::vector<int>> comps;
    std::vector<bool> flags;
    for (std::size_t v = 0; v < component_of.size(); ++v) {
        const int c = component_of[v];
        if (c < 0) continue;
        if (order[static_cast<std::size_t>(c)] < 0) {
            order[static_cast<std::size_t>(c)] = static_cast<int>(comps.size());
            comps.emplace_back();
            flags.push_back(clique[static_cast<std::size_t>(c)] != 0);
        }
        comps[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])].push_back(static_cast<int>(v));
    }
    return {std::move(comps), std::move(flags)};
}

bool ComponentIndex::same_structure(const ComponentIndex& other) const {
    return support_size == other.support_size && listed() == other.listed();
}

ComponentIndex incremental_components(const Metric& d, int x, const ComponentIndex& prior, const PointMap& f) {
    if (static_cast<int>(prior.component_of.size()) != x || f.size() != x + 1) {
        throw std::invalid_argument("incremental_components extends a graph on points 0..x-1 by point x");
    }
    ComponentIndex out;
    out.component_of.assign(prior.component_of.begin(), prior.component_of.begin() + x);
    out.component_of.resize(static_cast<std::size_t>(f.size()), -1);
    out.sizes = prior.sizes;
    out.clique = prior.clique;
    out.support_size = prior.support_size;
    if (f[x].is_zero()) return out;

    const int count = out.count();
    std::vector<int> hits(static_cast<std::size_t>(count), 0);
    std::vector<int> touched;
    for (int y = 0; y < f.size(); ++y) {
        const int c = y == x ? -1 : out.component_of[static_cast<std::size_t>(y)];
        if (c < 0) continue;
        if (f[x] + f[y] > d(x, y) && hits[static_cast<std::size_t>(c)]++ == 0) touched.push_back(c);
    }

    ++out.support_size;
    if (touched.empty()) {
        out.component_of[static_cast<std::size_t>(x)] = count;
        out.sizes.push_back(1);
        out.clique.push_back(1);
        return out;
    }

    const int first = touched.front();
    const bool clique = touched.size() == 1 && out.clique[static_cast<std::size_t>(first)] &&
                        hits[static_cast<std::size_t>(first)] == out.sizes[static_cast<std::size_t>(first)];
    if (touched.size() == 1) {
        out.component_of[static_cast<std::size_t>(x)] = first;
        ++out.sizes[static_cast<std::size_t>(first)];
        out.clique[static_cast<std::size_t>(first)] = clique ? 1 : 0;
        return out;
    }

    // Merge every touched component into one, then renumber densely.
    std::vector<int> remap(static_cast<std::size_t>(count), -1);
    for (int c : touched) remap[static_cast<std::size_t>(c)] = first;
    std::vector<int> dense(static_cast<std::size_t>(count), -1);
    std::vector<int> sizes;
    std::vector<std::uint8_t> flags;
    for (int c = 0; c < count; ++c) {
        const int root = remap[static_cast<std::size_t>(c)] < 0 ? c : remap[static_cast<std::size_t>(c)];
        if (dense[static_cast<std::size_t>(root)] < 0) {
            dense[static_cast<std::size_t>(root)] = static_cast<int>(sizes.size());
            sizes.push_back(0);
            flags.push_back(root == first ? 0 : out.clique[static_cast<std::size_t>(c)]);
        }
        const int id = dense[static_cast<std::size_t>(root)];
        dense[static_cast<std::size_t>(c)] = id;
        sizes[static_cast<std::size_t>(id)] += out.sizes[static_cast<std::size_t>(c)];
    }
    for (auto& id : out.component_of) {
        if (id >= 0) id = dense[static_cast<std::size_t>(id)];
    }
    const int merged = dense[static_cast<std::size_t>(first)];
    out.component_of[static_cast<std::size_t>(x)] = merged;
    ++sizes[static_cast<std::size_t>(merged)];
    out.sizes = std::move(sizes);
    out.clique = std::move(flags);
    return out;
}

// ---------------------------------------------------------------------------
// Single recursion steps

namespace {

CutClass classify_index(const ComponentIndex& ci, int n, bool kuratowski) {
    const bool full_support = ci.support_size == n;
    const bool two_cliques = ci.count() == 2 && ci.clique[0] && ci.clique[1];
    if (ci.count() >= 2 && !(full_support && two_cliques)) return CutClass::InteriorCutpoint;
    if (kuratowski) return CutClass::Kuratowski;
    if (full_support && two_cliques) return CutClass::TwoCliquesFullSupport;
    return CutClass::Connected;
}

Rational extension_value(const Metric& d, const PointMap& prefix_map) {
    const int x = prefix_map.size();
    Rational best = d(x, 0) - prefix_map[0];
    for (int y = 1; y < x; ++y) {
        Rational v = d(x, y) - prefix_map[y];
        if (best < v) best = std::move(v);
    }
    return best;
}

int least_label_below(const Metric& d, int k) {
    int best = 0;
    for (int y = 1; y < k; ++y) {
        if (d.label_rank(y) < d.label_rank(best)) best = y;
    }
    return best;
}

/// A block split of the grown point set and where it came from.
struct Extension {
    BlockSplitRecord record;
    int origin = -1;        ///< index of the prior split, -1 for the singleton split of x
    bool x_in_a = false;
    /// The reference virtual distance to the side receiving x dropped, so the
    /// endpoint on that side no longer restricts to the prior endpoint.
    bool moved = false;
};

/// New point x = k; prior records live on points 0..k-1.
std::vector<Extension> grow_splits(const Metric& d, int x, std::span<const BlockSplitRecord> prior) {
    std::vector<Extension> out;
    out.reserve(prior.size() * 2 + 1);
    for (std::size_t i = 0; i < prior.size(); ++i) {
        const BlockSplitRecord& r = prior[i];
        const int a = r.a_s;
        const int b = r.b_s;
        const Rational& ab = d(a, b);

        // x joins side A: only pairs (x, b') are new cross pairs.
        {
            const Rational shift = ab - d(x, b);
            bool additive = true;
            for (int y = 0; y < x && additive; ++y) {
                if (!r.split.in_a(y)) additive = d(a, y) - d(x, y) == shift;
            }
            if (additive) {
                Rational term = d(b, x) + d(b, x);
                for (int y = 0; y < x; ++y) {
                    if (!r.split.in_a(y)) continue;
                    Rational t = d(b, x) + d(b, y) - d(y, x);
                    if (t < term) term = std::move(t);
                }
                Rational vb = min(r.vb, term.half());
                Rational alpha = r.va + vb - ab;
                if (alpha.sign() > 0) {
                    const bool moved = vb < r.vb;
                    out.push_back({BlockSplitRecord{r.split.extended(true), a, b, r.va, std::move(vb), std::move(alpha)},
                                   static_cast<int>(i), true, moved});
                }
            }
        }
        // x joins side B: only pairs (a', x) are new cross pairs.
        {
            const Rational shift = ab - d(a, x);
            bool additive = true;
            for (int y = 0; y < x && additive; ++y) {
                if (r.split.in_a(y)) additive = d(y, b) - d(y, x) == shift;
            }
            if (additive) {
                Rational term = d(a, x) + d(a, x);
                for (int y = 0; y < x; ++y) {
                    if (r.split.in_a(y)) continue;
                    Rational t = d(a, x) + d(a, y) - d(y, x);
                    if (t < term) term = std::move(t);
                }
                Rational va = min(r.va, term.half());
                Rational alpha = va + r.vb - ab;
                if (alpha.sign() > 0) {
                    const bool moved = va < r.va;
                    out.push_back({BlockSplitRecord{r.split.extended(false), a, b, std::move(va), r.vb, std::move(alpha)},
                                   static_cast<int>(i), false, moved});
                }
            }
        }
    }

    // {x} | X': side A is X' (it holds point 0), a_s its least label, b_s = x.
    // Cross distances are trivially additive with a one-point side.
    if (x >= 1) {
        const int a = least_label_below(d, x);
        std::optional<Rational> term;
        for (int y = 0; y < x; ++y) {
            for (int z = y; z < x; ++z) {
                Rational t = d(x, y) + d(x, z) - d(y, z);
                if (!term || t < *term) term = std::move(t);
            }
        }
        Rational vb = term->half();
        if (vb.sign() > 0) {
            std::vector<std::uint8_t> mask(static_cast<std::size_t>(x) + 1, 1);
            mask.back() = 0;
            Rational alpha = vb;
            out.push_back({BlockSplitRecord{Split::from_mask(std::move(mask)), a, x, d(a, x), std::move(vb),
                                            std::move(alpha)},
                           -1, false, false});
        }
    }
    return out;
}

/// Value at point y of the endpoint f_A (toward_a) or f_B of a record.
Rational endpoint_value(const Metric& d, const BlockSplitRecord& r, int y, bool toward_a) {
    const Rational& ab = d(r.a_s, r.b_s);
    if (r.split.in_a(y)) return toward_a ? d(y, r.b_s) - r.vb : r.va - ab + d(y, r.b_s);
    return toward_a ? r.vb - ab + d(r.a_s, y) : d(r.a_s, y) - r.va;
}

PointMap endpoint(const Metric& d, const BlockSplitRecord& r, bool toward_a) {
    std::vector<Rational> f;
    f.reserve(static_cast<std::size_t>(r.split.size()));
    for (int y = 0; y < r.split.size(); ++y) f.push_back(endpoint_value(d, r, y, toward_a));
    return PointMap(std::move(f));
}

struct Entry {
    PointMap map;
    ComponentIndex comps;
    int kuratowski_of = -1;
};

struct SplitState {
    BlockSplitRecord record;
    int endpoint_a = -1;
    int endpoint_b = -1;
};

struct Level {
    CutpointDictionary dic;
    std::vector<Entry> entries;
    std::vector<SplitState> splits;

    std::vector<BlockSplitRecord> records() const {
        std::vector<BlockSplitRecord> out;
        out.reserve(splits.size());
        for (const auto& s : splits) out.push_back(s.record);
        return out;
    }
};

int zero_coordinate(const PointMap& f) {
    for (int y = 0; y < f.size(); ++y) {
        if (f[y].is_zero()) return y;
    }
    return -1;
}

class Builder {
public:
    Builder(const Metric& d, const EngineOptions& options) : d_(d), options_(options) {}

    Level base() const {
        Level level;
        Entry e{PointMap({Rational(0)}), ComponentIndex{{-1}, {}, {}, 0}, 0};
        level.dic.insert(e.map);
        level.entries.push_back(std::move(e));
        return level;
    }

    Level step(const Level& prev, int x) const {
        Level next;
        const int n = x + 1;

        // Block splits of the grown set.
        const auto prior_records = prev.records();
        for (auto& ext : grow_splits(d_, x, prior_records)) {
            if (options_.check_incremental) check_record(ext.record);
            SplitState st{std::move(ext.record)};
            const BlockSplitRecord& r = st.record;
            if (ext.origin < 0) {
                st.endpoint_a = insert_scratch(next, endpoint(d_, r, true));
                st.endpoint_b = insert_scratch(next, endpoint(d_, r, false));
            } else {
                const SplitState& old = prev.splits[static_cast<std::size_t>(ext.origin)];
                const Entry& old_a = prev.entries[static_cast<std::size_t>(old.endpoint_a)];
                const Entry& old_b = prev.entries[static_cast<std::size_t>(old.endpoint_b)];
                // The endpoint nearer the side that kept its old virtual
                // distance restricts to the prior endpoint. The other one
                // does too unless that distance dropped, in which case its
                // graph on the old points is two cliques on the old sides.
                const bool a_is_extension = !ext.x_in_a || !ext.moved;
                const bool b_is_extension = ext.x_in_a || !ext.moved;
                st.endpoint_a = a_is_extension
                                    ? insert_extension(next, old_a, endpoint_value(d_, r, x, true), r, true)
                                    : insert_two_cliques(next, r, true);
                st.endpoint_b = b_is_extension
                                    ? insert_extension(next, old_b, endpoint_value(d_, r, x, false), r, false)
                                    : insert_two_cliques(next, r, false);
            }
            next.splits.push_back(std::move(st));
        }

        // Extensions of the previous cutpoints; Kuratowski maps held back so
        // they are inserted in point order afterwards.
        std::vector<std::optional<Entry>> kuratowski(static_cast<std::size_t>(n));
        for (const Entry& e : prev.entries) {
            Rational fx = extension_value(d_, e.map);
            if (e.kuratowski_of < 0 && fx.sign() < 0) continue;
            PointMap f = e.map.extended(std::move(fx));
            if (e.kuratowski_of < 0 && next.dic.find(f) >= 0) continue;
            Entry grown{std::move(f), {}, e.kuratowski_of};
            grown.comps = incremental_components(d_, x, e.comps, grown.map);
            if (grown.kuratowski_of < 0 && grown.map[x].is_zero() && is_kuratowski_of(grown.map, x)) {
                grown.kuratowski_of = x;
            }
            const CutClass cls = classify_index(grown.comps, n, grown.kuratowski_of >= 0);
            if (cls == CutClass::InteriorCutpoint) {
                add(next, grown);
            }
            if (e.kuratowski_of >= 0) kuratowski[static_cast<std::size_t>(e.kuratowski_of)] = std::move(grown);
        }

        for (int y = 0; y < x; ++y) {
            auto& k = kuratowski[static_cast<std::size_t>(y)];
            if (!k) throw std::logic_error("Kuratowski map missing from the previous level");
            if (next.dic.find(k->map) < 0) add(next, std::move(*k));
        }
        const auto row = d_.row(x).first(static_cast<std::size_t>(n));
        insert_scratch(next, PointMap(std::vector<Rational>(row.begin(), row.end())));
        return next;
    }

private:
    bool is_kuratowski_of(const PointMap& f, int x) const {
        for (int y = 0; y < f.size(); ++y) {
            if (f[y] != d_(x, y)) return false;
        }
        return true;
    }

    int add(Level& level, Entry e) const {
        if (options_.check_incremental) check_entry(e);
        auto [index, inserted] = level.dic.insert(e.map);
        if (inserted) level.entries.push_back(std::move(e));
        return index;
    }

    int insert_scratch(Level& level, PointMap f) const {
        if (int found = level.dic.find(f); found >= 0) return found;
        Entry e{std::move(f), {}, -1};
        e.comps = ComponentIndex::from_graph(gamma_graph(d_, e.map), e.map.size());
        e.kuratowski_of = zero_coordinate(e.map);
        return add(level, std::move(e));
    }

    int insert_extension(Level& level, const Entry& old, Rational value, const BlockSplitRecord& r,
                         bool toward_a) const {
        PointMap f = old.map.extended(std::move(value));
        if (options_.check_incremental && f != endpoint(d_, r, toward_a)) {
            throw std::logic_error("endpoint of " + r.split.str(d_.prefix(r.split.size())) +
                                   " does not extend the prior endpoint");
        }
        if (int found = level.dic.find(f); found >= 0) return found;
        const int x = f.size() - 1;
        Entry e{std::move(f), {}, -1};
        e.comps = incremental_components(d_, x, old.comps, e.map);
        e.kuratowski_of = old.kuratowski_of >= 0 && e.map[old.kuratowski_of].is_zero() ? old.kuratowski_of
                                                                                       : zero_coordinate(e.map);
        return add(level, std::move(e));
    }

    int insert_two_cliques(Level& level, const BlockSplitRecord& r, bool toward_a) const {
        PointMap f = endpoint(d_, r, toward_a);
        if (int found = level.dic.find(f); found >= 0) return found;
        const int x = f.size() - 1;
        ComponentIndex prior;
        prior.component_of.resize(static_cast<std::size_t>(x));
        prior.sizes = {0, 0};
        prior.clique = {1, 1};
        for (int y = 0; y < x; ++y) {
            const int side = r.split.in_a(y) ? 0 : 1;
            prior.component_of[static_cast<std::size_t>(y)] = side;
            ++prior.sizes[static_cast<std::size_t>(side)];
        }
        prior.support_size = x;
        if (prior.sizes[1] == 0) {
            prior.sizes.pop_back();
            prior.clique.pop_back();
        }
        Entry e{std::move(f), {}, -1};
        e.comps = incremental_components(d_, x, prior, e.map);
        e.kuratowski_of = zero_coordinate(e.map);
        return add(level, std::move(e));
    }

    void check_entry(const Entry& e) const {
        const SupportGraph g = gamma_graph(d_, e.map);
        if (!e.comps.same_structure(ComponentIndex::from_graph(g, e.map.size()))) {
            throw std::logic_error("incremental components disagree with recomputation for " + e.map.str());
        }
        if (e.kuratowski_of != kuratowski_point(d_, e.map)) {
            throw std::logic_error("Kuratowski tag wrong for " + e.map.str());
        }
        const CutClass cls = classify_cutstar(d_, e.map);
        if (cls != CutClass::InteriorCutpoint && cls != CutClass::Kuratowski) {
            throw std::logic_error(e.map.str() + " stored but classified " + to_string(cls));
        }
    }

    void check_record(const BlockSplitRecord& r) const {
        const Metric sub = d_.prefix(r.split.size());
        const auto side_a = r.split.side_a();
        const auto side_b = r.split.side_b();
        if (r.va != virtual_distance(sub, kuratowski_map(sub, r.a_s), side_b) ||
            r.vb != virtual_distance(sub, kuratowski_map(sub, r.b_s), side_a) ||
            !has_additive_cross_distances(sub, r.split, r.a_s, r.b_s)) {
            throw std::logic_error("incremental record for " + r.split.str(sub) + " disagrees with recomputation");
        }
    }

    const Metric& d_;
    EngineOptions options_;
};

}  // namespace

PointMap extend_cutpoint(const Metric& d, const PointMap& prefix_map) {
    if (prefix_map.size() < 1 || prefix_map.size() >= d.size()) {
        throw std::invalid_argument("extend_cutpoint needs a map on the first k < n points");
    }
    return prefix_map.extended(extension_value(d, prefix_map));
}

std::vector<BlockSplitRecord> extend_splits(const Metric& d, std::span<const BlockSplitRecord> prior) {
    const int x = d.size() - 1;
    for (const auto& r : prior) {
        if (r.split.size() != x) throw std::invalid_argument("prior split is not on the first n-1 points");
    }
    std::vector<BlockSplitRecord> out;
    for (auto& ext : grow_splits(d, x, prior)) out.push_back(std::move(ext.record));
    return out;
}

int CutSystem::find(const PointMap& f) const {
    for (std::size_t i = 0; i < cutpoints.size(); ++i) {
        if (cutpoints[i].map == f) return static_cast<int>(i);
    }
    return -1;
}

CutSystem compute_cut_points(const Metric& d, const EngineOptions& options) {
    Builder builder(d, options);
    Level level = builder.base();
    for (int x = 1; x < d.size(); ++x) level = builder.step(level, x);

    CutSystem cs{d, {}, level.records()};
    const int n = d.size();
    cs.cutpoints.reserve(level.entries.size());
    for (auto& e : level.entries) {
        CutpointInfo info;
        info.classification = classify_index(e.comps, n, e.kuratowski_of >= 0);
        info.kuratowski_of = e.kuratowski_of;
        std::tie(info.components, info.clique_flags) = e.comps.listed();
        info.map = std::move(e.map);
        cs.cutpoints.push_back(std::move(info));
    }
    return cs;
}

}  // namespace cutspan
