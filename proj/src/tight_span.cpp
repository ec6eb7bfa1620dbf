#include "cutspan/tight_span.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cutspan {

PointMap PointMap::extended(Rational value) const {
    std::vector<Rational> v;
    v.reserve(values_.size() + 1);
    v.insert(v.end(), values_.begin(), values_.end());
    v.push_back(std::move(value));
    return PointMap(std::move(v));
}

std::size_t PointMap::hash() const {
    std::size_t h = values_.size();
    for (const auto& r : values_) h ^= r.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::string PointMap::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ",";
        s += values_[i].str();
    }
    return s + ")";
}

Rational sup_distance(const PointMap& f, const PointMap& g) {
    Rational best;
    for (int i = 0; i < f.size(); ++i) {
        Rational diff = abs(f[i] - g[i]);
        if (best < diff) best = std::move(diff);
    }
    return best;
}

bool SupportGraph::two_cliques() const {
    return components.size() == 2 && clique_flags[0] && clique_flags[1];
}

PointMap kuratowski_map(const Metric& d, int x) {
    if (x < 0 || x >= d.size()) throw UnknownPoint("point index " + std::to_string(x) + " out of range");
    auto r = d.row(x);
    return PointMap(std::vector<Rational>(r.begin(), r.end()));
}

PointMap kuratowski_map(const Metric& d, std::string_view label) { return kuratowski_map(d, d.index_of(label)); }

std::vector<int> support(const PointMap& f) {
    std::vector<int> s;
    for (int i = 0; i < f.size(); ++i) {
        if (!f[i].is_zero()) s.push_back(i);
    }
    return s;
}

namespace {

int active_points(const Metric& d, const PointMap& f) {
    if (f.size() > d.size()) {
        throw std::invalid_argument("map has " + std::to_string(f.size()) + " values for a metric on " +
                                    std::to_string(d.size()) + " points");
    }
    return f.size();
}

}  // namespace

SupportGraph gamma_graph(const Metric& d, const PointMap& f) {
    SupportGraph g;
    const int n = active_points(d, f);
    g.vertices = support(f);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < g.vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < g.vertices.size(); ++b) {
            const int x = g.vertices[a];
            const int y = g.vertices[b];
            if (f[x] + f[y] > d(x, y)) {
                g.edges.emplace_back(x, y);
                adj[x].push_back(y);
                adj[y].push_back(x);
            }
        }
    }
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    for (int v : g.vertices) {
        if (comp[v] >= 0) continue;
        const int id = static_cast<int>(g.components.size());
        std::vector<int> members{v};
        comp[v] = id;
        for (std::size_t head = 0; head < members.size(); ++head) {
            for (int w : adj[members[head]]) {
                if (comp[w] < 0) {
                    comp[w] = id;
                    members.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        g.components.push_back(std::move(members));
    }
    std::vector<std::size_t> edge_count(g.components.size(), 0);
    for (const auto& [x, y] : g.edges) ++edge_count[static_cast<std::size_t>(comp[x])];
    for (std::size_t c = 0; c < g.components.size(); ++c) {
        const std::size_t k = g.components[c].size();
        g.clique_flags.push_back(edge_count[c] == k * (k - 1) / 2);
    }
    return g;
}

bool is_in_polytope(const Metric& d, const PointMap& f) {
    const int n = active_points(d, f);
    for (int x = 0; x < n; ++x) {
        for (int y = x; y < n; ++y) {
            if (f[x] + f[y] < d(x, y)) return false;
        }
    }
    return true;
}

int tight_span_violation(const Metric& d, const PointMap& f) {
    const int n = active_points(d, f);
    for (int x = 0; x < n; ++x) {
        Rational best = d(x, 0) - f[0];
        for (int y = 1; y < n; ++y) {
            Rational v = d(x, y) - f[y];
            if (best < v) best = std::move(v);
        }
        if (best != f[x]) return x;
    }
    return -1;
}

bool is_in_tight_span(const Metric& d, const PointMap& f) { return tight_span_violation(d, f) < 0; }

Rational virtual_distance(const Metric& d, const PointMap& f, std::span<const int> subset) {
    if (subset.empty()) throw EmptySubset("virtual distance to the empty set");
    Rational best = f[subset[0]] + f[subset[0]];
    for (std::size_t a = 0; a < subset.size(); ++a) {
        for (std::size_t b = a; b < subset.size(); ++b) {
            const int y = subset[a];
            const int z = subset[b];
            Rational v = f[y] + f[z] - d(y, z);
            if (v < best) best = std::move(v);
        }
    }
    return best.half();
}

const char* to_string(CutClass c) {
    switch (c) {
        case CutClass::InteriorCutpoint: return "interior_cutpoint";
        case CutClass::Kuratowski: return "kuratowski";
        case CutClass::TwoCliquesFullSupport: return "two_cliques_full_support";
        case CutClass::NotInTightSpan: return "not_in_tight_span";
        case CutClass::Connected: return "connected";
    }
    return "?";
}

int kuratowski_point(const Metric& d, const PointMap& f) {
    const int n = active_points(d, f);
    for (int x = 0; x < n; ++x) {
        if (!f[x].is_zero()) continue;
        auto r = d.row(x);
        if (std::equal(r.begin(), r.begin() + n, f.values().begin())) return x;
    }
    return -1;
}

CutClass classify_from_graph(const SupportGraph& g, int n, bool kuratowski) {
    const bool full_support = static_cast<int>(g.vertices.size()) == n;
    if (g.disconnected() && !(full_support && g.two_cliques())) return CutClass::InteriorCutpoint;
    if (kuratowski) return CutClass::Kuratowski;
    if (full_support && g.two_cliques()) return CutClass::TwoCliquesFullSupport;
    return CutClass::Connected;
}

CutClass classify_cutstar(const Metric& d, const PointMap& f) {
    if (!is_in_tight_span(d, f)) return CutClass::NotInTightSpan;
    return classify_from_graph(gamma_graph(d, f), f.size(), kuratowski_point(d, f) >= 0);
}

}  // namespace cutspan
