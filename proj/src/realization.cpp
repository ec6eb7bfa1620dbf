#include "cutspan/realization.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cutspan {

std::vector<std::vector<std::pair<int, int>>> RealizationGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(vertices.size());
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        adj[static_cast<std::size_t>(edges[e].u)].emplace_back(edges[e].v, e);
        adj[static_cast<std::size_t>(edges[e].v)].emplace_back(edges[e].u, e);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

int RealizationGraph::find_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{u, v},
                               [](const RealizationEdge& e, const std::pair<int, int>& key) {
                                   return std::pair{e.u, e.v} < key;
                               });
    if (it == edges.end() || it->u != u || it->v != v) return -1;
    return static_cast<int>(it - edges.begin());
}

namespace {

std::string synthetic_name(const std::set<std::string>& taken, int& counter) {
    for (;;) {
        std::string name = "v" + std::to_string(++counter);
        if (!taken.contains(name)) return name;
    }
}

}  // namespace

RealizationGraph build_block_realization(const Metric& d, const CutSystem& cs) {
    const int n = d.size();
    RealizationGraph g;

    // Vertices: k_0 .. k_{n-1}, then the other maps in increasing order.
    std::vector<int> info_of;  // cutpoint index per vertex
    for (int x = 0; x < n; ++x) {
        const int i = cs.find(kuratowski_map(d, x));
        if (i < 0) throw RealizationCheckFailed("Kuratowski map of " + d.label(x) + " missing from the cut system");
        info_of.push_back(i);
    }
    std::vector<int> rest;
    for (int i = 0; i < static_cast<int>(cs.cutpoints.size()); ++i) {
        if (cs.cutpoints[static_cast<std::size_t>(i)].kuratowski_of < 0) rest.push_back(i);
    }
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
        return cs.cutpoints[static_cast<std::size_t>(a)].map < cs.cutpoints[static_cast<std::size_t>(b)].map;
    });
    info_of.insert(info_of.end(), rest.begin(), rest.end());

    const std::set<std::string> taken(d.labels().begin(), d.labels().end());
    int counter = 0;
    for (int v = 0; v < static_cast<int>(info_of.size()); ++v) {
        const auto& info = cs.cutpoints[static_cast<std::size_t>(info_of[static_cast<std::size_t>(v)])];
        g.vertices.push_back(info.map);
        g.is_cutpoint.push_back(info.classification == CutClass::InteriorCutpoint);
        if (v < n) {
            g.names.push_back(d.label(v));
            g.point_of.push_back(v);
            g.vertex_of.push_back(v);
        } else {
            g.names.push_back(synthetic_name(taken, counter));
            g.point_of.push_back(-1);
        }
    }
    const int m = g.vertex_count();

    std::vector<int> cuts;
    for (int v = 0; v < m; ++v) {
        if (g.is_cutpoint[static_cast<std::size_t>(v)]) cuts.push_back(v);
    }

    // to_point[u][x] = |u - k_x|, to_cut[u][j] = |u - w_j|.
    std::vector<std::vector<Rational>> to_point(static_cast<std::size_t>(m));
    std::vector<std::vector<Rational>> to_cut(static_cast<std::size_t>(m));
    for (int u = 0; u < m; ++u) {
        for (int x = 0; x < n; ++x) to_point[u].push_back(sup_distance(g.vertices[u], g.vertices[x]));
        for (int w : cuts) to_cut[u].push_back(sup_distance(g.vertices[u], g.vertices[w]));
    }

    // Which component of the support graph of w the vertex u looks into:
    // the points x for which w is not on a geodesic from u to k_x.
    std::vector<std::vector<int>> seen_from(cuts.size(), std::vector<int>(static_cast<std::size_t>(m), -1));
    for (std::size_t j = 0; j < cuts.size(); ++j) {
        const int w = cuts[j];
        const auto& info = cs.cutpoints[static_cast<std::size_t>(info_of[static_cast<std::size_t>(w)])];
        std::vector<int> comp(static_cast<std::size_t>(n), -1);
        for (int c = 0; c < static_cast<int>(info.components.size()); ++c) {
            for (int x : info.components[static_cast<std::size_t>(c)]) comp[static_cast<std::size_t>(x)] = c;
        }
        for (int u = 0; u < m; ++u) {
            if (u == w) continue;
            int side = -1;
            for (int x = 0; x < n; ++x) {
                if (!(to_point[u][x] < to_cut[u][j] + to_point[w][x])) continue;
                const int c = comp[static_cast<std::size_t>(x)];
                if (c < 0 || (side >= 0 && c != side)) {
                    throw RealizationCheckFailed("vertex " + g.names[u] + " does not see a single component of " +
                                                 g.names[w]);
                }
                side = c;
            }
            if (side < 0) throw RealizationCheckFailed("vertex " + g.names[u] + " sees nothing past " + g.names[w]);
            seen_from[j][u] = side;
        }
    }

    for (int u = 0; u < m; ++u) {
        for (int v = u + 1; v < m; ++v) {
            bool separated = false;
            for (std::size_t j = 0; j < cuts.size() && !separated; ++j) {
                if (cuts[j] == u || cuts[j] == v) continue;
                separated = seen_from[j][u] != seen_from[j][v];
            }
            if (!separated) g.edges.push_back({u, v, sup_distance(g.vertices[u], g.vertices[v])});
        }
    }

    if (auto problem = check_block_realization(d, g); !problem.empty()) throw RealizationCheckFailed(problem);
    return g;
}

BlockStructure blocks_and_cut_vertices(const RealizationGraph& g) {
    const int m = g.vertex_count();
    const auto adj = g.adjacency();
    std::vector<int> order(static_cast<std::size_t>(m), -1);
    std::vector<int> low(static_cast<std::size_t>(m), 0);
    std::vector<bool> is_cut(static_cast<std::size_t>(m), false);
    std::vector<std::pair<int, int>> edge_stack;
    BlockStructure out;
    int clock = 0;

    // Iterative Hopcroft-Tarjan; frames hold (vertex, parent, next neighbour).
    struct Frame {
        int v, parent;
        std::size_t next;
    };
    for (int root = 0; root < m; ++root) {
        if (order[root] >= 0) continue;
        if (adj[root].empty()) {
            out.blocks.push_back({root});
            continue;
        }
        int root_children = 0;
        std::vector<Frame> stack{{root, -1, 0}};
        order[root] = low[root] = clock++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < adj[f.v].size()) {
                const int w = adj[f.v][f.next++].first;
                if (order[w] < 0) {
                    edge_stack.emplace_back(f.v, w);
                    order[w] = low[w] = clock++;
                    if (f.v == root) ++root_children;
                    stack.push_back({w, f.v, 0});
                } else if (w != f.parent && order[w] < order[f.v]) {
                    edge_stack.emplace_back(f.v, w);
                    low[f.v] = std::min(low[f.v], order[w]);
                }
                continue;
            }
            const int v = f.v;
            const int parent = f.parent;
            stack.pop_back();
            if (parent < 0) continue;
            low[parent] = std::min(low[parent], low[v]);
            if (low[v] >= order[parent]) {
                if (parent != root) is_cut[parent] = true;
                std::vector<int> block;
                for (;;) {
                    auto [a, b] = edge_stack.back();
                    edge_stack.pop_back();
                    block.push_back(a);
                    block.push_back(b);
                    if (a == parent && b == v) break;
                }
                std::sort(block.begin(), block.end());
                block.erase(std::unique(block.begin(), block.end()), block.end());
                out.blocks.push_back(std::move(block));
            }
        }
        if (root_children >= 2) is_cut[root] = true;
    }
    std::sort(out.blocks.begin(), out.blocks.end());
    for (int v = 0; v < m; ++v) {
        if (is_cut[v]) out.cut_vertices.push_back(v);
    }
    return out;
}

GraphDistances graph_distances(const RealizationGraph& g) {
    const int m = g.vertex_count();
    GraphDistances out;
    out.size = m;
    out.dist.assign(static_cast<std::size_t>(m * m), Rational());
    out.reachable.assign(static_cast<std::size_t>(m * m), false);
    auto at = [m](int u, int v) { return static_cast<std::size_t>(u * m + v); };
    for (int v = 0; v < m; ++v) out.reachable[at(v, v)] = true;
    for (const auto& e : g.edges) {
        out.dist[at(e.u, e.v)] = out.dist[at(e.v, e.u)] = e.weight;
        out.reachable[at(e.u, e.v)] = out.reachable[at(e.v, e.u)] = true;
    }
    Rational via;
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < m; ++i) {
            if (!out.reachable[at(i, k)]) continue;
            for (int j = 0; j < m; ++j) {
                if (!out.reachable[at(k, j)]) continue;
                via = out.dist[at(i, k)] + out.dist[at(k, j)];
                if (!out.reachable[at(i, j)] || via < out.dist[at(i, j)]) {
                    out.dist[at(i, j)] = via;
                    out.reachable[at(i, j)] = true;
                }
            }
        }
    }
    return out;
}

std::string check_block_realization(const Metric& d, const RealizationGraph& g) {
    const int n = d.size();
    const int m = g.vertex_count();
    for (const auto& e : g.edges) {
        if (e.weight.sign() <= 0) return "edge " + g.names[e.u] + "-" + g.names[e.v] + " has non-positive weight";
    }
    const auto dist = graph_distances(g);
    for (int v = 1; v < m; ++v) {
        if (!dist.connected(0, v)) return "vertex " + g.names[v] + " is not connected to " + g.names[0];
    }
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            const int u = g.vertex_of[x];
            const int v = g.vertex_of[y];
            if (dist(u, v) != d(x, y)) {
                return "graph distance " + dist(u, v).str() + " between " + d.label(x) + " and " + d.label(y) +
                       " differs from " + d(x, y).str();
            }
        }
    }
    const auto blocks = blocks_and_cut_vertices(g);
    for (const auto& block : blocks.blocks) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            for (std::size_t j = i + 1; j < block.size(); ++j) {
                const int e = g.find_edge(block[i], block[j]);
                if (e < 0) return "block containing " + g.names[block[i]] + " is not a clique";
                if (g.edges[static_cast<std::size_t>(e)].weight != dist(block[i], block[j])) {
                    return "edge " + g.names[block[i]] + "-" + g.names[block[j]] + " is not a shortest path";
                }
            }
        }
    }
    std::vector<bool> is_cut(static_cast<std::size_t>(m), false);
    for (int v : blocks.cut_vertices) is_cut[v] = true;
    const auto adj = g.adjacency();
    for (int v = 0; v < m; ++v) {
        if (g.point_of[v] < 0 && (adj[v].size() < 3 || !is_cut[v])) {
            return "unlabelled vertex " + g.names[v] + " has degree " + std::to_string(adj[v].size()) +
                   (is_cut[v] ? "" : " and is not a cut vertex");
        }
        if (is_cut[v] != g.is_cutpoint[v]) {
            return "vertex " + g.names[v] + (is_cut[v] ? " is a cut vertex but not an interior cutpoint"
                                                       : " is an interior cutpoint but not a cut vertex");
        }
    }
    return {};
}

namespace {

/// Shortest-path walks between labelled vertices, attributing each edge to
/// the block that contains it.
class PathTracer {
public:
    PathTracer(const RealizationGraph& g, const std::vector<std::vector<int>>& blocks)
        : g_(g), adj_(g.adjacency()), dist_(graph_distances(g)), edge_block_(g.edges.size(), -1) {
        for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
            const auto& block = blocks[static_cast<std::size_t>(b)];
            for (std::size_t i = 0; i < block.size(); ++i) {
                for (std::size_t j = i + 1; j < block.size(); ++j) {
                    const int e = g.find_edge(block[i], block[j]);
                    if (e >= 0) edge_block_[static_cast<std::size_t>(e)] = b;
                }
            }
        }
        block_count_ = static_cast<int>(blocks.size());
    }

    /// Per-block weight along the lexicographically least shortest path.
    std::vector<Rational> canonical(int s, int t) const {
        std::vector<Rational> per_block(static_cast<std::size_t>(block_count_));
        while (s != t) {
            for (auto [v, e] : adj_[s]) {
                const auto& w = g_.edges[static_cast<std::size_t>(e)].weight;
                if (w + dist_(v, t) == dist_(s, t)) {
                    per_block[static_cast<std::size_t>(edge_block_[static_cast<std::size_t>(e)])] += w;
                    s = v;
                    break;
                }
            }
        }
        return per_block;
    }

    /// Empty if every shortest path from s to t splits over the blocks like
    /// `expected`; otherwise the vertex sequence of a disagreeing path.
    std::vector<int> disagreeing_path(int s, int t, const std::vector<Rational>& expected) const {
        std::vector<int> path{s};
        std::vector<Rational> acc(static_cast<std::size_t>(block_count_));
        return walk(s, t, path, acc, expected) ? std::vector<int>{} : path;
    }

private:
    // True if all continuations agree; leaves the failing path in `path`.
    bool walk(int s, int t, std::vector<int>& path, std::vector<Rational>& acc,
              const std::vector<Rational>& expected) const {
        if (s == t) return acc == expected;
        for (auto [v, e] : adj_[s]) {
            const auto& w = g_.edges[static_cast<std::size_t>(e)].weight;
            if (w + dist_(v, t) != dist_(s, t)) continue;
            auto& slot = acc[static_cast<std::size_t>(edge_block_[static_cast<std::size_t>(e)])];
            slot += w;
            path.push_back(v);
            if (!walk(v, t, path, acc, expected)) return false;
            path.pop_back();
            slot -= w;
        }
        return true;
    }

    const RealizationGraph& g_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    GraphDistances dist_;
    std::vector<int> edge_block_;
    int block_count_ = 0;
};

std::string render_path(const RealizationGraph& g, const std::vector<int>& path) {
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "-" : "") + g.names[static_cast<std::size_t>(path[i])];
    return s;
}

using Table = std::vector<std::vector<Rational>>;

/// One table per block, filled from canonical paths and cross-checked
/// against all shortest paths on small instances.
std::vector<Table> block_tables(const Metric& d, const RealizationGraph& g, const std::vector<std::vector<int>>& blocks,
                                const BlockMetricOptions& options) {
    const int n = d.size();
    const PathTracer tracer(g, blocks);
    std::vector<Table> tables(blocks.size(), Table(static_cast<std::size_t>(n), std::vector<Rational>(n)));
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            const int s = g.vertex_of[x];
            const int t = g.vertex_of[y];
            const auto per_block = tracer.canonical(s, t);
            if (n <= options.exhaustive_paths_up_to) {
                if (auto bad = tracer.disagreeing_path(s, t, per_block); !bad.empty()) {
                    throw RealizationCheckFailed("block metrics depend on the shortest path between " + d.label(x) +
                                                 " and " + d.label(y) + ": " + render_path(g, bad));
                }
            }
            for (std::size_t b = 0; b < blocks.size(); ++b) tables[b][x][y] = tables[b][y][x] = per_block[b];
        }
    }
    return tables;
}

}  // namespace

std::vector<std::vector<Rational>> block_metric(const Metric& d, const RealizationGraph& g, std::span<const int> block,
                                                const BlockMetricOptions& options) {
    std::vector<int> sorted(block.begin(), block.end());
    std::sort(sorted.begin(), sorted.end());
    const auto structure = blocks_and_cut_vertices(g);
    const auto it = std::find(structure.blocks.begin(), structure.blocks.end(), sorted);
    if (it == structure.blocks.end()) throw std::invalid_argument("vertex set is not a block of the realization");
    // Only the requested block's table is kept, but all blocks are needed to
    // attribute edges.
    return block_tables(d, g, structure.blocks, options)[static_cast<std::size_t>(it - structure.blocks.begin())];
}

BlockDecomposition decompose(const Metric& d, const BlockMetricOptions& options) {
    return decompose(d, compute_cut_points(d), options);
}

BlockDecomposition decompose(const Metric& d, const CutSystem& cs, const BlockMetricOptions& options) {
    BlockDecomposition out;
    out.graph = build_block_realization(d, cs);
    auto structure = blocks_and_cut_vertices(out.graph);
    out.blocks = std::move(structure.blocks);
    out.cut_vertices = std::move(structure.cut_vertices);
    out.metrics = block_tables(d, out.graph, out.blocks, options);
    for (const auto& b : out.blocks) out.bridge.push_back(b.size() == 2);

    const int n = d.size();
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            Rational total;
            for (const auto& t : out.metrics) total += t[x][y];
            if (total != d(x, y)) {
                throw RealizationCheckFailed("block metrics sum to " + total.str() + " between " + d.label(x) +
                                             " and " + d.label(y) + ", expected " + d(x, y).str());
            }
        }
    }
    return out;
}

}  // namespace cutspan
