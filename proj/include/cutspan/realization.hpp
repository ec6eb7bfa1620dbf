#pragma once

#include <span>
#include <string>
#include <vector>

#include "cutspan/engine.hpp"
#include "cutspan/metric.hpp"
#include "cutspan/tight_span.hpp"

namespace cutspan {

struct RealizationEdge {
    int u = 0;  ///< u < v
    int v = 0;
    Rational weight;
};

/// Edge-weighted graph whose vertices are the maps of Cut*(D). Vertex i is
/// the Kuratowski map of point i for i < n; the remaining vertices follow in
/// increasing map order and carry synthetic names.
struct RealizationGraph {
    std::vector<PointMap> vertices;
    std::vector<std::string> names;
    std::vector<int> point_of;  ///< labelled point of each vertex, or -1
    std::vector<int> vertex_of;  ///< vertex of each point
    std::vector<bool> is_cutpoint;  ///< vertex is an interior cutpoint of D
    std::vector<RealizationEdge> edges;  ///< sorted by (u, v)

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    /// Neighbours of each vertex as (neighbour, edge index), ascending.
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;
    /// Index of edge {u, v}, or -1.
    int find_edge(int u, int v) const;
};

/// Builds the realization from the cut system of d. Two vertices are joined
/// unless some interior cutpoint other than themselves separates them; the
/// edge weight is their sup-norm distance. Throws RealizationCheckFailed if
/// the result is not an exact block realization of d.
RealizationGraph build_block_realization(const Metric& d, const CutSystem& cs);

/// Description of the first violated block-realization property of g with
/// respect to d, or an empty string: connectivity, positive weights, exact
/// label distances, clique blocks with geodesic edges, unlabelled vertices
/// of degree >= 3 that are cut vertices, and cut vertices exactly at the
/// interior cutpoints.
std::string check_block_realization(const Metric& d, const RealizationGraph& g);

struct BlockStructure {
    std::vector<std::vector<int>> blocks;  ///< sorted vertex lists, in lexicographic order
    std::vector<int> cut_vertices;  ///< ascending
};

/// Biconnected components and articulation points. Expects a connected graph.
BlockStructure blocks_and_cut_vertices(const RealizationGraph& g);

/// All-pairs shortest-path distances. Unreachable pairs are reported through
/// `reachable`.
struct GraphDistances {
    int size = 0;
    std::vector<Rational> dist;
    std::vector<bool> reachable;
    const Rational& operator()(int u, int v) const { return dist[static_cast<std::size_t>(u * size + v)]; }
    bool connected(int u, int v) const { return reachable[static_cast<std::size_t>(u * size + v)]; }
};

GraphDistances graph_distances(const RealizationGraph& g);

struct BlockMetricOptions {
    /// Up to this many points, every shortest path is enumerated and must
    /// give the same value as the canonical one.
    int exhaustive_paths_up_to = 8;
};

/// D_B on the points of d: for each pair, the weight of the in-block edges
/// on the lexicographically least shortest path between their vertices.
/// Throws RealizationCheckFailed if two shortest paths disagree.
std::vector<std::vector<Rational>> block_metric(const Metric& d, const RealizationGraph& g, std::span<const int> block,
                                                const BlockMetricOptions& options = {});

struct BlockDecomposition {
    RealizationGraph graph;
    std::vector<std::vector<int>> blocks;
    std::vector<int> cut_vertices;
    std::vector<std::vector<std::vector<Rational>>> metrics;  ///< one n x n table per block
    std::vector<bool> bridge;  ///< block is a single edge
};

/// Blocks of the realization and their metrics, which sum to d. Throws
/// RealizationCheckFailed if they do not.
BlockDecomposition decompose(const Metric& d, const BlockMetricOptions& options = {});
BlockDecomposition decompose(const Metric& d, const CutSystem& cs, const BlockMetricOptions& options = {});

}  // namespace cutspan
