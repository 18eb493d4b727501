#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace pnflow {

using node_t = std::uint32_t;

/// Sorted set of node ids with O(log n) membership queries.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::vector<node_t> members);

    bool contains(node_t v) const;
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }

    const std::vector<node_t> &members() const { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool operator==(const NodeSet &) const = default;

private:
    std::vector<node_t> members_; // sorted, unique
};

/// Immutable undirected graph in compressed adjacency form.
///
/// Neighbor lists are sorted; there are no self-loops or parallel edges.
/// Each undirected edge carries the fixed orientation (min id, max id),
/// which is the orientation used for signed flow values.
class Graph {
public:
    Graph() = default; // empty graph, useful as a placeholder

    /// Builds a graph from an undirected edge list over ids in [0, n).
    /// Duplicate pairs (in either order) are merged; self-loops are rejected.
    static Graph from_edges(node_t n, std::vector<std::pair<node_t, node_t>> edges);

    node_t num_nodes() const {
        return offsets_.empty() ? 0 : static_cast<node_t>(offsets_.size() - 1);
    }
    std::size_t num_edges() const { return total_volume_ / 2; }
    std::uint64_t total_volume() const { return total_volume_; }

    node_t degree(node_t v) const {
        return static_cast<node_t>(offsets_[v + 1] - offsets_[v]);
    }

    std::span<const node_t> neighbors(node_t v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    bool has_edge(node_t u, node_t v) const;
    bool is_connected() const;

    std::uint64_t volume(const NodeSet &s) const;
    std::uint64_t cut_size(const NodeSet &s) const;

    /// cut_size(s) / min(vol(s), vol(V \ s)). Throws DegenerateSupportError
    /// if s is empty or s = V.
    double conductance(const NodeSet &s) const;

private:
    std::vector<std::size_t> offsets_;
    std::vector<node_t> adjacency_;
    std::uint64_t total_volume_ = 0;
};

struct EdgeListOptions {
    bool one_based = false;
    /// When false the connectivity check is skipped; the caller is expected
    /// to restrict to a component afterwards.
    bool require_connected = true;
};

struct LoadResult {
    Graph graph;
    /// Dense id -> original input id. Identity when input ids were already
    /// dense 0..n-1.
    std::vector<std::uint64_t> labels;
};

/// Parses a whitespace separated edge list ("u v" per line, '#' comments).
LoadResult load_edge_list(std::istream &in, const EdgeListOptions &opts = {});

/// Writes the graph back as an edge list over dense ids, one "u v" line per
/// edge with u < v. load(write(g)) reproduces g exactly.
void write_edge_list(std::ostream &out, const Graph &g);

/// Nodes of the connected component containing v.
NodeSet connected_component(const Graph &g, node_t v);

struct SubgraphResult {
    Graph graph;
    std::vector<node_t> to_original;   // new id -> old id
    std::vector<node_t> from_original; // old id -> new id (undefined outside s)
};

/// Subgraph induced on s, with nodes renumbered densely.
SubgraphResult induced_subgraph(const Graph &g, const NodeSet &s);

void write_node_set(std::ostream &out, const NodeSet &s);
NodeSet read_node_set(std::istream &in);

} // namespace pnflow
