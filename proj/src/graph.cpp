#include "pnflow/graph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "pnflow/errors.hpp"

namespace pnflow {

NodeSet::NodeSet(std::vector<node_t> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool NodeSet::contains(node_t v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

Graph Graph::from_edges(node_t n, std::vector<std::pair<node_t, node_t>> edges) {
    for (auto &[u, v] : edges) {
        if (u >= n || v >= n)
            throw ValidationError("edge endpoint " + std::to_string(std::max(u, v)) +
                                  " out of range [0, " + std::to_string(n) + ")");
        if (u == v)
            throw ValidationError("self-loop at node " + std::to_string(u));
        if (u > v)
            std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto &[u, v] : edges) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::size_t i = 1; i < g.offsets_.size(); ++i)
        g.offsets_[i] += g.offsets_[i - 1];
    g.adjacency_.resize(2 * edges.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto &[u, v] : edges) {
        g.adjacency_[cursor[u]++] = v;
        g.adjacency_[cursor[v]++] = u;
    }
    // Inputs were sorted by (u, v), so each neighbor list comes out sorted.
    g.total_volume_ = g.adjacency_.size();
    return g;
}

bool Graph::has_edge(node_t u, node_t v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_connected() const {
    const node_t n = num_nodes();
    if (n == 0)
        return true;
    return connected_component(*this, 0).size() == n;
}

std::uint64_t Graph::volume(const NodeSet &s) const {
    std::uint64_t vol = 0;
    for (node_t v : s)
        vol += degree(v);
    return vol;
}

std::uint64_t Graph::cut_size(const NodeSet &s) const {
    std::uint64_t crossing = 0;
    for (node_t v : s)
        for (node_t u : neighbors(v))
            if (!s.contains(u))
                ++crossing;
    return crossing;
}

double Graph::conductance(const NodeSet &s) const {
    if (s.empty())
        throw DegenerateSupportError("conductance undefined for the empty set");
    const std::uint64_t vol = volume(s);
    if (vol == total_volume_ && s.size() == num_nodes())
        throw DegenerateSupportError("conductance undefined for the full node set");
    const std::uint64_t denom = std::min(vol, total_volume_ - vol);
    return static_cast<double>(cut_size(s)) / static_cast<double>(denom);
}

LoadResult load_edge_list(std::istream &in, const EdgeListOptions &opts) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::uint64_t u, v;
        if (!(ls >> u)) {
            continue; // blank or comment-only line
        }
        if (!(ls >> v))
            throw ParseError("expected two node ids", lineno);
        std::string rest;
        if (ls >> rest)
            throw ParseError("trailing token '" + rest + "'", lineno);
        if (opts.one_based) {
            if (u == 0 || v == 0)
                throw ParseError("node id 0 in one-based input", lineno);
            --u;
            --v;
        }
        if (u == v)
            throw ValidationError("self-loop at node " + std::to_string(u) +
                                  " on line " + std::to_string(lineno));
        raw.emplace_back(u, v);
    }
    if (raw.empty())
        throw ValidationError("edge list contains no edges");

    // Remap possibly sparse input ids to dense 0..n-1.
    std::vector<std::uint64_t> labels;
    labels.reserve(2 * raw.size());
    for (const auto &[u, v] : raw) {
        labels.push_back(u);
        labels.push_back(v);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    std::map<std::uint64_t, node_t> dense;
    for (node_t i = 0; i < labels.size(); ++i)
        dense[labels[i]] = i;

    std::vector<std::pair<node_t, node_t>> edges;
    edges.reserve(raw.size());
    for (const auto &[u, v] : raw)
        edges.emplace_back(dense[u], dense[v]);

    LoadResult result;
    result.graph = Graph::from_edges(static_cast<node_t>(labels.size()), std::move(edges));
    result.labels = std::move(labels);
    if (opts.require_connected && !result.graph.is_connected())
        throw ConnectivityError("graph is not connected");
    return result;
}

void write_edge_list(std::ostream &out, const Graph &g) {
    for (node_t u = 0; u < g.num_nodes(); ++u)
        for (node_t v : g.neighbors(u))
            if (u < v)
                out << u << ' ' << v << '\n';
}

NodeSet connected_component(const Graph &g, node_t v) {
    std::vector<bool> seen(g.num_nodes(), false);
    std::vector<node_t> stack{v}, members;
    seen[v] = true;
    while (!stack.empty()) {
        node_t u = stack.back();
        stack.pop_back();
        members.push_back(u);
        for (node_t w : g.neighbors(u)) {
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return NodeSet(std::move(members));
}

SubgraphResult induced_subgraph(const Graph &g, const NodeSet &s) {
    SubgraphResult result;
    result.from_original.assign(g.num_nodes(), 0);
    result.to_original.assign(s.begin(), s.end());
    for (node_t i = 0; i < result.to_original.size(); ++i)
        result.from_original[result.to_original[i]] = i;

    std::vector<std::pair<node_t, node_t>> edges;
    for (node_t v : s)
        for (node_t u : g.neighbors(v))
            if (v < u && s.contains(u))
                edges.emplace_back(result.from_original[v], result.from_original[u]);
    result.graph = Graph::from_edges(static_cast<node_t>(s.size()), std::move(edges));
    return result;
}

void write_node_set(std::ostream &out, const NodeSet &s) {
    for (node_t v : s)
        out << v << '\n';
}

NodeSet read_node_set(std::istream &in) {
    std::vector<node_t> members;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::uint64_t v;
        if (!(ls >> v))
            continue;
        std::string rest;
        if (ls >> rest)
            throw ParseError("trailing token '" + rest + "'", lineno);
        members.push_back(static_cast<node_t>(v));
    }
    return NodeSet(std::move(members));
}

} // namespace pnflow
