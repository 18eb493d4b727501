#include "pnflow/synth.hpp"

#include <numeric>
#include <string>

#include "pnflow/errors.hpp"

namespace pnflow {

Graph gen_grid(node_t rows, node_t cols) {
    if (rows < 1 || cols < 1)
        throw ValidationError("grid dimensions must be >= 1");
    std::vector<std::pair<node_t, node_t>> edges;
    edges.reserve(static_cast<std::size_t>(rows) * (cols - 1) +
                  static_cast<std::size_t>(cols) * (rows - 1));
    auto id = [cols](node_t r, node_t c) { return r * cols + c; };
    for (node_t r = 0; r < rows; ++r) {
        for (node_t c = 0; c < cols; ++c) {
            if (c + 1 < cols)
                edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows)
                edges.emplace_back(id(r, c), id(r + 1, c));
        }
    }
    return Graph::from_edges(rows * cols, std::move(edges));
}

Dumbbell gen_dumbbell(node_t side_rows, node_t side_cols) {
    if (side_rows < 1 || side_cols < 1)
        throw ValidationError("dumbbell side dimensions must be >= 1");
    const node_t side = side_rows * side_cols;
    auto id = [side_cols](node_t r, node_t c) { return r * side_cols + c; };

    std::vector<std::pair<node_t, node_t>> edges;
    const Graph grid = gen_grid(side_rows, side_cols);
    for (node_t u = 0; u < side; ++u) {
        for (node_t v : grid.neighbors(u)) {
            if (u < v) {
                edges.emplace_back(u, v);
                edges.emplace_back(u + side, v + side);
            }
        }
    }

    Dumbbell d;
    d.bridge_left = id(side_rows / 2, side_cols - 1);
    d.bridge_right = side + id(side_rows / 2, 0);
    edges.emplace_back(d.bridge_left, d.bridge_right);
    d.graph = Graph::from_edges(2 * side, std::move(edges));

    std::vector<node_t> left(side), right(side);
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), side);
    d.left = NodeSet(std::move(left));
    d.right = NodeSet(std::move(right));
    return d;
}

PlantedPartition gen_planted_partition(const std::vector<node_t> &block_sizes,
                                       double p_in, double p_out,
                                       std::uint64_t seed, int max_retries) {
    if (block_sizes.empty())
        throw ValidationError("need at least one block");
    for (node_t s : block_sizes)
        if (s < 1)
            throw ValidationError("block sizes must be >= 1");
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw ValidationError("edge probabilities must lie in [0, 1]");
    if (p_in <= p_out)
        throw ValidationError("p_in must exceed p_out");

    node_t n = 0;
    std::vector<node_t> block_of;
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
        n += block_sizes[b];
        block_of.insert(block_of.end(), block_sizes[b], static_cast<node_t>(b));
    }

    Rng rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<std::pair<node_t, node_t>> edges;
        for (node_t u = 0; u < n; ++u) {
            for (node_t v = u + 1; v < n; ++v) {
                const double p = block_of[u] == block_of[v] ? p_in : p_out;
                if (rng.next_double() < p)
                    edges.emplace_back(u, v);
            }
        }
        Graph g = Graph::from_edges(n, std::move(edges));
        if (!g.is_connected())
            continue;
        PlantedPartition result;
        result.graph = std::move(g);
        node_t start = 0;
        for (node_t s : block_sizes) {
            std::vector<node_t> members(s);
            std::iota(members.begin(), members.end(), start);
            result.blocks.emplace_back(std::move(members));
            start += s;
        }
        return result;
    }
    throw ConnectivityError("planted partition sample disconnected after " +
                            std::to_string(max_retries) + " attempts");
}

} // namespace pnflow
