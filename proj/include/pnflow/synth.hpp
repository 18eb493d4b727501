#pragma once

#include <cstdint>
#include <vector>

#include "pnflow/graph.hpp"
#include "pnflow/rng.hpp"

namespace pnflow {

/// rows x cols lattice with 4-neighbor connectivity. Node (r, c) has id
/// r * cols + c.
Graph gen_grid(node_t rows, node_t cols);

struct Dumbbell {
    Graph graph;
    NodeSet left;  // ids [0, rows*cols)
    NodeSet right; // ids [rows*cols, 2*rows*cols)
    node_t bridge_left;
    node_t bridge_right;
};

/// Two rows x cols grids joined by a single bridge edge between the middle
/// of the left grid's last column and the middle of the right grid's first
/// column. The side partition has cut size exactly 1.
Dumbbell gen_dumbbell(node_t side_rows, node_t side_cols);

struct PlantedPartition {
    Graph graph;
    std::vector<NodeSet> blocks;
};

/// Planted partition model: each intra-block pair is an edge with
/// probability p_in, each inter-block pair with p_out < p_in. Draws are
/// repeated (continuing the same generator stream) until the sample is
/// connected; gives up after max_retries attempts.
///
/// The generator stream is SplitMix64 (see rng.hpp), so identical inputs
/// produce bit-identical graphs on every platform.
PlantedPartition gen_planted_partition(const std::vector<node_t> &block_sizes,
                                       double p_in, double p_out,
                                       std::uint64_t seed, int max_retries = 50);

} // namespace pnflow
