#pragma once

#include <span>
#include <vector>

#include "pnflow/diffusion.hpp"
#include "pnflow/graph.hpp"

namespace pnflow {

struct SweepResult {
    /// Positive-height nodes, decreasing height, ties by ascending id.
    std::vector<node_t> order;
    NodeSet best_cut;
    double best_conductance = 0;
    /// Conductance of each prefix of `order`.
    std::vector<double> profile;
};

/// Scans prefixes of the decreasing-height order and returns the one with
/// minimum conductance (ties favor the shorter prefix). Nodes with zero
/// height are never included. Total work O(vol(supp(x))).
SweepResult sweep_cut(const Graph &g, const HeightMap &x);

struct ClusterMetrics {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    double jaccard = 0;
    double conductance = 0;
};

/// Set-overlap metrics of `found` against `truth`, plus conductance of
/// `found`. Both sets must be nonempty.
ClusterMetrics evaluate(const Graph &g, const NodeSet &found, const NodeSet &truth);

struct DeltaSearchResult {
    SweepResult sweep;
    double delta = 0;
    DualSolution solution;
    std::size_t feasible_runs = 0;
};

/// Runs the full pipeline for every feasible delta in the grid and keeps
/// the result with minimum conductance; ties favor the smaller delta.
/// Infeasible grid entries are skipped. Throws if the whole grid is
/// infeasible.
DeltaSearchResult delta_search(const Graph &g, const NodeSet &seeds, double p,
                               double eps, std::span<const double> delta_grid,
                               const SolverOptions &opts = {});

} // namespace pnflow
