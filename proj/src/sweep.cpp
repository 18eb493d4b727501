#include "pnflow/sweep.hpp"

#include <algorithm>
#include <unordered_set>

#include "pnflow/errors.hpp"

namespace pnflow {

SweepResult sweep_cut(const Graph &g, const HeightMap &x) {
    SweepResult result;
    for (const auto &[v, h] : x)
        if (h > 0)
            result.order.push_back(v);
    if (result.order.empty())
        throw DegenerateSupportError("sweep cut on empty support");
    if (result.order.size() == g.num_nodes())
        throw DegenerateSupportError("sweep cut support covers the whole graph");

    std::sort(result.order.begin(), result.order.end(),
              [&x](node_t a, node_t b) {
                  const double ha = x.at(a), hb = x.at(b);
                  return ha != hb ? ha > hb : a < b;
              });

    std::unordered_set<node_t> in_prefix;
    std::uint64_t cut = 0, vol = 0;
    const std::uint64_t total = g.total_volume();
    std::size_t best_prefix = 0;
    result.profile.reserve(result.order.size());
    for (std::size_t i = 0; i < result.order.size(); ++i) {
        const node_t v = result.order[i];
        std::uint64_t internal = 0;
        for (node_t u : g.neighbors(v))
            if (in_prefix.contains(u))
                ++internal;
        cut += g.degree(v) - 2 * internal;
        vol += g.degree(v);
        in_prefix.insert(v);
        const double phi = static_cast<double>(cut) /
                           static_cast<double>(std::min(vol, total - vol));
        result.profile.push_back(phi);
        if (phi < result.profile[best_prefix])
            best_prefix = i;
    }

    result.best_conductance = result.profile[best_prefix];
    result.best_cut = NodeSet(std::vector<node_t>(
        result.order.begin(), result.order.begin() + best_prefix + 1));
    if (2 * g.volume(result.best_cut) > total)
        throw Error("sweep cut selected the heavy side of the graph");
    return result;
}

ClusterMetrics evaluate(const Graph &g, const NodeSet &found, const NodeSet &truth) {
    if (found.empty() || truth.empty())
        throw ValidationError("evaluate requires nonempty sets");
    std::size_t common = 0;
    for (node_t v : found)
        if (truth.contains(v))
            ++common;
    ClusterMetrics m;
    m.precision = static_cast<double>(common) / static_cast<double>(found.size());
    m.recall = static_cast<double>(common) / static_cast<double>(truth.size());
    m.f1 = (m.precision + m.recall) > 0
               ? 2 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    m.jaccard = static_cast<double>(common) /
                static_cast<double>(found.size() + truth.size() - common);
    m.conductance = g.conductance(found);
    return m;
}

DeltaSearchResult delta_search(const Graph &g, const NodeSet &seeds, double p,
                               double eps, std::span<const double> delta_grid,
                               const SolverOptions &opts) {
    DeltaSearchResult best;
    bool have_best = false;
    for (double delta : delta_grid) {
        const double mass = delta * static_cast<double>(g.volume(seeds));
        if (!(delta > 0) || mass > static_cast<double>(g.total_volume()))
            continue; // infeasible grid entry
        DiffusionProblem prob = make_problem(g, seeds, delta, p, eps);
        DualSolution sol = solve(prob, opts);
        if (sol.x.empty())
            continue; // no excess at this delta, nothing to sweep
        SweepResult sweep = sweep_cut(g, sol.x);
        if (!have_best || sweep.best_conductance < best.sweep.best_conductance) {
            best.sweep = std::move(sweep);
            best.delta = delta;
            best.solution = std::move(sol);
            have_best = true;
        }
        ++best.feasible_runs;
    }
    if (!have_best)
        throw InfeasibleMassError("no delta in the grid produced a cluster");
    return best;
}

} // namespace pnflow
