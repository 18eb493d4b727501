#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pnflow/graph.hpp"

namespace pnflow {

/// A diffusion instance: source mass delta * deg(v) on each seed, sink
/// capacity deg(v) everywhere, routing cost measured in the p-norm. The
/// solver works on the dual, whose smoothing parameter is mu.
struct DiffusionProblem {
    const Graph *graph = nullptr;
    NodeSet seeds;
    double delta = 0;
    double p = 2;
    double q = 2;  // dual norm, p / (p - 1)
    double mu = 0; // 0 on the p == 2 path
    double eps = 1e-6;
    double total_mass = 0; // delta * vol(seeds)

    double source(node_t v) const {
        return seeds.contains(v) ? delta * graph->degree(v) : 0.0;
    }
};

/// Validates parameters and derives q, the source map and the default
/// mu = (eps / |mass|)^{1/q}. Requires p >= 2 and total mass <= vol(G).
DiffusionProblem make_problem(const Graph &g, NodeSet seeds, double delta,
                              double p, double eps,
                              std::optional<double> mu_override = {});

/// Signed flow induced by a height difference:
/// (diff^2 + mu^2)^{q/2 - 1} * diff. Odd and strictly increasing in diff.
double flow_term(double diff, double q, double mu);

using HeightMap = std::unordered_map<node_t, double>;

/// Partial derivative of the smoothed dual objective at node v:
/// sum_{u ~ v} flow_term(x(v) - x(u)) - source(v) + deg(v).
/// Equals deg(v) minus the mass currently held at v.
double gradient(const DiffusionProblem &prob, const HeightMap &x, node_t v);

/// Mass held at v under heights x: deg(v) - gradient(v).
double mass_at(const DiffusionProblem &prob, const HeightMap &x, node_t v);

/// Smoothed dual objective, evaluated in O(vol(supp(x))) work.
double objective(const DiffusionProblem &prob, const HeightMap &x);

struct EpochTrace {
    std::uint64_t epoch;
    std::size_t active;
    double max_excess;
    double objective;
};

struct UpdateEvent {
    node_t node;
    double old_height;
    double new_height;
    double grad_after;
};

struct SolverOptions {
    /// Nodes count as active while their gradient is below -term_tol
    /// (scaled by deg(v) on the q = 2 push path). 0 selects the default
    /// 1e-6 * max(1, delta).
    double term_tol = 0;
    /// Coordinate update budget; 0 selects 1e4 * |mass|.
    std::uint64_t budget = 0;
    std::uint64_t rng_seed = 1;
    /// p > 2 only: take the Lipschitz step mu^{2-q}/deg instead of the
    /// line-search root.
    bool fixed_step = false;
    std::function<void(const EpochTrace &)> trace;
    std::function<void(const UpdateEvent &)> observer;
};

struct DualSolution {
    HeightMap x;    // strictly positive heights only
    HeightMap grad; // maintained gradient on every touched node
    std::uint64_t epochs = 0;
    std::uint64_t pushes = 0;
    bool converged = false;
    double term_tol = 0;

    double height(node_t v) const {
        auto it = x.find(v);
        return it == x.end() ? 0.0 : it->second;
    }
    std::size_t touched() const { return grad.size(); }
    std::vector<node_t> support() const; // sorted
};

/// Push solver for p = q = 2 (no smoothing needed).
DualSolution solve_q2(const DiffusionProblem &prob, const SolverOptions &opts = {});

/// Randomized coordinate descent on the smoothed dual for p > 2. Each
/// epoch permutes the active set and discharges every node in it; by
/// default each step moves to the root of the monotone partial gradient.
DualSolution solve_general(const DiffusionProblem &prob, const SolverOptions &opts = {});

/// Dispatches on p.
DualSolution solve(const DiffusionProblem &prob, const SolverOptions &opts = {});

/// Signed flows on the edges incident to the support, keyed by the fixed
/// (min id, max id) orientation.
class FlowAssignment {
public:
    void set(node_t u, node_t v, double f); // f is flow u -> v
    /// Antisymmetric lookup; edges away from the support carry 0.
    double value(node_t u, node_t v) const;
    std::size_t size() const { return flow_.size(); }

    struct Entry {
        node_t u, v; // u < v
        double f;
    };
    std::vector<Entry> entries() const; // sorted by (u, v)

private:
    std::unordered_map<std::uint64_t, double> flow_;
};

/// Primal flow recovered from a converged dual solution.
FlowAssignment recover_flow(const DiffusionProblem &prob, const DualSolution &sol);

/// Mass vector source + B^T f restricted to nodes with nonzero entries.
HeightMap mass_from_flow(const DiffusionProblem &prob, const FlowAssignment &f);

} // namespace pnflow
