#include "pnflow/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pnflow/errors.hpp"
#include "pnflow/rng.hpp"

namespace pnflow {

DiffusionProblem make_problem(const Graph &g, NodeSet seeds, double delta,
                              double p, double eps,
                              std::optional<double> mu_override) {
    if (seeds.empty())
        throw ValidationError("seed set is empty");
    for (node_t s : seeds)
        if (s >= g.num_nodes())
            throw ValidationError("seed " + std::to_string(s) + " out of range");
    if (!(delta > 0))
        throw ValidationError("delta must be positive, got " + std::to_string(delta));
    if (!(p >= 2))
        throw UnsupportedExponentError("p must be >= 2, got " + std::to_string(p));
    if (!(eps > 0))
        throw ValidationError("eps must be positive, got " + std::to_string(eps));

    DiffusionProblem prob;
    prob.graph = &g;
    prob.delta = delta;
    prob.p = p;
    prob.q = p / (p - 1.0);
    prob.eps = eps;
    prob.total_mass = delta * static_cast<double>(g.volume(seeds));
    prob.seeds = std::move(seeds);
    if (prob.total_mass > static_cast<double>(g.total_volume()))
        throw InfeasibleMassError("total mass " + std::to_string(prob.total_mass) +
                                  " exceeds graph volume " +
                                  std::to_string(g.total_volume()));
    if (p == 2.0) {
        prob.mu = 0.0; // push path, no smoothing
    } else if (mu_override) {
        if (!(*mu_override > 0))
            throw ValidationError("mu must be positive for p > 2");
        prob.mu = *mu_override;
    } else {
        prob.mu = std::pow(eps / prob.total_mass, 1.0 / prob.q);
    }
    return prob;
}

double flow_term(double diff, double q, double mu) {
    if (q == 2.0)
        return diff;
    return std::pow(diff * diff + mu * mu, q / 2.0 - 1.0) * diff;
}

double gradient(const DiffusionProblem &prob, const HeightMap &x, node_t v) {
    const Graph &g = *prob.graph;
    auto height = [&x](node_t u) {
        auto it = x.find(u);
        return it == x.end() ? 0.0 : it->second;
    };
    const double xv = height(v);
    double sum = 0;
    for (node_t u : g.neighbors(v))
        sum += flow_term(xv - height(u), prob.q, prob.mu);
    return sum - prob.source(v) + static_cast<double>(g.degree(v));
}

double mass_at(const DiffusionProblem &prob, const HeightMap &x, node_t v) {
    return static_cast<double>(prob.graph->degree(v)) - gradient(prob, x, v);
}

double objective(const DiffusionProblem &prob, const HeightMap &x) {
    const Graph &g = *prob.graph;
    const double q = prob.q, mu = prob.mu;
    const double edge_floor = std::pow(mu * mu, q / 2.0); // mu^q
    auto height = [&x](node_t u) {
        auto it = x.find(u);
        return it == x.end() ? 0.0 : it->second;
    };
    // Every edge contributes mu^q / q at rest; only edges incident to the
    // support deviate from that.
    double total = static_cast<double>(g.num_edges()) * edge_floor / q;
    for (const auto &[v, xv] : x) {
        for (node_t u : g.neighbors(v)) {
            if (v < u || x.find(u) == x.end()) {
                const double d = xv - height(u);
                total += (std::pow(d * d + mu * mu, q / 2.0) - edge_floor) / q;
            }
        }
        total -= xv * (prob.source(v) - static_cast<double>(g.degree(v)));
    }
    return total;
}

std::vector<node_t> DualSolution::support() const {
    std::vector<node_t> nodes;
    nodes.reserve(x.size());
    for (const auto &[v, h] : x)
        if (h > 0)
            nodes.push_back(v);
    std::sort(nodes.begin(), nodes.end());
    return nodes;
}

namespace {

struct SolverState {
    const DiffusionProblem &prob;
    const Graph &g;
    DualSolution sol;
    double term_tol;
    std::uint64_t budget;
    const SolverOptions &opts;

    SolverState(const DiffusionProblem &prob_, const SolverOptions &opts_)
        : prob(prob_), g(*prob_.graph), opts(opts_) {
        term_tol = opts.term_tol > 0 ? opts.term_tol
                                     : 1e-6 * std::max(1.0, prob.delta);
        budget = opts.budget > 0
                     ? opts.budget
                     : static_cast<std::uint64_t>(1e4 * std::max(1.0, prob.total_mass));
        sol.term_tol = term_tol;
        for (node_t s : prob.seeds)
            sol.grad[s] = static_cast<double>(g.degree(s)) - prob.source(s);
    }

    double grad_of(node_t v) {
        auto it = sol.grad.find(v);
        if (it != sol.grad.end())
            return it->second;
        // Untouched nodes have height 0, zero-height neighbors and no
        // source mass, so their gradient is exactly deg(v).
        return static_cast<double>(g.degree(v));
    }

    // Raises x(v) by t and maintains gradients on v and its neighbors.
    void apply_step(node_t v, double t) {
        const double old_xv = sol.height(v);
        const double new_xv = old_xv + t;
        for (node_t u : g.neighbors(v)) {
            const double xu = sol.height(u);
            const double delta_term = flow_term(xu - new_xv, prob.q, prob.mu) -
                                      flow_term(xu - old_xv, prob.q, prob.mu);
            auto [it, inserted] = sol.grad.try_emplace(u, static_cast<double>(g.degree(u)));
            it->second += delta_term;
        }
        sol.x[v] = new_xv;
        const double gv = gradient(prob, sol.x, v);
        sol.grad[v] = gv;
        ++sol.pushes;
        if (opts.observer)
            opts.observer(UpdateEvent{v, old_xv, new_xv, gv});
    }

    // Root of t -> grad(v) at height x(v) + t, found by doubling then
    // bisection. Returns the lower bracket end so the gradient at the new
    // height stays <= 0.
    double line_search_step(node_t v) {
        const double gv = sol.grad.at(v);
        const double xv = sol.height(v);
        auto partial = [&](double t) {
            double sum = 0;
            for (node_t u : g.neighbors(v))
                sum += flow_term(xv + t - sol.height(u), prob.q, prob.mu);
            return sum - prob.source(v) + static_cast<double>(g.degree(v));
        };
        const double lipschitz_step =
            -gv * std::pow(prob.mu, 2.0 - prob.q) / static_cast<double>(g.degree(v));
        double lo = 0.0, hi = lipschitz_step;
        int doublings = 0;
        while (partial(hi) < 0) {
            lo = hi;
            hi *= 2;
            if (++doublings > 200)
                throw Error("line search failed to bracket the gradient root at node " +
                            std::to_string(v));
        }
        while (hi - lo > 1e-12 * hi) {
            const double mid = 0.5 * (lo + hi);
            if (partial(mid) < 0)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    void check_support_volume() const {
        std::uint64_t vol = 0;
        for (const auto &[v, h] : sol.x)
            if (h > 0)
                vol += g.degree(v);
        if (static_cast<double>(vol) > prob.total_mass)
            throw Error("support volume " + std::to_string(vol) +
                        " exceeds total mass " + std::to_string(prob.total_mass));
    }

    void emit_trace() {
        if (!opts.trace)
            return;
        EpochTrace t{sol.epochs, 0, 0.0, objective(prob, sol.x)};
        for (const auto &[v, gv] : sol.grad) {
            if (gv < 0) {
                ++t.active;
                t.max_excess = std::max(t.max_excess, -gv);
            }
        }
        opts.trace(t);
    }

    // Shared epoch loop; `active_tol(v)` gives the gradient threshold and
    // `step(v)` the height increment for one coordinate update.
    template <typename TolFn, typename StepFn>
    DualSolution run(TolFn active_tol, StepFn step) {
        std::vector<node_t> active;
        Rng rng(opts.rng_seed);
        for (;;) {
            active.clear();
            for (const auto &[v, gv] : sol.grad)
                if (gv < -active_tol(v))
                    active.push_back(v);
            // Hash map order is not part of the determinism contract.
            std::sort(active.begin(), active.end());
            emit_trace();
            if (active.empty()) {
                sol.converged = true;
                return std::move(sol);
            }
            rng.shuffle(active);
            for (node_t v : active) {
                if (sol.grad.at(v) >= -active_tol(v))
                    continue;
                apply_step(v, step(v));
                if (sol.pushes >= budget)
                    return std::move(sol); // partial, converged stays false
            }
            ++sol.epochs;
            check_support_volume();
        }
    }
};

} // namespace

DualSolution solve_q2(const DiffusionProblem &prob, const SolverOptions &opts) {
    if (prob.p != 2.0)
        throw UnsupportedExponentError("solve_q2 requires p = 2");
    SolverState st(prob, opts);
    // Excess threshold scales with the sink capacity deg(v).
    auto tol = [&st](node_t v) { return st.term_tol * st.g.degree(v); };
    // grad is linear in t with slope deg(v), so the exact root is ex/deg.
    auto step = [&st](node_t v) {
        return -st.sol.grad.at(v) / static_cast<double>(st.g.degree(v));
    };
    return st.run(tol, step);
}

DualSolution solve_general(const DiffusionProblem &prob, const SolverOptions &opts) {
    if (!(prob.p > 2.0))
        throw UnsupportedExponentError("solve_general requires p > 2");
    if (!(prob.mu > 0))
        throw ValidationError("solve_general requires mu > 0");
    SolverState st(prob, opts);
    auto tol = [&st](node_t) { return st.term_tol; };
    auto step = [&st, &opts](node_t v) {
        if (opts.fixed_step)
            return -st.sol.grad.at(v) * std::pow(st.prob.mu, 2.0 - st.prob.q) /
                   static_cast<double>(st.g.degree(v));
        return st.line_search_step(v);
    };
    return st.run(tol, step);
}

DualSolution solve(const DiffusionProblem &prob, const SolverOptions &opts) {
    return prob.p == 2.0 ? solve_q2(prob, opts) : solve_general(prob, opts);
}

namespace {
std::uint64_t edge_key(node_t u, node_t v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}
} // namespace

void FlowAssignment::set(node_t u, node_t v, double f) {
    if (u > v) {
        std::swap(u, v);
        f = -f;
    }
    flow_[edge_key(u, v)] = f;
}

double FlowAssignment::value(node_t u, node_t v) const {
    const double sign = u < v ? 1.0 : -1.0;
    auto it = flow_.find(u < v ? edge_key(u, v) : edge_key(v, u));
    return it == flow_.end() ? 0.0 : sign * it->second;
}

std::vector<FlowAssignment::Entry> FlowAssignment::entries() const {
    std::vector<Entry> out;
    out.reserve(flow_.size());
    for (const auto &[key, f] : flow_)
        out.push_back({static_cast<node_t>(key >> 32),
                       static_cast<node_t>(key & 0xffffffffu), f});
    std::sort(out.begin(), out.end(),
              [](const Entry &a, const Entry &b) {
                  return std::tie(a.u, a.v) < std::tie(b.u, b.v);
              });
    return out;
}

FlowAssignment recover_flow(const DiffusionProblem &prob, const DualSolution &sol) {
    if (!sol.converged)
        throw StaleSolutionError("flow recovery requires a converged solution");
    const Graph &g = *prob.graph;
    FlowAssignment flow;
    for (const auto &[v, xv] : sol.x) {
        if (xv <= 0)
            continue;
        for (node_t u : g.neighbors(v))
            flow.set(v, u, flow_term(xv - sol.height(u), prob.q, prob.mu));
    }
    return flow;
}

HeightMap mass_from_flow(const DiffusionProblem &prob, const FlowAssignment &f) {
    HeightMap mass;
    for (node_t s : prob.seeds)
        mass[s] += prob.source(s);
    for (const auto &e : f.entries()) {
        mass[e.v] += e.f;
        mass[e.u] -= e.f;
    }
    return mass;
}

} // namespace pnflow
