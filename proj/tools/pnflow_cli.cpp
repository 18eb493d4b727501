// pnflow command-line front end.
//
// Commands:
//   gen grid|dumbbell|planted   write synthetic graphs + ground-truth sets
//   diffuse                     run diffusion + sweep cut on a graph
//   sweep                       sweep cut over precomputed heights
//   eval                        score a cluster file against ground truth
//   experiment                  repeated seeded trials with summary rows
//
// Exit codes: 0 ok, 2 parse/validation, 3 infeasible, 4 budget exhausted,
// 5 io. Node ids in all input and output files are in the original id
// space of the graph file; the dense internal ids never leak.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pnflow/diffusion.hpp"
#include "pnflow/errors.hpp"
#include "pnflow/graph.hpp"
#include "pnflow/rng.hpp"
#include "pnflow/sweep.hpp"
#include "pnflow/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pnflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBudget = 4;
constexpr int kExitIo = 5;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

fs::path resolve_out(const std::string &path) {
    fs::path p(path);
    if (p.is_absolute())
        return p;
    if (const char *dir = std::getenv("PNFLOW_OUT_DIR"))
        return fs::path(dir) / p;
    return p;
}

std::ofstream open_out(const std::string &path) {
    const fs::path full = resolve_out(path);
    std::ofstream out(full);
    if (!out)
        throw IoError("cannot open output file '" + full.string() + "'");
    return out;
}

std::ifstream open_in(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open input file '" + path + "'");
    return in;
}

/// A loaded graph plus the mapping between original and dense ids.
struct LoadedGraph {
    Graph graph;
    std::vector<std::uint64_t> labels; // dense -> original
    std::map<std::uint64_t, node_t> index; // original -> dense

    node_t to_dense(std::uint64_t original, const char *param) const {
        auto it = index.find(original);
        if (it == index.end())
            throw ValidationError(std::string(param) + ": node id " +
                                  std::to_string(original) +
                                  " does not occur in the graph");
        return it->second;
    }

    NodeSet to_dense_set(const std::vector<std::uint64_t> &ids,
                         const char *param) const {
        std::vector<node_t> dense;
        dense.reserve(ids.size());
        for (std::uint64_t id : ids)
            dense.push_back(to_dense(id, param));
        return NodeSet(std::move(dense));
    }
};

struct GraphOptions {
    std::string path;
    bool one_based = false;
    bool seed_component = false;
};

void add_graph_options(CLI::App &cmd, GraphOptions &opts) {
    cmd.add_option("--graph", opts.path, "Edge list file, one 'u v' per line")
        ->required();
    cmd.add_flag("--one-based", opts.one_based, "Input node ids start at 1");
    cmd.add_flag("--seed-component", opts.seed_component,
                 "Restrict a disconnected graph to the seeds' component");
}

LoadedGraph load_graph(const GraphOptions &opts,
                       const std::vector<std::uint64_t> &seed_ids) {
    auto in = open_in(opts.path);
    auto res = load_edge_list(
        in, {.one_based = opts.one_based,
             .require_connected = !opts.seed_component});
    LoadedGraph lg{std::move(res.graph), std::move(res.labels), {}};
    for (node_t v = 0; v < lg.graph.num_nodes(); ++v)
        lg.index.emplace(lg.labels[v], v);

    if (opts.seed_component && !lg.graph.is_connected()) {
        if (seed_ids.empty())
            throw ValidationError("--seed-component: no seeds given to pick "
                                  "the component from");
        NodeSet seeds = lg.to_dense_set(seed_ids, "--seed");
        NodeSet comp = connected_component(lg.graph, seeds.members().front());
        for (node_t s : seeds)
            if (!comp.contains(s))
                throw ValidationError("--seed: seeds span multiple connected "
                                      "components");
        auto sub = induced_subgraph(lg.graph, comp);
        LoadedGraph out{std::move(sub.graph), {}, {}};
        out.labels.reserve(out.graph.num_nodes());
        for (node_t v = 0; v < out.graph.num_nodes(); ++v)
            out.labels.push_back(lg.labels[sub.to_original[v]]);
        for (node_t v = 0; v < out.graph.num_nodes(); ++v)
            out.index.emplace(out.labels[v], v);
        return out;
    }
    return lg;
}

std::vector<std::uint64_t> read_id_file(const std::string &path) {
    auto in = open_in(path);
    std::vector<std::uint64_t> ids;
    std::uint64_t id;
    while (in >> id)
        ids.push_back(id);
    if (!in.eof())
        throw ParseError("non-numeric entry in node id file '" + path + "'", 0);
    return ids;
}

void write_id_file(const std::string &path, const LoadedGraph &lg,
                   const NodeSet &s) {
    std::vector<std::uint64_t> ids;
    ids.reserve(s.size());
    for (node_t v : s)
        ids.push_back(lg.labels[v]);
    std::sort(ids.begin(), ids.end());
    auto out = open_out(path);
    for (std::uint64_t id : ids)
        out << id << "\n";
}

/// The fixed metrics record. Overlap fields are absent (JSON null, TSV
/// "na") when no ground truth was supplied; the schema never changes.
struct MetricsRecord {
    std::optional<ClusterMetrics> overlap;
    double conductance = 0;
    double delta = 0;
    double p = 0;
    double eps = 0;
    std::uint64_t pushes = 0;
    std::size_t touched = 0;
};

void write_metrics(std::ostream &out, const MetricsRecord &m,
                   const std::string &format) {
    static constexpr const char *kFields[] = {
        "precision", "recall", "f1", "jaccard", "conductance",
        "delta",     "p",      "eps", "pushes",  "touched"};
    if (format == "json") {
        json j;
        if (m.overlap) {
            j["precision"] = m.overlap->precision;
            j["recall"] = m.overlap->recall;
            j["f1"] = m.overlap->f1;
            j["jaccard"] = m.overlap->jaccard;
        } else {
            j["precision"] = nullptr;
            j["recall"] = nullptr;
            j["f1"] = nullptr;
            j["jaccard"] = nullptr;
        }
        j["conductance"] = m.conductance;
        j["delta"] = m.delta;
        j["p"] = m.p;
        j["eps"] = m.eps;
        j["pushes"] = m.pushes;
        j["touched"] = m.touched;
        out << j.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < std::size(kFields); ++i)
        out << kFields[i] << (i + 1 < std::size(kFields) ? '\t' : '\n');
    const auto overlap_field = [&](double ClusterMetrics::*field) {
        return m.overlap ? fmt((*m.overlap).*field) : std::string("na");
    };
    out << overlap_field(&ClusterMetrics::precision) << '\t'
        << overlap_field(&ClusterMetrics::recall) << '\t'
        << overlap_field(&ClusterMetrics::f1) << '\t'
        << overlap_field(&ClusterMetrics::jaccard) << '\t'
        << fmt(m.conductance) << '\t' << fmt(m.delta) << '\t' << fmt(m.p)
        << '\t' << fmt(m.eps) << '\t' << m.pushes << '\t' << m.touched << '\n';
}

// ---------------------------------------------------------------------------
// gen

struct GenConfig {
    node_t rows = 7, cols = 7;
    std::vector<node_t> blocks;
    double p_in = 0.5, p_out = 0.02;
    std::uint64_t seed = 1;
    std::string out, left_out, right_out, blocks_out;
};

void write_graph_file(const std::string &path, const Graph &g) {
    auto out = open_out(path);
    write_edge_list(out, g);
}

int run_gen_grid(const GenConfig &cfg) {
    write_graph_file(cfg.out, gen_grid(cfg.rows, cfg.cols));
    return kExitOk;
}

int run_gen_dumbbell(const GenConfig &cfg) {
    Dumbbell d = gen_dumbbell(cfg.rows, cfg.cols);
    write_graph_file(cfg.out, d.graph);
    if (!cfg.left_out.empty()) {
        auto out = open_out(cfg.left_out);
        write_node_set(out, d.left);
    }
    if (!cfg.right_out.empty()) {
        auto out = open_out(cfg.right_out);
        write_node_set(out, d.right);
    }
    return kExitOk;
}

int run_gen_planted(const GenConfig &cfg) {
    auto pp = gen_planted_partition(cfg.blocks, cfg.p_in, cfg.p_out, cfg.seed);
    write_graph_file(cfg.out, pp.graph);
    if (!cfg.blocks_out.empty())
        for (std::size_t i = 0; i < pp.blocks.size(); ++i) {
            auto out = open_out(cfg.blocks_out + std::to_string(i) + ".txt");
            write_node_set(out, pp.blocks[i]);
        }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// diffuse

struct DiffuseConfig {
    GraphOptions graph;
    std::vector<std::uint64_t> seed_ids;
    std::string seeds_path;
    double p = 2;
    double delta = 0;
    double mass_mult = 0;
    double target_vol = 0;
    double eps = 1e-6;
    double mu = -1; // <0 means "use the default"
    double term_tol = 0;
    std::uint64_t budget = 0;
    std::uint64_t rng_seed = 1;
    std::string format = "tsv";
    std::string truth_path;
    std::string x_out = "x.tsv";
    std::string cluster_out = "cluster.txt";
    std::string metrics_out;
    std::string trace_out;
};

void add_solver_options(CLI::App &cmd, DiffuseConfig &cfg) {
    cmd.add_option("--p", cfg.p, "Primal norm exponent, p >= 2")->required();
    cmd.add_option("--eps", cfg.eps, "Target accuracy (sets the default mu)");
    cmd.add_option("--mu", cfg.mu, "Smoothing override; only valid for p > 2");
    cmd.add_option("--term-tol", cfg.term_tol,
                   "Gradient termination tolerance; 0 = default");
    cmd.add_option("--budget", cfg.budget,
                   "Coordinate update budget; 0 = default");
    cmd.add_option("--rng-seed", cfg.rng_seed, "Solver permutation seed");
    cmd.add_option("--format", cfg.format, "Metrics format: tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}));
}

std::vector<std::uint64_t> gather_seed_ids(const DiffuseConfig &cfg) {
    if (!cfg.seeds_path.empty() && !cfg.seed_ids.empty())
        throw ValidationError("--seed and --seeds are mutually exclusive");
    if (!cfg.seeds_path.empty())
        return read_id_file(cfg.seeds_path);
    if (cfg.seed_ids.empty())
        throw ValidationError("--seed: at least one seed node is required");
    return cfg.seed_ids;
}

double resolve_delta(const DiffuseConfig &cfg, const Graph &g,
                     const NodeSet &seeds) {
    if (cfg.mu >= 0 && cfg.p <= 2)
        throw ValidationError("--mu: smoothing override requires p > 2");
    const bool has_delta = cfg.delta > 0;
    const bool has_mult = cfg.mass_mult > 0;
    if (has_delta == has_mult)
        throw ValidationError(
            "--delta: exactly one of --delta and --mass-mult is required");
    if (has_delta)
        return cfg.delta;
    if (cfg.target_vol <= 0)
        throw ValidationError("--target-vol: required with --mass-mult");
    return cfg.mass_mult * cfg.target_vol /
           static_cast<double>(g.volume(seeds));
}

int run_diffuse(const DiffuseConfig &cfg) {
    const auto seed_ids = gather_seed_ids(cfg);
    LoadedGraph lg = load_graph(cfg.graph, seed_ids);
    NodeSet seeds = lg.to_dense_set(seed_ids, "--seed");
    const double delta = resolve_delta(cfg, lg.graph, seeds);

    auto prob = make_problem(lg.graph, std::move(seeds), delta, cfg.p, cfg.eps,
                             cfg.mu >= 0 ? std::optional<double>{cfg.mu}
                                         : std::nullopt);

    SolverOptions opts;
    opts.term_tol = cfg.term_tol;
    opts.budget = cfg.budget;
    opts.rng_seed = cfg.rng_seed;
    std::ostringstream trace;
    if (!cfg.trace_out.empty()) {
        trace << "epoch\tactive\tmax_excess\tobjective\n";
        opts.trace = [&trace](const EpochTrace &t) {
            trace << t.epoch << '\t' << t.active << '\t' << fmt(t.max_excess)
                  << '\t' << fmt(t.objective) << '\n';
        };
    }

    auto sol = solve(prob, opts);
    if (!sol.converged)
        throw BudgetError("--budget: exhausted after " +
                          std::to_string(sol.pushes) + " updates");
    auto sweep = sweep_cut(lg.graph, sol.x);

    MetricsRecord rec;
    rec.conductance = sweep.best_conductance;
    rec.delta = delta;
    rec.p = cfg.p;
    rec.eps = cfg.eps;
    rec.pushes = sol.pushes;
    rec.touched = sol.touched();
    if (!cfg.truth_path.empty()) {
        NodeSet truth = lg.to_dense_set(read_id_file(cfg.truth_path), "--truth");
        rec.overlap = evaluate(lg.graph, sweep.best_cut, truth);
    }

    // All outputs are written only after the whole pipeline succeeded, so
    // error exits leave no partial files behind.
    {
        auto out = open_out(cfg.x_out);
        std::vector<node_t> support = sol.support();
        std::sort(support.begin(), support.end(),
                  [&](node_t a, node_t b) { return lg.labels[a] < lg.labels[b]; });
        for (node_t v : support)
            out << lg.labels[v] << '\t' << fmt(sol.height(v)) << '\n';
    }
    write_id_file(cfg.cluster_out, lg, sweep.best_cut);
    if (!cfg.trace_out.empty())
        open_out(cfg.trace_out) << trace.str();
    if (cfg.metrics_out.empty())
        write_metrics(std::cout, rec, cfg.format);
    else {
        auto out = open_out(cfg.metrics_out);
        write_metrics(out, rec, cfg.format);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
    GraphOptions graph;
    std::string x_path;
    std::string cluster_out = "cluster.txt";
    std::string format = "tsv";
};

int run_sweep(const SweepConfig &cfg) {
    LoadedGraph lg = load_graph(cfg.graph, {});
    auto in = open_in(cfg.x_path);
    HeightMap x;
    std::uint64_t id;
    double h;
    while (in >> id >> h)
        x[lg.to_dense(id, "--x")] = h;
    if (!in.eof())
        throw ParseError("malformed height file '" + cfg.x_path + "'", 0);

    auto sweep = sweep_cut(lg.graph, x);
    write_id_file(cfg.cluster_out, lg, sweep.best_cut);
    std::cout << "conductance\t" << fmt(sweep.best_conductance) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalConfig {
    GraphOptions graph;
    std::string cluster_path, truth_path;
    std::string format = "tsv";
};

int run_eval(const EvalConfig &cfg) {
    LoadedGraph lg = load_graph(cfg.graph, {});
    NodeSet found = lg.to_dense_set(read_id_file(cfg.cluster_path), "--cluster");
    NodeSet truth = lg.to_dense_set(read_id_file(cfg.truth_path), "--truth");
    auto m = evaluate(lg.graph, found, truth);

    MetricsRecord rec;
    rec.overlap = m;
    rec.conductance = m.conductance;
    write_metrics(std::cout, rec, cfg.format);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentConfig {
    GraphOptions graph;
    std::string truth_path;
    std::vector<double> p_values{2.0, 4.0};
    std::vector<double> mass_mults{3.0};
    unsigned trials = 20;
    double eps = 1e-6;
    double mu = -1;
    std::uint64_t rng_seed = 1;
    std::uint64_t budget = 0;
    std::string out;
};

struct TrialRow {
    unsigned trial;
    double p, t, delta;
    std::uint64_t seed_id;
    ClusterMetrics m;
    std::uint64_t pushes;
    std::size_t touched;
};

void write_trial_header(std::ostream &out) {
    out << "trial\tp\tt\tseed\tdelta\tprecision\trecall\tf1\tjaccard"
           "\tconductance\tpushes\ttouched\n";
}

void write_trial_row(std::ostream &out, const TrialRow &r) {
    out << r.trial << '\t' << fmt(r.p) << '\t' << fmt(r.t) << '\t' << r.seed_id
        << '\t' << fmt(r.delta) << '\t' << fmt(r.m.precision) << '\t'
        << fmt(r.m.recall) << '\t' << fmt(r.m.f1) << '\t' << fmt(r.m.jaccard)
        << '\t' << fmt(r.m.conductance) << '\t' << r.pushes << '\t'
        << r.touched << '\n';
}

int run_experiment(const ExperimentConfig &cfg) {
    LoadedGraph lg = load_graph(cfg.graph, {});
    if (cfg.truth_path.empty())
        throw ValidationError("--truth: experiment requires a ground-truth "
                              "block file");
    NodeSet truth = lg.to_dense_set(read_id_file(cfg.truth_path), "--truth");
    const double truth_vol = static_cast<double>(lg.graph.volume(truth));

    std::ostringstream body;
    write_trial_header(body);

    // One rng drives seed sampling across all trials; each (p, t) cell sees
    // the same seed sequence so cells are comparable.
    for (double p : cfg.p_values)
        for (double t : cfg.mass_mults) {
            Rng rng(cfg.rng_seed);
            std::vector<TrialRow> rows;
            for (unsigned trial = 0; trial < cfg.trials; ++trial) {
                const node_t seed =
                    truth.members()[rng.next_below(truth.size())];
                const double delta =
                    t * truth_vol / static_cast<double>(lg.graph.degree(seed));
                auto prob = make_problem(
                    lg.graph, NodeSet({seed}), delta, p, cfg.eps,
                    cfg.mu >= 0 && p > 2 ? std::optional<double>{cfg.mu}
                                         : std::nullopt);
                SolverOptions opts;
                opts.budget = cfg.budget;
                opts.rng_seed = cfg.rng_seed + trial;
                auto sol = solve(prob, opts);
                if (!sol.converged)
                    throw BudgetError("--budget: exhausted in trial " +
                                      std::to_string(trial));
                auto sweep = sweep_cut(lg.graph, sol.x);
                rows.push_back({trial, p, t, delta, lg.labels[seed],
                                evaluate(lg.graph, sweep.best_cut, truth),
                                sol.pushes, sol.touched()});
            }
            for (const auto &r : rows)
                write_trial_row(body, r);

            // mean / stddev summary rows for this (p, t) cell.
            const auto stat = [&](auto get) {
                double mean = 0, var = 0;
                for (const auto &r : rows)
                    mean += get(r);
                mean /= rows.size();
                for (const auto &r : rows)
                    var += (get(r) - mean) * (get(r) - mean);
                var = rows.size() > 1 ? var / (rows.size() - 1) : 0.0;
                return std::pair{mean, std::sqrt(var)};
            };
            auto [f1_m, f1_s] = stat([](const TrialRow &r) { return r.m.f1; });
            auto [phi_m, phi_s] =
                stat([](const TrialRow &r) { return r.m.conductance; });
            body << "mean\t" << fmt(p) << '\t' << fmt(t) << "\t-\t-\t-\t-\t"
                 << fmt(f1_m) << "\t-\t" << fmt(phi_m) << "\t-\t-\n";
            body << "stddev\t" << fmt(p) << '\t' << fmt(t) << "\t-\t-\t-\t-\t"
                 << fmt(f1_s) << "\t-\t" << fmt(phi_s) << "\t-\t-\n";
        }

    if (cfg.out.empty())
        std::cout << body.str();
    else
        open_out(cfg.out) << body.str();
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"p-norm flow diffusion for local graph clustering"};
    app.require_subcommand(1);

    GenConfig gen_cfg;
    auto *gen = app.add_subcommand("gen", "Generate a synthetic graph");
    gen->require_subcommand(1);
    auto *grid = gen->add_subcommand("grid", "Rectangular grid graph");
    grid->add_option("--rows", gen_cfg.rows)->required();
    grid->add_option("--cols", gen_cfg.cols)->required();
    grid->add_option("--out", gen_cfg.out, "Edge list output")->required();
    auto *dumbbell =
        gen->add_subcommand("dumbbell", "Two grids joined by one bridge edge");
    dumbbell->add_option("--rows", gen_cfg.rows)->required();
    dumbbell->add_option("--cols", gen_cfg.cols)->required();
    dumbbell->add_option("--out", gen_cfg.out, "Edge list output")->required();
    dumbbell->add_option("--left-out", gen_cfg.left_out, "Left side node set");
    dumbbell->add_option("--right-out", gen_cfg.right_out,
                         "Right side node set");
    auto *planted =
        gen->add_subcommand("planted", "Planted partition random graph");
    planted->add_option("--blocks", gen_cfg.blocks, "Block sizes")->required();
    planted->add_option("--p-in", gen_cfg.p_in, "Intra-block edge probability");
    planted->add_option("--p-out", gen_cfg.p_out,
                        "Inter-block edge probability");
    planted->add_option("--seed", gen_cfg.seed, "Generator seed");
    planted->add_option("--out", gen_cfg.out, "Edge list output")->required();
    planted->add_option("--blocks-out", gen_cfg.blocks_out,
                        "Prefix for per-block node set files");

    DiffuseConfig dif_cfg;
    auto *diffuse =
        app.add_subcommand("diffuse", "Run diffusion + sweep cut");
    add_graph_options(*diffuse, dif_cfg.graph);
    diffuse->add_option("--seed", dif_cfg.seed_ids, "Seed node id (repeatable)");
    diffuse->add_option("--seeds", dif_cfg.seeds_path,
                        "File of newline-separated seed ids");
    diffuse->add_option("--delta", dif_cfg.delta,
                        "Per-seed source density multiplier");
    diffuse->add_option("--mass-mult", dif_cfg.mass_mult,
                        "Total mass as multiple of --target-vol");
    diffuse->add_option("--target-vol", dif_cfg.target_vol,
                        "Volume of the target cluster");
    add_solver_options(*diffuse, dif_cfg);
    diffuse->add_option("--truth", dif_cfg.truth_path,
                        "Ground-truth node set for overlap metrics");
    diffuse->add_option("--x-out", dif_cfg.x_out, "Heights output file");
    diffuse->add_option("--cluster-out", dif_cfg.cluster_out,
                        "Cluster output file");
    diffuse->add_option("--metrics-out", dif_cfg.metrics_out,
                        "Metrics output file (default: stdout)");
    diffuse->add_option("--trace", dif_cfg.trace_out,
                        "Per-epoch trace output file");

    SweepConfig sweep_cfg;
    auto *sweep = app.add_subcommand("sweep", "Sweep cut over given heights");
    add_graph_options(*sweep, sweep_cfg.graph);
    sweep->add_option("--x", sweep_cfg.x_path, "Heights file (node<TAB>height)")
        ->required();
    sweep->add_option("--cluster-out", sweep_cfg.cluster_out,
                      "Cluster output file");

    EvalConfig eval_cfg;
    auto *eval = app.add_subcommand("eval", "Score a cluster file");
    add_graph_options(*eval, eval_cfg.graph);
    eval->add_option("--cluster", eval_cfg.cluster_path, "Found cluster file")
        ->required();
    eval->add_option("--truth", eval_cfg.truth_path, "Ground-truth file")
        ->required();
    eval->add_option("--format", eval_cfg.format, "tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}));

    ExperimentConfig exp_cfg;
    auto *experiment =
        app.add_subcommand("experiment", "Repeated seeded trials");
    add_graph_options(*experiment, exp_cfg.graph);
    experiment->add_option("--truth", exp_cfg.truth_path,
                           "Ground-truth block to sample seeds from");
    experiment->add_option("--p", exp_cfg.p_values, "Norm exponents to compare");
    experiment->add_option("--mass-mult", exp_cfg.mass_mults,
                           "Mass multipliers t (|mass| = t * vol(truth))");
    experiment->add_option("--trials", exp_cfg.trials, "Trials per cell");
    experiment->add_option("--eps", exp_cfg.eps, "Target accuracy");
    experiment->add_option("--mu", exp_cfg.mu, "Smoothing override for p > 2");
    experiment->add_option("--rng-seed", exp_cfg.rng_seed, "Run seed");
    experiment->add_option("--budget", exp_cfg.budget, "Update budget per run");
    experiment->add_option("--out", exp_cfg.out,
                           "Table output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitParse;
    }

    try {
        if (grid->parsed())
            return run_gen_grid(gen_cfg);
        if (dumbbell->parsed())
            return run_gen_dumbbell(gen_cfg);
        if (planted->parsed())
            return run_gen_planted(gen_cfg);
        if (diffuse->parsed())
            return run_diffuse(dif_cfg);
        if (sweep->parsed())
            return run_sweep(sweep_cfg);
        if (eval->parsed())
            return run_eval(eval_cfg);
        if (experiment->parsed())
            return run_experiment(exp_cfg);
    } catch (const InfeasibleMassError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const DegenerateSupportError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const BudgetError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception &e) {
        // ParseError, ValidationError, ConnectivityError, bad exponents.
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
