#include "cfvs/solver.hpp"

#include <chrono>
#include <stdexcept>

#include "cfvs/fvs_enum.hpp"
#include "cfvs/treewidth_dp.hpp"

namespace cfvs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Calls visit on every subset of {0..n-1} of each size 0..max_size in
// lexicographic order until it returns true.
template <class Visit>
bool for_each_subset_by_size(std::size_t n, std::size_t max_size, Visit visit) {
    std::vector<Vertex> pick;
    for (std::size_t size = 0; size <= std::min(max_size, n); ++size) {
        pick.resize(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<Vertex>(i);
        while (true) {
            if (visit(VertexSet(n, pick))) return true;
            std::size_t i = size;
            while (i > 0 && static_cast<std::size_t>(pick[i - 1]) == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return false;
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::compact_gst: return "compact-gst";
        case Method::treewidth_dp: return "treewidth-dp";
        case Method::brute_force: return "brute-force";
    }
    return "unknown";
}

Method parse_method(const std::string& name) {
    if (name == "compact-gst" || name == "gst") return Method::compact_gst;
    if (name == "treewidth-dp" || name == "treewidth" || name == "dp") return Method::treewidth_dp;
    if (name == "brute-force" || name == "bruteforce") return Method::brute_force;
    throw std::invalid_argument("unknown method '" + name + "'");
}

void check_solution(const Graph& g, const VertexSet& s, std::size_t k) {
    if (s.size() > k) throw std::logic_error("solution " + s.to_string() + " exceeds budget " + std::to_string(k));
    if (!is_connected_subset(g, s)) throw std::logic_error("solution " + s.to_string() + " is not connected");
    if (!is_feedback_vertex_set(g, s))
        throw std::logic_error("solution " + s.to_string() + " leaves a cycle");
}

std::optional<CfvsSolution> cfvs_decide(const CfvsInstance& inst, const CountingOptions& counting,
                                        SolveStats* stats) {
    const auto start = Clock::now();
    SolveStats local;
    auto finish = [&](std::optional<VertexSet> found) -> std::optional<CfvsSolution> {
        local.elapsed_ms = ms_since(start);
        if (stats) *stats = local;
        if (!found) return std::nullopt;
        check_solution(inst.graph, *found, inst.k);
        return CfvsSolution{std::move(*found), Method::compact_gst, local};
    };

    const Graph& g = inst.graph;
    if (is_forest(g)) return finish(g.empty_set());
    if (inst.k == 0) return finish(std::nullopt);

    for (const auto& rep : enumerate_compact_representations(g, inst.k)) {
        ++local.reps_tried;
        if (!rep.pairwise_disjoint()) throw std::logic_error("compact representation sets overlap");
        GstInstance gst{g, rep.sets, inst.k};
        SteinerStats steiner;
        auto tree = gst_extract_tree(gst, counting, &steiner);
        local.subsets_evaluated += steiner.subsets_evaluated;
        if (tree) return finish(std::move(tree));
    }
    return finish(std::nullopt);
}

std::optional<CfvsSolution> cfvs_bruteforce(const CfvsInstance& inst) {
    const auto start = Clock::now();
    const Graph& g = inst.graph;
    std::optional<VertexSet> found;
    SolveStats local;
    for_each_subset_by_size(g.num_vertices(), inst.k, [&](const VertexSet& s) {
        ++local.subsets_evaluated;
        if (!is_connected_fvs(g, s)) return false;
        found = s;
        return true;
    });
    local.elapsed_ms = ms_since(start);
    if (!found) return std::nullopt;
    check_solution(g, *found, inst.k);
    return CfvsSolution{std::move(*found), Method::brute_force, local};
}

namespace {

std::optional<CfvsSolution> solve_by_dp(const Graph& g, std::size_t k, const SolveOptions& opts, SolveStats* stats) {
    const auto start = Clock::now();
    TreeDecomposition td = opts.td ? *opts.td : greedy_td(g);
    td.normalize();
    if (!validate_td(g, td)) throw std::invalid_argument("tree decomposition does not match the graph");
    if (opts.max_width >= 0 && td.width() > opts.max_width)
        throw std::invalid_argument("decomposition width " + std::to_string(td.width()) + " exceeds --max-width " +
                                    std::to_string(opts.max_width));
    const auto result = dp_solve(g, nicify(td), k);
    SolveStats local;
    local.dp_rows = result.stats.total_rows;
    local.elapsed_ms = ms_since(start);
    if (stats) *stats = local;
    if (!result.witness) return std::nullopt;
    check_solution(g, *result.witness, k);
    return CfvsSolution{*result.witness, Method::treewidth_dp, local};
}

}  // namespace

std::optional<CfvsSolution> solve_cfvs(const CfvsInstance& inst, Method method, const SolveOptions& opts,
                                       SolveStats* stats) {
    switch (method) {
        case Method::compact_gst: return cfvs_decide(inst, opts.counting, stats);
        case Method::treewidth_dp: return solve_by_dp(inst.graph, inst.k, opts, stats);
        case Method::brute_force: {
            auto solution = cfvs_bruteforce(inst);
            if (stats) *stats = solution ? solution->stats : SolveStats{};
            return solution;
        }
    }
    return std::nullopt;
}

std::optional<CfvsSolution> solve_cfvs_optimum(const Graph& g, Method method, const SolveOptions& opts,
                                               SolveStats* stats) {
    const std::size_t n = g.num_vertices();
    if (method != Method::compact_gst) return solve_cfvs({g, n}, method, opts, stats);
    const auto start = Clock::now();
    SolveStats total;
    std::optional<CfvsSolution> found;
    for (std::size_t k = 0; k <= n && !found; ++k) {
        SolveStats round;
        found = cfvs_decide({g, k}, opts.counting, &round);
        total.reps_tried += round.reps_tried;
        total.subsets_evaluated += round.subsets_evaluated;
    }
    total.elapsed_ms = ms_since(start);
    if (found) found->stats = total;
    if (stats) *stats = total;
    return found;
}

Graph cvc_to_cfvs(const Graph& g) {
    if (!g.is_simple()) throw std::invalid_argument("connected vertex cover gadget needs a simple graph");
    const std::size_t n = g.num_vertices();
    Graph out(n + g.num_edges());
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const auto [u, v] = g.edges()[i];
        const auto x = static_cast<Vertex>(n + i);
        out.add_edge(u, v);
        out.add_edge(u, x);
        out.add_edge(x, v);
    }
    return out;
}

std::optional<VertexSet> min_connected_vertex_cover_bruteforce(const Graph& g) {
    std::optional<VertexSet> found;
    for_each_subset_by_size(g.num_vertices(), g.num_vertices(), [&](const VertexSet& s) {
        for (auto [u, v] : g.edges())
            if (!s.contains(u) && !s.contains(v)) return false;
        if (!is_connected_subset(g, s)) return false;
        found = s;
        return true;
    });
    return found;
}

}  // namespace cfvs
