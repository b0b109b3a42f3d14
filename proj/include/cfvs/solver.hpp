#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "cfvs/graph.hpp"
#include "cfvs/steiner.hpp"
#include "cfvs/tree_decomposition.hpp"

namespace cfvs {

enum class Method { compact_gst, treewidth_dp, brute_force };

std::string to_string(Method m);
Method parse_method(const std::string& name);

struct CfvsInstance {
    Graph graph;
    std::size_t k = 0;
};

struct SolveStats {
    std::uint64_t reps_tried = 0;
    std::uint64_t subsets_evaluated = 0;
    std::uint64_t dp_rows = 0;
    double elapsed_ms = 0;
};

struct CfvsSolution {
    VertexSet vertices;
    Method method = Method::brute_force;
    SolveStats stats;
};

// Throws std::logic_error unless |s| <= k, g[s] is connected and g - s is
// a forest. Every solution leaves this module through it.
void check_solution(const Graph& g, const VertexSet& s, std::size_t k);

// Compact representations of minimal FVSs, each handed to the group Steiner
// tree solver with the representation's sets as groups and budget k.
std::optional<CfvsSolution> cfvs_decide(const CfvsInstance& inst, const CountingOptions& counting = {},
                                        SolveStats* stats = nullptr);

// Exhaustive search by increasing size; returns a minimum solution.
std::optional<CfvsSolution> cfvs_bruteforce(const CfvsInstance& inst);

// Adds a fresh vertex x_uv per edge uv and the triangle u, v, x_uv.
// Fresh vertices are numbered n + (edge index).
Graph cvc_to_cfvs(const Graph& g);

struct SolveOptions {
    CountingOptions counting;
    std::optional<TreeDecomposition> td;  // treewidth-dp only; greedy_td otherwise
    int max_width = -1;                    // treewidth-dp refuses wider decompositions, -1 = no limit
};

// Decision at budget k with the chosen method.
std::optional<CfvsSolution> solve_cfvs(const CfvsInstance& inst, Method method, const SolveOptions& opts = {},
                                       SolveStats* stats = nullptr);

// Smallest connected FVS, or nullopt when none exists. Budgets are tried
// upward except for treewidth-dp, whose root row is already the optimum.
std::optional<CfvsSolution> solve_cfvs_optimum(const Graph& g, Method method, const SolveOptions& opts = {},
                                               SolveStats* stats = nullptr);

// Minimum connected vertex cover by exhaustive search, nullopt if none.
std::optional<VertexSet> min_connected_vertex_cover_bruteforce(const Graph& g);

}  // namespace cfvs
