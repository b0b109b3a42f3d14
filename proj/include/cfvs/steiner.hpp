#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cfvs/graph.hpp"

namespace cfvs {

using BigCount = boost::multiprecision::cpp_int;

// Simple directed graph: duplicate arcs are ignored, u->v and v->u may coexist.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t n) : out_(n) {}

    std::size_t num_vertices() const { return out_.size(); }
    std::size_t num_arcs() const { return arcs_; }
    const std::vector<Vertex>& out_neighbors(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }
    bool has_arc(Vertex u, Vertex v) const;
    // Returns false if the arc was already present.
    bool add_arc(Vertex u, Vertex v);
    Vertex add_vertex();

private:
    std::vector<std::vector<Vertex>> out_;
    std::size_t arcs_ = 0;
};

struct DsotInstance {
    Digraph digraph;
    Vertex root = 0;
    VertexSet terminals;
    std::size_t max_vertices = 1;  // p: the out-tree may use at most this many vertices
};

struct GstInstance {
    Graph graph;
    std::vector<VertexSet> groups;  // pairwise disjoint, non-empty
    std::size_t max_vertices = 1;   // p

    // Throws std::invalid_argument if groups overlap, are empty or out of range.
    void validate() const;
};

enum class CountingMode {
    exact,    // deterministic; 128-bit or arbitrary precision integers
    modular,  // counts modulo one random 62-bit prime; may give false negatives
};

struct CountingOptions {
    CountingMode mode = CountingMode::exact;
    std::uint64_t seed = 1;       // picks the prime in modular mode
    std::uint64_t modulus = 0;    // explicit prime for modular mode, 0 = derive from seed
};

struct SteinerStats {
    std::uint64_t subsets_evaluated = 0;
    std::uint64_t roots_tried = 0;
    std::uint64_t decide_calls = 0;
    std::uint64_t modulus = 0;  // prime used in modular mode
};

// Entry j is the number of branching walks of length exactly j from root
// whose image stays inside `allowed`, j = 0..max_len.
std::vector<BigCount> count_branching_walks(const Digraph& d, Vertex root, const VertexSet& allowed,
                                            std::size_t max_len);
std::vector<std::uint64_t> count_branching_walks_mod(const Digraph& d, Vertex root, const VertexSet& allowed,
                                                     std::size_t max_len, std::uint64_t prime);

// Entry j is the inclusion-exclusion count of branching walks of length j
// from the root covering every terminal: the sum over X of the terminal set
// of (-1)^|X| times the walks avoiding X.
std::vector<BigCount> covering_walk_counts(const DsotInstance& inst, std::size_t max_len);

bool dsot_decide(const DsotInstance& inst, const CountingOptions& opts = {}, SteinerStats* stats = nullptr);

struct DsotReduction {
    Digraph digraph;
    VertexSet terminals;        // the fresh sinks s_1..s_l
    std::size_t budget = 0;     // p + l
    std::vector<Vertex> root_candidates;  // every original vertex, ascending
};

DsotReduction reduce_gst_to_dsot(const GstInstance& inst);

bool gst_decide(const GstInstance& inst, const CountingOptions& opts = {}, SteinerStats* stats = nullptr);

// Vertex set of a tree on at most p vertices meeting every group, or nullopt
// on a no-instance. Throws std::logic_error if the self-reduction disagrees
// with the decision procedure.
std::optional<VertexSet> gst_extract_tree(const GstInstance& inst, const CountingOptions& opts = {},
                                          SteinerStats* stats = nullptr);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);
// A prime in [2^61, 2^62) drawn from the seed.
std::uint64_t random_prime_62(std::uint64_t seed);

}  // namespace cfvs
