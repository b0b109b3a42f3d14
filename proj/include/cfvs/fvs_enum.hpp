#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfvs/graph.hpp"

namespace cfvs {

// Pairwise disjoint vertex sets; picking one vertex from each set yields a
// feedback vertex set.
struct CompactRepresentation {
    std::vector<VertexSet> sets;

    std::size_t size() const { return sets.size(); }
    bool pairwise_disjoint() const;
    // Number of one-vertex-per-set choices, saturating at UINT64_MAX.
    std::uint64_t choice_count() const;
    // Sets sorted by their member lists.
    void canonicalize();

    friend bool operator==(const CompactRepresentation&, const CompactRepresentation&) = default;
};

// Inclusion-minimal feedback vertex sets of size <= k, by exhaustive search.
std::vector<VertexSet> enumerate_minimal_fvs(const Graph& g, std::size_t k);

struct EnumStats {
    std::uint64_t branch_nodes = 0;
    std::uint64_t emitted = 0;  // before deduplication
};

// k-compact representations covering every minimal FVS of size <= k.
// Vertices in `forbidden` never enter a representation (the annotated
// variant where part of the graph must stay in the forest).
std::vector<CompactRepresentation> enumerate_compact_representations(const Graph& g, std::size_t k,
                                                                     EnumStats* stats = nullptr);
std::vector<CompactRepresentation> enumerate_compact_representations(const Graph& g, std::size_t k,
                                                                     const VertexSet& forbidden,
                                                                     EnumStats* stats = nullptr);

// Streams the Cartesian product of a representation's sets.
class ChoiceStream {
public:
    ChoiceStream(const CompactRepresentation& rep, std::size_t universe);
    std::optional<VertexSet> next();

private:
    std::vector<std::vector<Vertex>> sets_;
    std::vector<std::size_t> index_;
    std::size_t universe_;
    bool done_ = false;
};

std::vector<VertexSet> realize_choices(const CompactRepresentation& rep, std::size_t universe);

bool verify_compact_rep(const Graph& g, const CompactRepresentation& rep, std::size_t k, bool require_minimal);

// Splits a representation into representations whose every choice is a
// minimal FVS; choices that are not minimal are dropped.
std::vector<CompactRepresentation> minimal_part(const Graph& g, const CompactRepresentation& rep);

// Blocks of lines, one line per set (1-indexed), blank line between
// representations. The empty family is written as a single "-" line.
std::string write_representations(const std::vector<CompactRepresentation>& reps);
std::vector<CompactRepresentation> parse_representations(std::string_view text, std::size_t n);

}  // namespace cfvs
