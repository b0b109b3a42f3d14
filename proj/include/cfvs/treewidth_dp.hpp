#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cfvs/graph.hpp"
#include "cfvs/tree_decomposition.hpp"

namespace cfvs {

// Tables address bag vertices by position; a row key packs 5 bits per
// position, so bags are limited to this many vertices.
inline constexpr std::size_t kMaxBagSize = 12;
inline constexpr int kDpInfinity = std::numeric_limits<int>::max();

// One table row [S, P, Y, val] at a node with bag X.
//   S = F ∩ X for a partial solution F inside the subtree's graph G_i;
//   P = the partition of S by connected components of G_i[F], every one of
//       which meets S (when S is empty, F itself is connected, maybe empty);
//   Y = the partition of X \ S by the trees of the forest G_i - F;
//   val = the minimum |F| realising the triple.
struct DpRow {
    VertexSet s;
    Partition p;
    Partition y;
    int val = kDpInfinity;
};

using RowKey = std::uint64_t;
inline constexpr RowKey kNoRow = std::numeric_limits<RowKey>::max();

class DpTable {
public:
    struct Entry {
        int val = kDpInfinity;
        RowKey left = kNoRow;   // predecessor row in the (first) child
        RowKey right = kNoRow;  // predecessor row in the second child of a join
    };

    DpTable() = default;
    explicit DpTable(std::vector<Vertex> bag);

    const std::vector<Vertex>& bag() const { return bag_; }
    std::size_t size() const { return rows_.size(); }
    const std::unordered_map<RowKey, Entry>& entries() const { return rows_; }

    // kDpInfinity when the triple has no finite row.
    int value(const VertexSet& s, const Partition& p, const Partition& y) const;
    std::vector<DpRow> rows(std::size_t universe) const;

    // Keeps the smaller value; equal values keep the smaller predecessor.
    void offer(RowKey key, int val, RowKey left, RowKey right = kNoRow);

    RowKey encode(const VertexSet& s, const Partition& p, const Partition& y) const;
    DpRow decode(RowKey key, std::size_t universe) const;

private:
    std::vector<Vertex> bag_;
    std::unordered_map<RowKey, Entry> rows_;
};

DpTable dp_leaf(const std::vector<Vertex>& bag, const Graph& g);
DpTable dp_introduce(const DpTable& child, Vertex x, const std::vector<Vertex>& bag, const Graph& g);
DpTable dp_forget(const DpTable& child, Vertex x, const std::vector<Vertex>& bag, const Graph& g);
DpTable dp_join(const DpTable& left, const DpTable& right, const std::vector<Vertex>& bag, const Graph& g);

// sum_i C(b, i) i^i (b-i)^(b-i) <= (2w+2)^(2w+2) with b = w + 1.
long double dp_row_bound(int width);

struct DpStats {
    std::uint64_t nodes = 0;
    std::uint64_t total_rows = 0;
    std::uint64_t max_rows = 0;
    int width = -1;
    long double row_bound = 0;
};

// Tables for every node of the decomposition, indexed like ntd.nodes.
// Throws std::logic_error if a table exceeds the row bound.
std::vector<DpTable> dp_tables(const Graph& g, const NiceTreeDecomposition& ntd, DpStats* stats = nullptr);

struct DpResult {
    std::optional<std::size_t> size;
    std::optional<VertexSet> witness;
    DpStats stats;
};

// Minimum connected FVS through the decomposition; empty result when the
// optimum exceeds k. Throws std::invalid_argument for an invalid
// decomposition.
DpResult dp_solve(const Graph& g, const NiceTreeDecomposition& ntd, std::size_t k);

}  // namespace cfvs
