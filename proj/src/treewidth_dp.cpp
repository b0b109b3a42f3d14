#include "cfvs/treewidth_dp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace cfvs {

namespace {

constexpr int kBitsPerPosition = 5;
constexpr std::uint8_t kFresh = 15;  // scratch label, never produced by canonical keys

// Expanded form of a row key: per bag position, membership in S and the
// label of its piece (P-pieces for S positions, Y-pieces otherwise).
struct Labels {
    std::size_t size = 0;
    std::array<bool, kMaxBagSize> in_s{};
    std::array<std::uint8_t, kMaxBagSize> label{};
};

RowKey pack(const Labels& row) {
    // Renumber labels by first appearance, separately for S and for X \ S.
    std::array<int, 16> p_map;
    std::array<int, 16> y_map;
    p_map.fill(-1);
    y_map.fill(-1);
    int next_p = 0;
    int next_y = 0;
    RowKey key = 0;
    for (std::size_t i = 0; i < row.size; ++i) {
        auto& map = row.in_s[i] ? p_map : y_map;
        int& next = row.in_s[i] ? next_p : next_y;
        int& slot = map[row.label[i]];
        if (slot < 0) slot = next++;
        const RowKey bits = (static_cast<RowKey>(slot) << 1) | (row.in_s[i] ? 1u : 0u);
        key |= bits << (kBitsPerPosition * i);
    }
    return key;
}

Labels unpack(RowKey key, std::size_t size) {
    Labels row;
    row.size = size;
    for (std::size_t i = 0; i < size; ++i) {
        const auto bits = static_cast<unsigned>((key >> (kBitsPerPosition * i)) & 31u);
        row.in_s[i] = bits & 1u;
        row.label[i] = static_cast<std::uint8_t>(bits >> 1);
    }
    return row;
}

RowKey s_mask_of(RowKey key, std::size_t size) {
    RowKey mask = 0;
    for (std::size_t i = 0; i < size; ++i)
        if ((key >> (kBitsPerPosition * i)) & 1u) mask |= RowKey{1} << i;
    return mask;
}

std::size_t position_of(const std::vector<Vertex>& bag, Vertex v) {
    const auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v) throw std::invalid_argument("vertex " + std::to_string(v) + " not in bag");
    return static_cast<std::size_t>(it - bag.begin());
}

// Edge multiplicities between bag positions; the diagonal counts loops.
using Multiplicity = std::array<std::array<std::uint8_t, kMaxBagSize>, kMaxBagSize>;

Multiplicity bag_edges(const std::vector<Vertex>& bag, const Graph& g) {
    Multiplicity mult{};
    for (std::size_t i = 0; i < bag.size(); ++i) {
        for (Vertex w : g.neighbors(bag[i])) {
            const auto it = std::lower_bound(bag.begin(), bag.end(), w);
            if (it == bag.end() || *it != w) continue;
            auto& m = mult[i][static_cast<std::size_t>(it - bag.begin())];
            if (m < 255) ++m;
        }
    }
    return mult;
}

struct SmallUnionFind {
    std::array<std::uint8_t, kMaxBagSize> parent{};
    explicit SmallUnionFind(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint8_t>(i);
    }
    std::uint8_t find(std::uint8_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::uint8_t a, std::uint8_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

void check_bag(const std::vector<Vertex>& bag) {
    if (bag.size() > kMaxBagSize)
        throw std::invalid_argument("bag of size " + std::to_string(bag.size()) + " exceeds the supported " +
                                    std::to_string(kMaxBagSize));
    if (!std::is_sorted(bag.begin(), bag.end())) throw std::invalid_argument("bag is not sorted");
}

}  // namespace

DpTable::DpTable(std::vector<Vertex> bag) : bag_(std::move(bag)) { check_bag(bag_); }

void DpTable::offer(RowKey key, int val, RowKey left, RowKey right) {
    auto [it, inserted] = rows_.try_emplace(key, Entry{val, left, right});
    if (inserted) return;
    Entry& e = it->second;
    if (val < e.val || (val == e.val && std::pair(left, right) < std::pair(e.left, e.right)))
        e = Entry{val, left, right};
}

RowKey DpTable::encode(const VertexSet& s, const Partition& p, const Partition& y) const {
    Labels row;
    row.size = bag_.size();
    std::vector<char> assigned(bag_.size(), 0);
    auto place = [&](const Partition& part, bool in_s) {
        for (std::size_t piece = 0; piece < part.size(); ++piece) {
            for (Vertex v : part.pieces()[piece]) {
                const auto pos = position_of(bag_, v);
                if (assigned[pos] || s.contains(v) != in_s)
                    throw std::invalid_argument("triple does not partition the bag");
                assigned[pos] = 1;
                row.in_s[pos] = in_s;
                row.label[pos] = static_cast<std::uint8_t>(piece);
            }
        }
    };
    place(p, true);
    place(y, false);
    if (std::find(assigned.begin(), assigned.end(), 0) != assigned.end())
        throw std::invalid_argument("triple does not cover the bag");
    return pack(row);
}

DpRow DpTable::decode(RowKey key, std::size_t universe) const {
    const Labels row = unpack(key, bag_.size());
    DpRow out;
    out.s = VertexSet(universe);
    std::map<int, std::vector<Vertex>> p_pieces;
    std::map<int, std::vector<Vertex>> y_pieces;
    for (std::size_t i = 0; i < row.size; ++i) {
        if (row.in_s[i]) {
            out.s.insert(bag_[i]);
            p_pieces[row.label[i]].push_back(bag_[i]);
        } else {
            y_pieces[row.label[i]].push_back(bag_[i]);
        }
    }
    std::vector<std::vector<Vertex>> p;
    std::vector<std::vector<Vertex>> y;
    for (auto& [_, piece] : p_pieces) p.push_back(std::move(piece));
    for (auto& [_, piece] : y_pieces) y.push_back(std::move(piece));
    out.p = Partition(std::move(p));
    out.y = Partition(std::move(y));
    const auto it = rows_.find(key);
    out.val = it == rows_.end() ? kDpInfinity : it->second.val;
    return out;
}

int DpTable::value(const VertexSet& s, const Partition& p, const Partition& y) const {
    const auto it = rows_.find(encode(s, p, y));
    return it == rows_.end() ? kDpInfinity : it->second.val;
}

std::vector<DpRow> DpTable::rows(std::size_t universe) const {
    std::vector<DpRow> out;
    out.reserve(rows_.size());
    for (const auto& [key, entry] : rows_) out.push_back(decode(key, universe));
    return out;
}

DpTable dp_leaf(const std::vector<Vertex>& bag, const Graph& g) {
    DpTable table(bag);
    const std::size_t b = bag.size();
    const Multiplicity mult = bag_edges(bag, g);
    for (RowKey mask = 0; mask < (RowKey{1} << b); ++mask) {
        SmallUnionFind uf(b);
        bool forest = true;
        for (std::size_t i = 0; i < b && forest; ++i) {
            const bool si = mask >> i & 1u;
            if (!si && mult[i][i] > 0) forest = false;
            for (std::size_t j = i + 1; j < b && forest; ++j) {
                if (mult[i][j] == 0 || si != static_cast<bool>(mask >> j & 1u)) continue;
                if (si) {
                    uf.unite(static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j));
                } else if (mult[i][j] > 1 || !uf.unite(static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j))) {
                    forest = false;
                }
            }
        }
        if (!forest) continue;
        Labels row;
        row.size = b;
        for (std::size_t i = 0; i < b; ++i) {
            row.in_s[i] = mask >> i & 1u;
            row.label[i] = uf.find(static_cast<std::uint8_t>(i));
        }
        table.offer(pack(row), __builtin_popcountll(mask), kNoRow);
    }
    return table;
}

DpTable dp_introduce(const DpTable& child, Vertex x, const std::vector<Vertex>& bag, const Graph& g) {
    DpTable table(bag);
    auto expected = child.bag();
    expected.insert(std::upper_bound(expected.begin(), expected.end(), x), x);
    if (expected != bag) throw std::invalid_argument("introduce bag must be the child bag plus the new vertex");
    const std::size_t b = bag.size();
    const std::size_t px = position_of(bag, x);
    const Multiplicity mult = bag_edges(bag, g);

    for (const auto& [child_key, entry] : child.entries()) {
        const Labels old = unpack(child_key, b - 1);
        Labels row;
        row.size = b;
        bool child_has_s = false;
        for (std::size_t c = 0; c < b - 1; ++c) {
            const std::size_t p = c < px ? c : c + 1;
            row.in_s[p] = old.in_s[c];
            row.label[p] = old.label[c];
            child_has_s |= old.in_s[c];
        }

        // x joins the solution and merges every P-piece it touches. A
        // non-empty solution hidden entirely below the bag cannot reach x.
        if (child_has_s || entry.val == 0) {
            Labels with = row;
            std::array<bool, 16> touched{};
            for (std::size_t p = 0; p < b; ++p)
                if (p != px && with.in_s[p] && mult[px][p] > 0) touched[with.label[p]] = true;
            for (std::size_t p = 0; p < b; ++p)
                if (p != px && with.in_s[p] && touched[with.label[p]]) with.label[p] = kFresh;
            with.in_s[px] = true;
            with.label[px] = kFresh;
            table.offer(pack(with), entry.val + 1, child_key);
        }

        // x joins the forest: it may touch each tree at most once.
        if (mult[px][px] == 0) {
            Labels without = row;
            std::array<bool, 16> touched{};
            bool acyclic = true;
            for (std::size_t p = 0; p < b && acyclic; ++p) {
                if (p == px || without.in_s[p] || mult[px][p] == 0) continue;
                if (mult[px][p] > 1 || touched[without.label[p]]) acyclic = false;
                touched[without.label[p]] = true;
            }
            if (!acyclic) continue;
            for (std::size_t p = 0; p < b; ++p)
                if (p != px && !without.in_s[p] && touched[without.label[p]]) without.label[p] = kFresh;
            without.in_s[px] = false;
            without.label[px] = kFresh;
            table.offer(pack(without), entry.val, child_key);
        }
    }
    return table;
}

DpTable dp_forget(const DpTable& child, Vertex x, const std::vector<Vertex>& bag, const Graph&) {
    DpTable table(bag);
    auto expected = child.bag();
    std::erase(expected, x);
    if (expected == child.bag() || expected != bag)
        throw std::invalid_argument("forget bag must be the child bag minus the forgotten vertex");
    const std::size_t b = child.bag().size();
    const std::size_t px = position_of(child.bag(), x);

    for (const auto& [child_key, entry] : child.entries()) {
        const Labels old = unpack(child_key, b);
        if (old.in_s[px]) {
            std::size_t s_count = 0;
            bool shares_piece = false;
            for (std::size_t p = 0; p < b; ++p) {
                if (!old.in_s[p]) continue;
                ++s_count;
                if (p != px && old.label[p] == old.label[px]) shares_piece = true;
            }
            // x's component must stay visible through another bag vertex,
            // unless x was the whole bag part of the solution: then the
            // solution is complete and must be connected, i.e. P = {{x}}.
            if (s_count > 1 && !shares_piece) continue;
        }
        Labels row;
        row.size = b - 1;
        for (std::size_t p = 0, q = 0; p < b; ++p) {
            if (p == px) continue;
            row.in_s[q] = old.in_s[p];
            row.label[q] = old.label[p];
            ++q;
        }
        table.offer(pack(row), entry.val, child_key);
    }
    return table;
}

DpTable dp_join(const DpTable& left, const DpTable& right, const std::vector<Vertex>& bag, const Graph& g) {
    if (left.bag() != bag || right.bag() != bag) throw std::invalid_argument("join children must share the bag");
    DpTable table(bag);
    const std::size_t b = bag.size();
    const Multiplicity mult = bag_edges(bag, g);

    std::unordered_map<RowKey, std::vector<std::pair<RowKey, int>>> right_by_s;
    for (const auto& [key, entry] : right.entries()) right_by_s[s_mask_of(key, b)].emplace_back(key, entry.val);

    for (const auto& [left_key, left_entry] : left.entries()) {
        const RowKey s_mask = s_mask_of(left_key, b);
        const auto bucket = right_by_s.find(s_mask);
        if (bucket == right_by_s.end()) continue;
        const int s_size = __builtin_popcountll(s_mask);
        const Labels l = unpack(left_key, b);

        // Components of the bag's own forest part; both sides contain these
        // edges, so each component acts as one representative.
        SmallUnionFind shared(b);
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = i + 1; j < b; ++j)
                if (!l.in_s[i] && !l.in_s[j] && mult[i][j] > 0)
                    shared.unite(static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j));

        for (const auto& [right_key, right_val] : bucket->second) {
            if (s_size == 0 && left_entry.val > 0 && right_val > 0) continue;
            const Labels r = unpack(right_key, b);
            SmallUnionFind uf = shared;
            std::array<int, 32> first_left;
            first_left.fill(-1);
            for (std::size_t i = 0; i < b; ++i) {
                int& f = first_left[l.label[i] + (l.in_s[i] ? 0 : 16)];
                if (f < 0) f = static_cast<int>(i);
                else uf.unite(static_cast<std::uint8_t>(f), static_cast<std::uint8_t>(i));
            }
            // Right pieces: S pieces merge freely; each forest piece may meet
            // every left-merged tree at most once, or a cycle closes.
            std::array<int, 32> first_right;
            first_right.fill(-1);
            std::array<std::array<bool, kMaxBagSize>, 32> seen_rep{};
            bool acyclic = true;
            for (std::size_t i = 0; i < b && acyclic; ++i) {
                const int slot = r.label[i] + (r.in_s[i] ? 0 : 16);
                if (r.in_s[i]) {
                    int& f = first_right[static_cast<std::size_t>(slot)];
                    if (f < 0) f = static_cast<int>(i);
                    else uf.unite(static_cast<std::uint8_t>(f), static_cast<std::uint8_t>(i));
                    continue;
                }
                const std::uint8_t rep = shared.find(static_cast<std::uint8_t>(i));
                auto& seen = seen_rep[static_cast<std::size_t>(slot)];
                if (seen[rep]) continue;
                seen[rep] = true;
                int& f = first_right[static_cast<std::size_t>(slot)];
                if (f < 0) f = static_cast<int>(i);
                else if (!uf.unite(static_cast<std::uint8_t>(f), static_cast<std::uint8_t>(i))) acyclic = false;
            }
            if (!acyclic) continue;
            Labels merged;
            merged.size = b;
            for (std::size_t i = 0; i < b; ++i) {
                merged.in_s[i] = l.in_s[i];
                merged.label[i] = uf.find(static_cast<std::uint8_t>(i));
            }
            table.offer(pack(merged), left_entry.val + right_val - s_size, left_key, right_key);
        }
    }
    return table;
}

long double dp_row_bound(int width) {
    const long double base = 2.0L * width + 2.0L;
    return base <= 0 ? 1.0L : std::pow(base, base);
}

std::vector<DpTable> dp_tables(const Graph& g, const NiceTreeDecomposition& ntd, DpStats* stats) {
    std::vector<DpTable> tables(ntd.nodes.size());
    const int width = ntd.width();
    const long double bound = dp_row_bound(width);
    DpStats local;
    local.width = width;
    local.row_bound = bound;
    for (int id : ntd.postorder()) {
        const NiceNode& node = ntd.nodes[static_cast<std::size_t>(id)];
        auto child = [&](std::size_t i) -> const DpTable& {
            return tables[static_cast<std::size_t>(node.children.at(i))];
        };
        DpTable& table = tables[static_cast<std::size_t>(id)];
        switch (node.kind) {
            case NodeKind::leaf: table = dp_leaf(node.bag, g); break;
            case NodeKind::introduce: table = dp_introduce(child(0), node.vertex, node.bag, g); break;
            case NodeKind::forget: table = dp_forget(child(0), node.vertex, node.bag, g); break;
            case NodeKind::join: table = dp_join(child(0), child(1), node.bag, g); break;
        }
        if (static_cast<long double>(table.size()) > bound)
            throw std::logic_error("table at node " + std::to_string(id) + " has " + std::to_string(table.size()) +
                                   " rows, above the bound for width " + std::to_string(width));
        ++local.nodes;
        local.total_rows += table.size();
        local.max_rows = std::max<std::uint64_t>(local.max_rows, table.size());
    }
    if (stats) *stats = local;
    return tables;
}

DpResult dp_solve(const Graph& g, const NiceTreeDecomposition& ntd, std::size_t k) {
    if (!ntd.check_structure()) throw std::invalid_argument("not a nice tree decomposition");
    if (!validate_td(g, ntd.as_tree_decomposition()))
        throw std::invalid_argument("not a tree decomposition of the graph");

    DpResult result;
    const auto tables = dp_tables(g, ntd, &result.stats);
    const DpTable& root = tables[static_cast<std::size_t>(ntd.root)];
    const std::size_t b = root.bag().size();

    RowKey best_key = kNoRow;
    int best = kDpInfinity;
    for (const auto& [key, entry] : root.entries()) {
        const Labels row = unpack(key, b);
        bool single_piece = true;
        for (std::size_t i = 0; i < b; ++i)
            if (row.in_s[i] && row.label[i] != 0) single_piece = false;
        if (!single_piece) continue;
        if (entry.val < best || (entry.val == best && key < best_key)) {
            best = entry.val;
            best_key = key;
        }
    }
    if (best == kDpInfinity || static_cast<std::size_t>(best) > k) return result;

    // Walk the predecessor chain; F is the union of S over the visited rows.
    VertexSet witness(g.num_vertices());
    std::vector<std::pair<int, RowKey>> stack{{ntd.root, best_key}};
    while (!stack.empty()) {
        const auto [id, key] = stack.back();
        stack.pop_back();
        const NiceNode& node = ntd.nodes[static_cast<std::size_t>(id)];
        const DpTable& table = tables[static_cast<std::size_t>(id)];
        const Labels row = unpack(key, node.bag.size());
        for (std::size_t i = 0; i < row.size; ++i)
            if (row.in_s[i]) witness.insert(node.bag[i]);
        const DpTable::Entry& entry = table.entries().at(key);
        if (!node.children.empty()) stack.emplace_back(node.children[0], entry.left);
        if (node.children.size() > 1) stack.emplace_back(node.children[1], entry.right);
    }
    if (witness.size() != static_cast<std::size_t>(best) || !is_connected_fvs(g, witness))
        throw std::logic_error("treewidth DP reconstructed an invalid witness " + witness.to_string());
    result.size = static_cast<std::size_t>(best);
    result.witness = std::move(witness);
    return result;
}

}  // namespace cfvs
