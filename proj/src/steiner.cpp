#include "cfvs/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>
#include <string>

namespace cfvs {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

struct BigArith {
    using value = BigCount;
    value zero() const { return 0; }
    value one() const { return 1; }
    void add(value& acc, const value& x) const { acc += x; }
    void add_product(value& acc, const value& x, const value& y) const { acc += x * y; }
};

struct Int128Arith {
    using value = i128;
    value zero() const { return 0; }
    value one() const { return 1; }
    void add(value& acc, value x) const { acc += x; }
    void add_product(value& acc, value x, value y) const { acc += x * y; }
};

struct ModArith {
    using value = std::uint64_t;
    std::uint64_t prime;
    value zero() const { return 0; }
    value one() const { return 1 % prime; }
    void add(value& acc, value x) const {
        acc += x;
        if (acc >= prime) acc -= prime;
    }
    void add_product(value& acc, value x, value y) const { add(acc, mul_mod(x, y, prime)); }
};

struct FloatArith {
    using value = long double;
    value zero() const { return 0; }
    value one() const { return 1; }
    void add(value& acc, value x) const { acc += x; }
    void add_product(value& acc, value x, value y) const { acc += x * y; }
};

// table[j][v] = branching walks of length j from v inside `allowed`.
// A walk of length j at v splits into the subtree of the first child
// (length j1, rooted at an out-neighbour s) and the remaining walk at v
// (length j - 1 - j1); first_child[j1][v] caches the sum over s.
template <class Arith>
std::vector<std::vector<typename Arith::value>> walk_table(const Digraph& d, const VertexSet& allowed,
                                                           std::size_t max_len, const Arith& arith) {
    using T = typename Arith::value;
    const std::size_t n = d.num_vertices();
    std::vector<std::vector<T>> table(max_len + 1, std::vector<T>(n, arith.zero()));
    std::vector<std::vector<T>> first_child(max_len + 1, std::vector<T>(n, arith.zero()));
    const auto members = allowed.members();
    for (Vertex v : members) table[0][static_cast<std::size_t>(v)] = arith.one();
    for (std::size_t j = 0; j <= max_len; ++j) {
        if (j > 0) {
            for (Vertex v : members) {
                const auto vi = static_cast<std::size_t>(v);
                T acc = arith.zero();
                for (std::size_t j1 = 0; j1 < j; ++j1)
                    arith.add_product(acc, first_child[j1][vi], table[j - 1 - j1][vi]);
                table[j][vi] = acc;
            }
        }
        if (j < max_len) {
            for (Vertex v : members) {
                T acc = arith.zero();
                for (Vertex s : d.out_neighbors(v))
                    if (allowed.contains(s)) arith.add(acc, table[j][static_cast<std::size_t>(s)]);
                first_child[j][static_cast<std::size_t>(v)] = acc;
            }
        }
    }
    return table;
}

template <class Arith>
std::vector<typename Arith::value> root_counts(const Digraph& d, Vertex root, const VertexSet& allowed,
                                               std::size_t max_len, const Arith& arith) {
    auto table = walk_table(d, allowed, max_len, arith);
    std::vector<typename Arith::value> out;
    out.reserve(max_len + 1);
    for (auto& row : table) out.push_back(std::move(row[static_cast<std::size_t>(root)]));
    return out;
}

void check_instance(const DsotInstance& inst) {
    const auto n = inst.digraph.num_vertices();
    if (inst.root < 0 || static_cast<std::size_t>(inst.root) >= n)
        throw std::invalid_argument("DSOT root is not a vertex");
    inst.terminals.for_each([&](Vertex t) {
        if (static_cast<std::size_t>(t) >= n) throw std::invalid_argument("DSOT terminal is not a vertex");
    });
}

// Terminals other than the root; the root lies on every walk from itself.
std::vector<Vertex> open_terminals(const DsotInstance& inst) {
    auto ts = inst.terminals.members();
    std::erase(ts, inst.root);
    return ts;
}

VertexSet avoiding(std::size_t n, const std::vector<Vertex>& terminals, std::uint64_t mask) {
    auto allowed = VertexSet::full(n);
    for (std::size_t i = 0; i < terminals.size(); ++i)
        if (mask >> i & 1) allowed.erase(terminals[i]);
    return allowed;
}

// Shortest-path depth of every vertex from the root, -1 if unreachable.
std::vector<int> bfs_depth(const Digraph& d, Vertex root) {
    std::vector<int> depth(d.num_vertices(), -1);
    std::deque<Vertex> queue{root};
    depth[static_cast<std::size_t>(root)] = 0;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : d.out_neighbors(v)) {
            if (depth[static_cast<std::size_t>(w)] >= 0) continue;
            depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
            queue.push_back(w);
        }
    }
    return depth;
}

template <class Arith, class Positive>
bool signed_sum_positive(const DsotInstance& inst, const std::vector<Vertex>& terminals, std::size_t max_len,
                         const Arith& arith, Positive positive, SteinerStats* stats) {
    using T = typename Arith::value;
    const std::size_t n = inst.digraph.num_vertices();
    const std::uint64_t subsets = std::uint64_t{1} << terminals.size();
    std::vector<T> total(max_len + 1, arith.zero());
    std::vector<T> negative(max_len + 1, arith.zero());
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        const auto counts = root_counts(inst.digraph, inst.root, avoiding(n, terminals, mask), max_len, arith);
        auto& bucket = (__builtin_popcountll(mask) % 2 == 0) ? total : negative;
        for (std::size_t j = 0; j <= max_len; ++j) arith.add(bucket[j], counts[j]);
    }
    if (stats) stats->subsets_evaluated += subsets;
    for (std::size_t j = 0; j <= max_len; ++j)
        if (positive(total[j], negative[j])) return true;
    return false;
}

}  // namespace

bool Digraph::has_arc(Vertex u, Vertex v) const {
    const auto& out = out_neighbors(u);
    return std::find(out.begin(), out.end(), v) != out.end();
}

bool Digraph::add_arc(Vertex u, Vertex v) {
    const auto n = num_vertices();
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
        throw std::out_of_range("arc endpoint is not a vertex");
    if (has_arc(u, v)) return false;
    out_[static_cast<std::size_t>(u)].push_back(v);
    ++arcs_;
    return true;
}

Vertex Digraph::add_vertex() {
    out_.emplace_back();
    return static_cast<Vertex>(out_.size() - 1);
}

void GstInstance::validate() const {
    VertexSet seen(graph.num_vertices());
    for (const auto& group : groups) {
        if (group.empty()) throw std::invalid_argument("GST group is empty");
        group.for_each([&](Vertex v) {
            if (static_cast<std::size_t>(v) >= graph.num_vertices())
                throw std::invalid_argument("GST group contains a vertex outside the graph");
        });
        if (group.intersects(seen)) throw std::invalid_argument("GST groups overlap");
        seen |= group;
    }
}

std::vector<BigCount> count_branching_walks(const Digraph& d, Vertex root, const VertexSet& allowed,
                                            std::size_t max_len) {
    return root_counts(d, root, allowed, max_len, BigArith{});
}

std::vector<std::uint64_t> count_branching_walks_mod(const Digraph& d, Vertex root, const VertexSet& allowed,
                                                     std::size_t max_len, std::uint64_t prime) {
    return root_counts(d, root, allowed, max_len, ModArith{prime});
}

std::vector<BigCount> covering_walk_counts(const DsotInstance& inst, std::size_t max_len) {
    check_instance(inst);
    const auto terminals = open_terminals(inst);
    const std::size_t n = inst.digraph.num_vertices();
    std::vector<BigCount> sum(max_len + 1, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << terminals.size()); ++mask) {
        const auto counts = count_branching_walks(inst.digraph, inst.root, avoiding(n, terminals, mask), max_len);
        const bool odd = __builtin_popcountll(mask) % 2 == 1;
        for (std::size_t j = 0; j <= max_len; ++j) sum[j] += odd ? -counts[j] : counts[j];
    }
    return sum;
}

bool dsot_decide(const DsotInstance& inst, const CountingOptions& opts, SteinerStats* stats) {
    check_instance(inst);
    if (stats) ++stats->decide_calls;
    if (inst.max_vertices == 0) return false;
    const std::size_t max_len = inst.max_vertices - 1;
    const auto terminals = open_terminals(inst);
    if (terminals.size() >= 63) throw std::invalid_argument("too many terminals");

    // A terminal farther than max_len arcs is on no walk of admissible length,
    // so every signed sum is zero.
    const auto depth = bfs_depth(inst.digraph, inst.root);
    for (Vertex t : terminals) {
        const int dt = depth[static_cast<std::size_t>(t)];
        if (dt < 0 || static_cast<std::size_t>(dt) > max_len) return false;
    }

    if (opts.mode == CountingMode::modular) {
        const std::uint64_t prime = opts.modulus ? opts.modulus : random_prime_62(opts.seed);
        if (stats) stats->modulus = prime;
        const ModArith arith{prime};
        return signed_sum_positive(inst, terminals, max_len, arith,
                                   [](std::uint64_t plus, std::uint64_t minus) { return plus != minus; }, stats);
    }

    // Walk counts only shrink as vertices are excluded, so the unrestricted
    // table bounds every term; 128-bit arithmetic is exact below 2^125.
    const auto bound_table =
        walk_table(inst.digraph, VertexSet::full(inst.digraph.num_vertices()), max_len, FloatArith{});
    long double largest = 0;
    for (const auto& row : bound_table)
        for (long double x : row) largest = std::max(largest, x);
    const long double limit = std::ldexp(1.0L, 120 - static_cast<int>(terminals.size()));
    if (largest < limit) {
        return signed_sum_positive(inst, terminals, max_len, Int128Arith{},
                                   [](i128 plus, i128 minus) { return plus > minus; }, stats);
    }
    return signed_sum_positive(inst, terminals, max_len, BigArith{},
                               [](const BigCount& plus, const BigCount& minus) { return plus > minus; }, stats);
}

DsotReduction reduce_gst_to_dsot(const GstInstance& inst) {
    const std::size_t n = inst.graph.num_vertices();
    DsotReduction out;
    out.digraph = Digraph(n);
    for (auto [u, v] : inst.graph.edges()) {
        if (u == v) continue;
        out.digraph.add_arc(u, v);
        out.digraph.add_arc(v, u);
    }
    std::vector<Vertex> sinks;
    for (const auto& group : inst.groups) {
        const Vertex sink = out.digraph.add_vertex();
        sinks.push_back(sink);
        group.for_each([&](Vertex x) { out.digraph.add_arc(x, sink); });
    }
    out.terminals = VertexSet(out.digraph.num_vertices(), sinks);
    out.budget = inst.max_vertices + inst.groups.size();
    out.root_candidates.resize(n);
    for (std::size_t v = 0; v < n; ++v) out.root_candidates[v] = static_cast<Vertex>(v);
    return out;
}

bool gst_decide(const GstInstance& inst, const CountingOptions& opts, SteinerStats* stats) {
    inst.validate();
    if (inst.max_vertices == 0) return false;
    if (inst.groups.empty()) return inst.graph.num_vertices() > 0;

    auto reduction = reduce_gst_to_dsot(inst);
    // Any witness tree meets the smallest group and can be re-rooted there.
    const auto smallest = std::min_element(inst.groups.begin(), inst.groups.end(),
                                           [](const auto& a, const auto& b) { return a.size() < b.size(); });
    DsotInstance dsot{std::move(reduction.digraph), 0, std::move(reduction.terminals), reduction.budget};
    for (Vertex root : reduction.root_candidates) {
        if (!smallest->contains(root)) continue;
        if (stats) ++stats->roots_tried;
        dsot.root = root;
        if (dsot_decide(dsot, opts, stats)) return true;
    }
    return false;
}

namespace {

GstInstance restrict_instance(const GstInstance& inst, const VertexSet& keep, std::vector<Vertex>* original) {
    auto sub = induced_subgraph(inst.graph, keep);
    GstInstance out;
    out.max_vertices = inst.max_vertices;
    for (const auto& group : inst.groups) {
        VertexSet mapped(sub.graph.num_vertices());
        group.for_each([&](Vertex v) {
            const Vertex r = sub.relabel[static_cast<std::size_t>(v)];
            if (r >= 0) mapped.insert(r);
        });
        out.groups.push_back(std::move(mapped));
    }
    out.graph = std::move(sub.graph);
    if (original) *original = std::move(sub.original);
    return out;
}

}  // namespace

std::optional<VertexSet> gst_extract_tree(const GstInstance& inst, const CountingOptions& opts,
                                          SteinerStats* stats) {
    if (!gst_decide(inst, opts, stats)) return std::nullopt;
    const std::size_t n = inst.graph.num_vertices();
    auto keep = inst.graph.vertex_set();
    if (inst.groups.empty()) return VertexSet(n, {0});

    // Delete every vertex whose removal keeps a yes-instance. What remains is
    // contained in every witness of the residual graph, so it is the witness.
    for (Vertex v = 0; static_cast<std::size_t>(v) < n; ++v) {
        auto trial = keep;
        trial.erase(v);
        const bool groups_survive = std::all_of(inst.groups.begin(), inst.groups.end(),
                                                [&](const VertexSet& g) { return g.intersects(trial); });
        if (!groups_survive) continue;
        if (gst_decide(restrict_instance(inst, trial, nullptr), opts, stats)) keep = std::move(trial);
    }

    const bool hits_all = std::all_of(inst.groups.begin(), inst.groups.end(),
                                      [&](const VertexSet& g) { return g.intersects(keep); });
    if (keep.size() > inst.max_vertices || !is_connected_subset(inst.graph, keep) || !hits_all)
        throw std::logic_error("GST self-reduction produced an invalid witness " + keep.to_string());
    return keep;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t random_prime_62(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    while (true) {
        const std::uint64_t candidate = (rng() >> 2) | (std::uint64_t{1} << 61) | 1;
        if (is_prime_u64(candidate)) return candidate;
    }
}

}  // namespace cfvs
