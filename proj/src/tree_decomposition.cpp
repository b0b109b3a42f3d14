#include "cfvs/tree_decomposition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cfvs/graph_io.hpp"

namespace cfvs {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

bool is_tree(std::size_t nodes, const std::vector<std::pair<int, int>>& edges) {
    if (nodes == 0) return edges.empty();
    if (edges.size() != nodes - 1) return false;
    std::vector<std::size_t> parent(nodes);
    std::iota(parent.begin(), parent.end(), 0);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= nodes || static_cast<std::size_t>(b) >= nodes)
            return false;
        const auto ra = find_root(parent, static_cast<std::size_t>(a));
        const auto rb = find_root(parent, static_cast<std::size_t>(b));
        if (ra == rb) return false;
        parent[ra] = rb;
    }
    return true;
}

bool bag_contains(const std::vector<Vertex>& bag, Vertex v) { return std::binary_search(bag.begin(), bag.end(), v); }

// Every vertex's bags form a connected subtree: in a tree, c nodes are
// connected iff c - 1 tree edges join them.
bool vertex_subtrees_connected(const TreeDecomposition& td) {
    std::map<Vertex, long> balance;
    for (const auto& bag : td.bags)
        for (Vertex v : bag) ++balance[v];
    for (auto [a, b] : td.tree_edges) {
        const auto& ba = td.bags[static_cast<std::size_t>(a)];
        const auto& bb = td.bags[static_cast<std::size_t>(b)];
        for (Vertex v : ba)
            if (bag_contains(bb, v)) --balance[v];
    }
    return std::all_of(balance.begin(), balance.end(), [](const auto& kv) { return kv.second == 1; });
}

std::vector<Vertex> sorted_difference(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

class Nicifier {
public:
    explicit Nicifier(const TreeDecomposition& td) : td_(td), adj_(td.bags.size()) {
        for (auto [a, b] : td.tree_edges) {
            adj_[static_cast<std::size_t>(a)].push_back(b);
            adj_[static_cast<std::size_t>(b)].push_back(a);
        }
    }

    NiceTreeDecomposition run() {
        if (td_.bags.empty()) {
            out_.root = add({NodeKind::leaf, -1, {}, {}});
            return std::move(out_);
        }
        const int top = build(0, -1);
        out_.root = morph(top, td_.bags[0], {});
        return std::move(out_);
    }

private:
    int add(NiceNode node) {
        out_.nodes.push_back(std::move(node));
        return static_cast<int>(out_.nodes.size() - 1);
    }

    // Chain of forget then introduce nodes from bag `from` to bag `to`.
    int morph(int node, const std::vector<Vertex>& from, const std::vector<Vertex>& to) {
        auto bag = from;
        for (Vertex v : sorted_difference(from, to)) {
            std::erase(bag, v);
            node = add({NodeKind::forget, v, bag, {node}});
        }
        for (Vertex v : sorted_difference(to, from)) {
            bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
            node = add({NodeKind::introduce, v, bag, {node}});
        }
        return node;
    }

    int build(int t, int parent) {
        const auto& bag = td_.bags[static_cast<std::size_t>(t)];
        std::vector<int> subtrees;
        for (int c : adj_[static_cast<std::size_t>(t)]) {
            if (c == parent) continue;
            const int child = build(c, t);
            subtrees.push_back(morph(child, td_.bags[static_cast<std::size_t>(c)], bag));
        }
        if (subtrees.empty()) {
            std::vector<Vertex> start;
            if (!bag.empty()) start.push_back(bag.front());
            const int leaf = add({NodeKind::leaf, -1, start, {}});
            return morph(leaf, start, bag);
        }
        int node = subtrees.front();
        for (std::size_t i = 1; i < subtrees.size(); ++i) node = add({NodeKind::join, -1, bag, {node, subtrees[i]}});
        return node;
    }

    const TreeDecomposition& td_;
    std::vector<std::vector<int>> adj_;
    NiceTreeDecomposition out_;
};

}  // namespace

int TreeDecomposition::width() const {
    std::size_t largest = 0;
    for (const auto& bag : bags) largest = std::max(largest, bag.size());
    return static_cast<int>(largest) - 1;
}

void TreeDecomposition::normalize() {
    for (auto& bag : bags) {
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    }
}

bool validate_td(const Graph& g, const TreeDecomposition& td) {
    const std::size_t n = g.num_vertices();
    if (!is_tree(td.bags.size(), td.tree_edges)) return false;
    VertexSet covered(n);
    for (const auto& bag : td.bags) {
        if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end())
            return false;
        for (Vertex v : bag) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) return false;
            covered.insert(v);
        }
    }
    if (covered.size() != n) return false;
    for (auto [u, v] : g.edges()) {
        const bool inside = std::any_of(td.bags.begin(), td.bags.end(), [u = u, v = v](const auto& bag) {
            return bag_contains(bag, u) && bag_contains(bag, v);
        });
        if (!inside) return false;
    }
    return vertex_subtrees_connected(td);
}

TreeDecomposition greedy_td(const Graph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<std::set<Vertex>> adj(n);
    for (auto [u, v] : g.edges()) {
        if (u == v) continue;
        adj[static_cast<std::size_t>(u)].insert(v);
        adj[static_cast<std::size_t>(v)].insert(u);
    }
    std::vector<char> eliminated(n, 0);
    std::vector<std::size_t> position(n, 0);
    std::vector<Vertex> order;
    TreeDecomposition td;
    std::vector<std::vector<Vertex>> neighbourhood;  // N(v) at elimination

    auto fill_in = [&](Vertex v) {
        const auto& nb = adj[static_cast<std::size_t>(v)];
        std::size_t missing = 0;
        for (auto a = nb.begin(); a != nb.end(); ++a)
            for (auto b = std::next(a); b != nb.end(); ++b)
                if (!adj[static_cast<std::size_t>(*a)].count(*b)) ++missing;
        return missing;
    };

    for (std::size_t step = 0; step < n; ++step) {
        Vertex best = -1;
        std::pair<std::size_t, std::size_t> best_score{};
        for (Vertex v = 0; static_cast<std::size_t>(v) < n; ++v) {
            if (eliminated[static_cast<std::size_t>(v)]) continue;
            const std::pair<std::size_t, std::size_t> score{fill_in(v), adj[static_cast<std::size_t>(v)].size()};
            if (best < 0 || score < best_score) {
                best = v;
                best_score = score;
            }
        }
        const auto bi = static_cast<std::size_t>(best);
        std::vector<Vertex> nb(adj[bi].begin(), adj[bi].end());
        for (Vertex a : nb) {
            for (Vertex b : nb)
                if (a != b) adj[static_cast<std::size_t>(a)].insert(b);
            adj[static_cast<std::size_t>(a)].erase(best);
        }
        adj[bi].clear();
        eliminated[bi] = 1;
        position[bi] = step;
        order.push_back(best);
        auto bag = nb;
        bag.push_back(best);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        neighbourhood.push_back(std::move(nb));
    }

    // Bag of v hangs below the bag of its earliest-eliminated later
    // neighbour; bags without one are chained to the next bag.
    for (std::size_t step = 0; step + 1 < n; ++step) {
        const auto& nb = neighbourhood[step];
        std::size_t parent = step + 1;
        if (!nb.empty()) {
            parent = n;
            for (Vertex w : nb) parent = std::min(parent, position[static_cast<std::size_t>(w)]);
        }
        td.tree_edges.emplace_back(static_cast<int>(step), static_cast<int>(parent));
    }
    return td;
}

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::leaf: return "leaf";
        case NodeKind::introduce: return "introduce";
        case NodeKind::forget: return "forget";
        case NodeKind::join: return "join";
    }
    return "?";
}

int NiceTreeDecomposition::width() const {
    std::size_t largest = 0;
    for (const auto& node : nodes) largest = std::max(largest, node.bag.size());
    return static_cast<int>(largest) - 1;
}

bool NiceTreeDecomposition::check_structure() const {
    if (root < 0 || static_cast<std::size_t>(root) >= nodes.size()) return false;
    std::vector<int> parents(nodes.size(), 0);
    for (const auto& node : nodes) {
        if (!std::is_sorted(node.bag.begin(), node.bag.end())) return false;
        for (int c : node.children) {
            if (c < 0 || static_cast<std::size_t>(c) >= nodes.size()) return false;
            ++parents[static_cast<std::size_t>(c)];
        }
        switch (node.kind) {
            case NodeKind::leaf:
                if (!node.children.empty()) return false;
                break;
            case NodeKind::introduce: {
                if (node.children.size() != 1) return false;
                const auto& child = nodes[static_cast<std::size_t>(node.children[0])].bag;
                if (bag_contains(child, node.vertex) || !bag_contains(node.bag, node.vertex)) return false;
                auto expect = child;
                expect.insert(std::upper_bound(expect.begin(), expect.end(), node.vertex), node.vertex);
                if (expect != node.bag) return false;
                break;
            }
            case NodeKind::forget: {
                if (node.children.size() != 1) return false;
                const auto& child = nodes[static_cast<std::size_t>(node.children[0])].bag;
                if (!bag_contains(child, node.vertex) || bag_contains(node.bag, node.vertex)) return false;
                auto expect = child;
                std::erase(expect, node.vertex);
                if (expect != node.bag) return false;
                break;
            }
            case NodeKind::join:
                if (node.children.size() != 2) return false;
                for (int c : node.children)
                    if (nodes[static_cast<std::size_t>(c)].bag != node.bag) return false;
                break;
        }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (parents[i] != (static_cast<int>(i) == root ? 0 : 1)) return false;
    return postorder().size() == nodes.size();
}

TreeDecomposition NiceTreeDecomposition::as_tree_decomposition() const {
    TreeDecomposition td;
    for (const auto& node : nodes) td.bags.push_back(node.bag);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (int c : nodes[i].children) td.tree_edges.emplace_back(static_cast<int>(i), c);
    return td;
}

std::vector<int> NiceTreeDecomposition::postorder() const {
    std::vector<int> out;
    if (root < 0) return out;
    std::vector<std::pair<int, bool>> stack{{root, false}};
    std::vector<char> seen(nodes.size(), 0);
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            out.push_back(node);
            continue;
        }
        if (seen[static_cast<std::size_t>(node)]) continue;
        seen[static_cast<std::size_t>(node)] = 1;
        stack.emplace_back(node, true);
        const auto& children = nodes[static_cast<std::size_t>(node)].children;
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.emplace_back(*it, false);
    }
    return out;
}

NiceTreeDecomposition nicify(const TreeDecomposition& input) {
    TreeDecomposition td = input;
    td.normalize();
    if (!is_tree(td.bags.size(), td.tree_edges)) throw std::invalid_argument("decomposition is not a tree");
    if (!vertex_subtrees_connected(td))
        throw std::invalid_argument("decomposition bags of some vertex are not connected");
    return Nicifier(td).run();
}

TreeDecomposition parse_td(std::string_view text) {
    TreeDecomposition td;
    std::size_t declared_bags = 0;
    long long declared_vertices = 0;
    bool have_header = false;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::vector<char> seen_bag;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head == "c") continue;
        auto number = [&](const char* what) {
            long long v = 0;
            if (!(ls >> v)) throw ParseError(line_no, std::string("expected ") + what);
            return v;
        };
        if (head == "s") {
            std::string kind;
            ls >> kind;
            if (kind != "td") throw ParseError(line_no, "expected 's td N W n'");
            const long long bags = number("bag count");
            number("bag size");
            declared_vertices = number("vertex count");
            if (bags < 0) throw ParseError(line_no, "negative bag count");
            declared_bags = static_cast<std::size_t>(bags);
            td.bags.assign(declared_bags, {});
            seen_bag.assign(declared_bags, 0);
            have_header = true;
        } else if (!have_header) {
            throw ParseError(line_no, "missing 's td' header");
        } else if (head == "b") {
            const long long id = number("bag id");
            if (id < 1 || static_cast<std::size_t>(id) > declared_bags) throw ParseError(line_no, "bag id out of range");
            auto& bag = td.bags[static_cast<std::size_t>(id - 1)];
            seen_bag[static_cast<std::size_t>(id - 1)] = 1;
            for (long long v; ls >> v;) {
                if (v < 1 || v > declared_vertices) throw ParseError(line_no, "vertex out of range");
                bag.push_back(static_cast<Vertex>(v - 1));
            }
            if (!ls.eof()) throw ParseError(line_no, "non-integer token in bag");
        } else {
            long long a = 0;
            long long b = 0;
            try {
                a = std::stoll(head);
            } catch (const std::exception&) {
                throw ParseError(line_no, "unexpected token '" + head + "'");
            }
            b = number("tree edge endpoint");
            if (a < 1 || b < 1 || static_cast<std::size_t>(a) > declared_bags ||
                static_cast<std::size_t>(b) > declared_bags)
                throw ParseError(line_no, "tree edge endpoint out of range");
            td.tree_edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
        }
    }
    if (!have_header) throw ParseError(line_no, "missing 's td' header");
    for (std::size_t i = 0; i < declared_bags; ++i)
        if (!seen_bag[i]) throw ParseError(line_no, "bag " + std::to_string(i + 1) + " is never listed");
    td.normalize();
    return td;
}

std::string write_td(const TreeDecomposition& td, std::size_t n) {
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (Vertex v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

}  // namespace cfvs
