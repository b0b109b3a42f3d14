#include "cfvs/fvs_enum.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cfvs {

bool CompactRepresentation::pairwise_disjoint() const {
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (sets[i].intersects(sets[j])) return false;
    return true;
}

std::uint64_t CompactRepresentation::choice_count() const {
    std::uint64_t count = 1;
    for (const auto& s : sets) {
        const std::uint64_t size = s.size();
        if (size != 0 && count > std::numeric_limits<std::uint64_t>::max() / size)
            return std::numeric_limits<std::uint64_t>::max();
        count *= size;
    }
    return count;
}

void CompactRepresentation::canonicalize() { std::sort(sets.begin(), sets.end()); }

std::vector<VertexSet> enumerate_minimal_fvs(const Graph& g, std::size_t k) {
    const std::size_t n = g.num_vertices();
    std::vector<VertexSet> out;
    std::vector<Vertex> pick;
    auto is_minimal = [&](const VertexSet& s) {
        bool minimal = true;
        s.for_each([&](Vertex v) {
            if (!minimal) return;
            auto smaller = s;
            smaller.erase(v);
            if (is_feedback_vertex_set(g, smaller)) minimal = false;
        });
        return minimal;
    };
    // Subsets in order of size, each size in lexicographic order.
    for (std::size_t size = 0; size <= std::min(k, n); ++size) {
        pick.resize(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<Vertex>(i);
        while (true) {
            VertexSet s(n, pick);
            if (is_feedback_vertex_set(g, s) && is_minimal(s)) out.push_back(std::move(s));
            std::size_t i = size;
            while (i > 0 && static_cast<std::size_t>(pick[i - 1]) == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

namespace {

// A path of the current graph whose interior vertices (all of degree two
// once contracted) are kept in `chain`; deleting any one of them breaks the
// same cycles. Loops have a == b.
struct Link {
    Vertex a;
    Vertex b;
    std::vector<Vertex> chain;

    bool loop() const { return a == b; }
    bool touches(Vertex v) const { return a == v || b == v; }
    Vertex other(Vertex v) const { return a == v ? b : a; }
};

struct State {
    std::vector<char> alive;
    std::vector<char> frozen;  // vertex must stay in the forest
    std::vector<Link> links;
    std::vector<VertexSet> classes;
    std::size_t budget = 0;
};

class Enumerator {
public:
    Enumerator(std::size_t n, EnumStats* stats) : n_(n), stats_(stats) {}

    void run(State state) {
        if (stats_) ++stats_->branch_nodes;
        if (!reduce(state)) return;
        if (std::none_of(state.alive.begin(), state.alive.end(), [](char a) { return a != 0; })) {
            emit(state);
            return;
        }
        // Every surviving vertex has degree >= 2, so a cycle remains.
        if (state.budget == 0) return;

        const Vertex v = pick_branch_vertex(state);
        if (v >= 0) {
            State take = state;
            delete_vertex(take, v);
            take_class(take, VertexSet(n_, {v}));
            run(std::move(take));
            state.frozen[static_cast<std::size_t>(v)] = 1;
            run(std::move(state));
            return;
        }

        // Only forest-bound vertices remain; branch on a chain.
        const auto it = std::find_if(state.links.begin(), state.links.end(),
                                     [](const Link& l) { return !l.chain.empty(); });
        if (it == state.links.end()) throw std::logic_error("fvs enumeration: irreducible state without chains");
        const auto index = static_cast<std::size_t>(it - state.links.begin());
        State cut = state;
        VertexSet cls(n_, cut.links[index].chain);
        cut.links.erase(cut.links.begin() + static_cast<std::ptrdiff_t>(index));
        take_class(cut, std::move(cls));
        run(std::move(cut));
        state.links[index].chain.clear();
        run(std::move(state));
    }

    std::vector<CompactRepresentation> take_results() { return std::move(results_); }

private:
    static std::size_t degree(const State& s, Vertex v) {
        std::size_t d = 0;
        for (const auto& l : s.links) {
            if (l.loop() && l.a == v) d += 2;
            else if (l.touches(v)) d += 1;
        }
        return d;
    }

    static void delete_vertex(State& s, Vertex v) {
        std::erase_if(s.links, [v](const Link& l) { return l.touches(v); });
        s.alive[static_cast<std::size_t>(v)] = 0;
    }

    static void take_class(State& s, VertexSet cls) {
        if (s.budget == 0) {
            s.budget = std::numeric_limits<std::size_t>::max();  // marks the state infeasible
            return;
        }
        --s.budget;
        s.classes.push_back(std::move(cls));
    }

    static bool infeasible(const State& s) { return s.budget == std::numeric_limits<std::size_t>::max(); }

    // Applies one reduction rule; returns false when none applies.
    bool reduce_once(State& s, bool& feasible) const {
        for (Vertex v = 0; static_cast<std::size_t>(v) < n_; ++v) {
            if (!s.alive[static_cast<std::size_t>(v)]) continue;
            const bool frozen = s.frozen[static_cast<std::size_t>(v)] != 0;
            const std::size_t deg = degree(s, v);
            if (deg <= 1) {
                delete_vertex(s, v);
                return true;
            }
            const auto loop = std::find_if(s.links.begin(), s.links.end(),
                                           [v](const Link& l) { return l.loop() && l.a == v; });
            if (loop != s.links.end()) {
                if (deg == 2) {
                    // An isolated cycle: any one of its vertices breaks it.
                    VertexSet cls(n_, loop->chain);
                    if (!frozen) cls.insert(v);
                    if (cls.empty()) {
                        feasible = false;
                        return false;
                    }
                    delete_vertex(s, v);
                    take_class(s, std::move(cls));
                    return true;
                }
                if (frozen) {
                    if (loop->chain.empty()) {
                        feasible = false;
                        return false;
                    }
                    VertexSet cls(n_, loop->chain);
                    s.links.erase(loop);
                    take_class(s, std::move(cls));
                    return true;
                }
                if (loop->chain.empty()) {
                    delete_vertex(s, v);
                    take_class(s, VertexSet(n_, {v}));
                    return true;
                }
                continue;
            }
            if (deg == 2) {
                std::vector<std::size_t> incident;
                for (std::size_t i = 0; i < s.links.size(); ++i)
                    if (s.links[i].touches(v)) incident.push_back(i);
                const Link& first = s.links[incident[0]];
                const Link& second = s.links[incident[1]];
                Link merged{first.other(v), second.other(v), first.chain};
                if (!frozen) merged.chain.push_back(v);
                merged.chain.insert(merged.chain.end(), second.chain.begin(), second.chain.end());
                if (merged.a > merged.b) std::swap(merged.a, merged.b);
                s.links.erase(s.links.begin() + static_cast<std::ptrdiff_t>(incident[1]));
                s.links.erase(s.links.begin() + static_cast<std::ptrdiff_t>(incident[0]));
                s.links.push_back(std::move(merged));
                s.alive[static_cast<std::size_t>(v)] = 0;
                return true;
            }
        }
        // A chain-free link between two forest-bound vertices is never cut:
        // contract it.
        for (std::size_t i = 0; i < s.links.size(); ++i) {
            const Link& l = s.links[i];
            if (l.loop() || !l.chain.empty()) continue;
            if (!s.frozen[static_cast<std::size_t>(l.a)] || !s.frozen[static_cast<std::size_t>(l.b)]) continue;
            const Vertex keep = l.a;
            const Vertex gone = l.b;
            s.links.erase(s.links.begin() + static_cast<std::ptrdiff_t>(i));
            for (auto& other : s.links) {
                if (other.a == gone) other.a = keep;
                if (other.b == gone) other.b = keep;
                if (other.a > other.b) std::swap(other.a, other.b);
            }
            s.alive[static_cast<std::size_t>(gone)] = 0;
            return true;
        }
        return false;
    }

    bool reduce(State& s) const {
        bool feasible = true;
        while (reduce_once(s, feasible)) {
            if (infeasible(s)) return false;
        }
        return feasible && !infeasible(s);
    }

    // A deletable vertex carrying a loop, otherwise a deletable vertex of
    // maximum degree; -1 if every vertex is forest-bound.
    static Vertex pick_branch_vertex(const State& s) {
        Vertex best = -1;
        std::size_t best_degree = 0;
        for (Vertex v = 0; static_cast<std::size_t>(v) < s.alive.size(); ++v) {
            if (!s.alive[static_cast<std::size_t>(v)] || s.frozen[static_cast<std::size_t>(v)]) continue;
            const bool has_loop =
                std::any_of(s.links.begin(), s.links.end(), [v](const Link& l) { return l.loop() && l.a == v; });
            if (has_loop) return v;
            const std::size_t d = degree(s, v);
            if (d > best_degree) {
                best = v;
                best_degree = d;
            }
        }
        return best;
    }

    void emit(const State& s) {
        CompactRepresentation rep{s.classes};
        rep.canonicalize();
        if (!rep.pairwise_disjoint()) throw std::logic_error("fvs enumeration emitted overlapping sets");
        if (stats_) ++stats_->emitted;
        results_.push_back(std::move(rep));
    }

    std::size_t n_;
    EnumStats* stats_;
    std::vector<CompactRepresentation> results_;
};

std::vector<std::vector<Vertex>> sorted_lists(const CompactRepresentation& rep) {
    std::vector<std::vector<Vertex>> out;
    for (const auto& s : rep.sets) out.push_back(s.members());
    return out;
}

}  // namespace

std::vector<CompactRepresentation> enumerate_compact_representations(const Graph& g, std::size_t k,
                                                                     EnumStats* stats) {
    return enumerate_compact_representations(g, k, g.empty_set(), stats);
}

std::vector<CompactRepresentation> enumerate_compact_representations(const Graph& g, std::size_t k,
                                                                     const VertexSet& forbidden,
                                                                     EnumStats* stats) {
    const std::size_t n = g.num_vertices();
    State initial;
    initial.alive.assign(n, 1);
    initial.frozen.assign(n, 0);
    forbidden.for_each([&](Vertex v) {
        if (static_cast<std::size_t>(v) < n) initial.frozen[static_cast<std::size_t>(v)] = 1;
    });
    for (auto [u, v] : g.edges()) initial.links.push_back(Link{u, v, {}});
    initial.budget = k;

    Enumerator enumerator(n, stats);
    enumerator.run(std::move(initial));
    auto reps = enumerator.take_results();

    // Deduplicate by canonical family; fewest sets first, then lexicographic.
    std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return sorted_lists(a) < sorted_lists(b);
    });
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    for (const auto& rep : reps)
        if (rep.size() > k) throw std::logic_error("fvs enumeration exceeded the budget");
    return reps;
}

ChoiceStream::ChoiceStream(const CompactRepresentation& rep, std::size_t universe)
    : sets_(sorted_lists(rep)), index_(rep.sets.size(), 0), universe_(universe) {
    done_ = std::any_of(sets_.begin(), sets_.end(), [](const auto& s) { return s.empty(); });
}

std::optional<VertexSet> ChoiceStream::next() {
    if (done_) return std::nullopt;
    VertexSet out(universe_);
    for (std::size_t i = 0; i < sets_.size(); ++i) out.insert(sets_[i][index_[i]]);
    // Odometer increment, last set fastest.
    std::size_t i = sets_.size();
    while (i > 0) {
        --i;
        if (++index_[i] < sets_[i].size()) return out;
        index_[i] = 0;
    }
    done_ = true;
    return out;
}

std::vector<VertexSet> realize_choices(const CompactRepresentation& rep, std::size_t universe) {
    std::vector<VertexSet> out;
    ChoiceStream stream(rep, universe);
    while (auto choice = stream.next()) out.push_back(std::move(*choice));
    return out;
}

namespace {

bool is_minimal_fvs(const Graph& g, const VertexSet& s) {
    if (!is_feedback_vertex_set(g, s)) return false;
    bool minimal = true;
    s.for_each([&](Vertex v) {
        if (!minimal) return;
        auto smaller = s;
        smaller.erase(v);
        minimal = !is_feedback_vertex_set(g, smaller);
    });
    return minimal;
}

}  // namespace

bool verify_compact_rep(const Graph& g, const CompactRepresentation& rep, std::size_t k, bool require_minimal) {
    if (rep.size() > k || !rep.pairwise_disjoint()) return false;
    ChoiceStream stream(rep, g.num_vertices());
    bool any = false;
    while (auto choice = stream.next()) {
        any = true;
        if (require_minimal ? !is_minimal_fvs(g, *choice) : !is_feedback_vertex_set(g, *choice)) return false;
    }
    return any;
}

std::vector<CompactRepresentation> minimal_part(const Graph& g, const CompactRepresentation& rep) {
    if (verify_compact_rep(g, rep, rep.size(), true)) return {rep};
    std::vector<CompactRepresentation> out;
    ChoiceStream stream(rep, g.num_vertices());
    while (auto choice = stream.next()) {
        if (!is_minimal_fvs(g, *choice)) continue;
        CompactRepresentation single;
        choice->for_each([&](Vertex v) { single.sets.emplace_back(g.num_vertices(), std::vector<Vertex>{v}); });
        out.push_back(std::move(single));
    }
    return out;
}

std::string write_representations(const std::vector<CompactRepresentation>& reps) {
    std::ostringstream out;
    for (std::size_t r = 0; r < reps.size(); ++r) {
        if (r > 0) out << '\n';
        if (reps[r].sets.empty()) out << "-\n";
        for (const auto& set : reps[r].sets) {
            bool first = true;
            set.for_each([&](Vertex v) {
                out << (first ? "" : " ") << v + 1;
                first = false;
            });
            out << '\n';
        }
    }
    return out.str();
}

std::vector<CompactRepresentation> parse_representations(std::string_view text, std::size_t n) {
    std::vector<CompactRepresentation> reps;
    std::optional<CompactRepresentation> current;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    auto flush = [&] {
        if (current) reps.push_back(std::move(*current));
        current.reset();
    };
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::istringstream line{std::string(text.substr(pos, end - pos))};
        pos = end + 1;
        std::vector<std::string> tokens;
        for (std::string tok; line >> tok;) tokens.push_back(tok);
        if (tokens.empty()) {
            flush();
            continue;
        }
        if (!current) current.emplace();
        if (tokens.size() == 1 && tokens[0] == "-") continue;
        VertexSet set(n);
        for (const auto& tok : tokens) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || v < 1 || static_cast<std::size_t>(v) > n)
                throw std::invalid_argument("line " + std::to_string(line_no) + ": bad vertex '" + tok + "'");
            set.insert(static_cast<Vertex>(v - 1));
        }
        current->sets.push_back(std::move(set));
    }
    flush();
    return reps;
}

}  // namespace cfvs
