#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace cfvs {

using Vertex = int;

// Dense bit-indexed subset of {0, ..., universe-1}.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe);
    VertexSet(std::size_t universe, std::initializer_list<Vertex> members);
    VertexSet(std::size_t universe, const std::vector<Vertex>& members);

    static VertexSet full(std::size_t universe);

    std::size_t universe() const { return universe_; }

    bool contains(Vertex v) const {
        return v >= 0 && static_cast<std::size_t>(v) < universe_ &&
               (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
    }
    void insert(Vertex v);
    void erase(Vertex v);

    std::size_t size() const;
    bool empty() const;

    // Smallest member, or -1 when empty.
    Vertex first() const;
    // Smallest member greater than v, or -1.
    Vertex next(Vertex v) const;

    std::vector<Vertex> members() const;

    bool is_subset_of(const VertexSet& other) const;
    bool intersects(const VertexSet& other) const;

    VertexSet& operator|=(const VertexSet& other);
    VertexSet& operator&=(const VertexSet& other);
    VertexSet& operator-=(const VertexSet& other);
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    VertexSet complement() const;

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }
    // Lexicographic on sorted member lists; used for canonical orderings.
    friend bool operator<(const VertexSet& a, const VertexSet& b);

    // "{1,3,4}" with 0-indexed members, for diagnostics.
    std::string to_string() const;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int bit = __builtin_ctzll(bits);
                f(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(bit)));
                bits &= bits - 1;
            }
        }
    }

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace cfvs
