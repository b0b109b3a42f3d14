#include "cfvs/vertex_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfvs {

namespace {
std::size_t word_count(std::size_t universe) { return (universe + 63) / 64; }
}  // namespace

VertexSet::VertexSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

VertexSet::VertexSet(std::size_t universe, std::initializer_list<Vertex> members)
    : VertexSet(universe) {
    for (Vertex v : members) insert(v);
}

VertexSet::VertexSet(std::size_t universe, const std::vector<Vertex>& members)
    : VertexSet(universe) {
    for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(std::size_t universe) {
    VertexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    if (universe % 64 != 0 && !s.words_.empty())
        s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
    return s;
}

void VertexSet::insert(Vertex v) {
    if (v < 0 || static_cast<std::size_t>(v) >= universe_)
        throw std::out_of_range("vertex " + std::to_string(v) + " outside universe of size " +
                                std::to_string(universe_));
    words_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
}

void VertexSet::erase(Vertex v) {
    if (v < 0 || static_cast<std::size_t>(v) >= universe_) return;
    words_[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

std::size_t VertexSet::size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

bool VertexSet::empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

Vertex VertexSet::first() const { return next(-1); }

Vertex VertexSet::next(Vertex v) const {
    std::size_t start = static_cast<std::size_t>(v + 1);
    if (start >= universe_) return -1;
    std::size_t w = start >> 6;
    std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (start & 63));
    while (true) {
        if (bits) return static_cast<Vertex>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
        if (++w >= words_.size()) return -1;
        bits = words_[w];
    }
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    out.reserve(size());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        const std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
        if (words_[i] & ~o) return false;
    }
    return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i)
        if (words_[i] & other.words_[i]) return true;
    return false;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
    if (other.universe_ > universe_) {
        universe_ = other.universe_;
        words_.resize(other.words_.size(), 0);
    }
    for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
    return *this;
}

VertexSet VertexSet::complement() const { return full(universe_) - *this; }

bool operator<(const VertexSet& a, const VertexSet& b) {
    Vertex x = a.first();
    Vertex y = b.first();
    while (x != -1 && y != -1) {
        if (x != y) return x < y;
        x = a.next(x);
        y = b.next(y);
    }
    return x == -1 && y != -1;
}

std::string VertexSet::to_string() const {
    std::string s = "{";
    bool first_member = true;
    for_each([&](Vertex v) {
        if (!first_member) s += ',';
        s += std::to_string(v);
        first_member = false;
    });
    return s + "}";
}

}  // namespace cfvs
