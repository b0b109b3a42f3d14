#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cfvs/graph.hpp"

namespace cfvs {

enum class GraphFormat {
    automatic,    // chosen from the header keyword
    dimacs_edge,  // "p edge n m" then "e u v"
    pace_gr,      // "p tw n m" then "u v"
    edge_list,    // "n m" then "u v"
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

GraphFormat parse_graph_format(std::string_view name);

// All formats use 1-indexed vertices; the returned graph is 0-indexed.
// Comment lines start with 'c' (DIMACS, PACE) or '#' (edge list).
Graph parse_graph(std::string_view text, GraphFormat format = GraphFormat::automatic);
Graph read_graph_file(const std::string& path, GraphFormat format = GraphFormat::automatic);

// PACE .gr serialisation.
std::string write_graph_gr(const Graph& g);

// One group per line, space separated 1-indexed vertices. Blank lines and
// 'c'/'#' comments are skipped. Vertices are range-checked against n.
std::vector<VertexSet> parse_groups(std::string_view text, std::size_t n);
std::string write_groups(const std::vector<VertexSet>& groups);

std::string read_text_file(const std::string& path);

}  // namespace cfvs
