#include "cfvs/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cfvs {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long long parse_int(std::string_view tok, std::size_t line) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected an integer, found '" + std::string(tok) + "'");
    return value;
}

struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto tokens = split_tokens(text.substr(pos, end - pos));
        if (!tokens.empty() && tokens[0] != "c" && tokens[0][0] != '#')
            out.push_back({number, std::move(tokens)});
        pos = end + 1;
    }
    return out;
}

Vertex parse_endpoint(std::string_view tok, std::size_t n, std::size_t line) {
    const long long v = parse_int(tok, line);
    if (v < 1 || static_cast<std::size_t>(v) > n)
        throw ParseError(line, "vertex " + std::string(tok) + " out of range 1.." + std::to_string(n));
    return static_cast<Vertex>(v - 1);
}

std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
    const long long v = parse_int(tok, line);
    if (v < 0) throw ParseError(line, std::string("negative ") + what);
    return static_cast<std::size_t>(v);
}

}  // namespace

GraphFormat parse_graph_format(std::string_view name) {
    if (name == "auto") return GraphFormat::automatic;
    if (name == "dimacs" || name == "dimacs-edge") return GraphFormat::dimacs_edge;
    if (name == "gr" || name == "pace" || name == "pace-gr") return GraphFormat::pace_gr;
    if (name == "edge-list" || name == "edges") return GraphFormat::edge_list;
    throw std::invalid_argument("unknown graph format '" + std::string(name) + "'");
}

Graph parse_graph(std::string_view text, GraphFormat format) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError(1, "missing header");
    const Line& header = lines.front();

    if (format == GraphFormat::automatic) {
        if (header.tokens[0] == "p" && header.tokens.size() >= 2 && header.tokens[1] == "tw")
            format = GraphFormat::pace_gr;
        else if (header.tokens[0] == "p")
            format = GraphFormat::dimacs_edge;
        else
            format = GraphFormat::edge_list;
    }

    std::size_t n = 0;
    std::size_t m = 0;
    if (format == GraphFormat::edge_list) {
        if (header.tokens.size() != 2) throw ParseError(header.number, "expected header 'n m'");
        n = parse_count(header.tokens[0], header.number, "vertex count");
        m = parse_count(header.tokens[1], header.number, "edge count");
    } else {
        const char* keyword = format == GraphFormat::pace_gr ? "tw" : "edge";
        if (header.tokens.size() != 4 || header.tokens[0] != "p" ||
            (header.tokens[1] != keyword && !(format == GraphFormat::dimacs_edge && header.tokens[1] == "col")))
            throw ParseError(header.number, std::string("expected header 'p ") + keyword + " n m'");
        n = parse_count(header.tokens[2], header.number, "vertex count");
        m = parse_count(header.tokens[3], header.number, "edge count");
    }

    Graph g(n);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        std::size_t offset = 0;
        if (format == GraphFormat::dimacs_edge) {
            if (l.tokens[0] != "e") throw ParseError(l.number, "expected edge line 'e u v'");
            offset = 1;
        }
        if (l.tokens.size() != offset + 2) throw ParseError(l.number, "expected exactly two endpoints");
        const Vertex u = parse_endpoint(l.tokens[offset], n, l.number);
        const Vertex v = parse_endpoint(l.tokens[offset + 1], n, l.number);
        g.add_edge(u, v);
    }
    if (g.num_edges() != m)
        throw ParseError(header.number, "header declares " + std::to_string(m) + " edges, found " +
                                            std::to_string(g.num_edges()));
    return g;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Graph read_graph_file(const std::string& path, GraphFormat format) {
    return parse_graph(read_text_file(path), format);
}

std::string write_graph_gr(const Graph& g) {
    std::ostringstream out;
    out << "p tw " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

std::vector<VertexSet> parse_groups(std::string_view text, std::size_t n) {
    std::vector<VertexSet> groups;
    for (const Line& l : content_lines(text)) {
        VertexSet group(n);
        for (auto tok : l.tokens) group.insert(parse_endpoint(tok, n, l.number));
        groups.push_back(std::move(group));
    }
    return groups;
}

std::string write_groups(const std::vector<VertexSet>& groups) {
    std::ostringstream out;
    for (const auto& group : groups) {
        bool first = true;
        group.for_each([&](Vertex v) {
            out << (first ? "" : " ") << v + 1;
            first = false;
        });
        out << '\n';
    }
    return out.str();
}

}  // namespace cfvs
