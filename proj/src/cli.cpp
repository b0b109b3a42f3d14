#include "cfvs/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfvs/bench.hpp"
#include "cfvs/fvs_enum.hpp"
#include "cfvs/generators.hpp"
#include "cfvs/graph_io.hpp"
#include "cfvs/solver.hpp"
#include "cfvs/steiner.hpp"
#include "cfvs/tree_decomposition.hpp"
#include "cfvs/treewidth_dp.hpp"

namespace cfvs {

namespace {

using json = nlohmann::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

// greedy width at or below this picks treewidth-dp when --method is omitted
constexpr int kDpWidthThreshold = 8;

struct Common {
    std::string format = "auto";
    std::string counting = "exact";
    std::uint64_t seed = 1;
    int threads = 1;
    bool json_out = true;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "graph format: auto, dimacs, gr, edges")
        ->check(CLI::IsMember({"auto", "dimacs", "gr", "pace", "edges", "edge-list"}));
    cmd->add_option("--counting", c.counting, "walk counting: exact or modular")
        ->check(CLI::IsMember({"exact", "modular"}));
    cmd->add_option("--seed", c.seed, "seed for modular counting");
    cmd->add_option("--threads", c.threads, "worker bound (execution is sequential)")->check(CLI::PositiveNumber);
    auto* j = cmd->add_flag("--json", c.json_out, "JSON output (default)");
    auto* p = cmd->add_flag("--plain{false}", c.json_out, "line-oriented output");
    j->excludes(p);
}

CountingOptions counting_options(const Common& c) {
    CountingOptions o;
    o.mode = c.counting == "modular" ? CountingMode::modular : CountingMode::exact;
    o.seed = c.seed;
    return o;
}

json vertex_list(const VertexSet& s) {
    json arr = json::array();
    s.for_each([&](Vertex v) { arr.push_back(v + 1); });
    return arr;
}

std::string plain_vertices(const VertexSet& s) {
    std::string line;
    s.for_each([&](Vertex v) {
        if (!line.empty()) line += ' ';
        line += std::to_string(v + 1);
    });
    return line;
}

void add_counting_fields(json& doc, const Common& c, std::uint64_t modulus) {
    doc["counting"] = c.counting;
    if (c.counting == "modular") doc["modulus"] = modulus ? modulus : random_prime_62(c.seed);
}

// "p arc n m" with "a u v" lines, or an "n m" header with "u v" lines.
Digraph parse_digraph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0, declared = 0, seen = 0;
    bool have_header = false;
    Digraph d;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == 'c' || first[0] == '#') continue;
        std::vector<std::string> tok{first};
        for (std::string t; ls >> t;) tok.push_back(t);
        auto number = [&](const std::string& t) -> std::size_t {
            try {
                std::size_t pos = 0;
                const long long v = std::stoll(t, &pos);
                if (pos != t.size() || v < 0) throw std::invalid_argument(t);
                return static_cast<std::size_t>(v);
            } catch (const std::exception&) {
                throw ParseError(lineno, "expected a non-negative integer, got '" + t + "'");
            }
        };
        if (!have_header) {
            if (tok[0] == "p") {
                if (tok.size() != 4) throw ParseError(lineno, "expected 'p arc n m'");
                tok.erase(tok.begin(), tok.begin() + 2);
            }
            if (tok.size() != 2) throw ParseError(lineno, "expected a header 'n m'");
            d = Digraph(number(tok[0]));
            declared = number(tok[1]);
            have_header = true;
            continue;
        }
        if (tok[0] == "a") tok.erase(tok.begin());
        if (tok.size() != 2) throw ParseError(lineno, "expected an arc 'u v'");
        const std::size_t u = number(tok[0]), v = number(tok[1]);
        if (u < 1 || v < 1 || u > d.num_vertices() || v > d.num_vertices())
            throw ParseError(lineno, "vertex out of range");
        d.add_arc(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
        ++seen;
    }
    if (!have_header) throw ParseError(lineno, "missing header");
    if (seen != declared)
        throw ParseError(lineno, "header declares " + std::to_string(declared) + " arcs, found " + std::to_string(seen));
    return d;
}

VertexSet parse_vertex_list(std::string_view text, std::size_t n) {
    VertexSet out(n);
    for (const auto& group : parse_groups(text, n)) out |= group;
    return out;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

// ---- solve

struct SolveArgs {
    Common common;
    std::string graph;
    std::string method;
    std::string td;
    long long k = -1;
    int max_width = -1;
    bool optimize = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
    const Graph g = read_graph_file(a.graph, parse_graph_format(a.common.format));
    if (!a.optimize && a.k < 0) throw std::invalid_argument("--k is required unless --optimize is given");

    SolveOptions opts;
    opts.counting = counting_options(a.common);
    opts.max_width = a.max_width;
    if (!a.td.empty()) opts.td = parse_td(read_text_file(a.td));

    Method method;
    if (!a.method.empty()) {
        method = parse_method(a.method);
    } else {
        if (!opts.td) opts.td = greedy_td(g);
        const bool fits = opts.td->width() <= kDpWidthThreshold &&
                          (a.max_width < 0 || opts.td->width() <= a.max_width);
        method = fits ? Method::treewidth_dp : Method::compact_gst;
    }

    SolveStats stats;
    std::optional<CfvsSolution> sol;
    if (a.optimize) {
        sol = solve_cfvs_optimum(g, method, opts, &stats);
        if (sol && a.k >= 0 && sol->vertices.size() > static_cast<std::size_t>(a.k)) sol.reset();
    } else {
        sol = solve_cfvs({g, static_cast<std::size_t>(a.k)}, method, opts, &stats);
    }

    if (a.common.json_out) {
        json doc;
        doc["status"] = sol ? "yes" : "no";
        doc["size"] = sol ? json(sol->vertices.size()) : json(nullptr);
        doc["vertices"] = sol ? vertex_list(sol->vertices) : json::array();
        doc["method"] = to_string(method);
        doc["k"] = a.k >= 0 ? json(a.k) : json(nullptr);
        doc["optimize"] = a.optimize;
        add_counting_fields(doc, a.common, opts.counting.modulus);
        doc["stats"] = {{"reps_tried", stats.reps_tried},
                        {"subsets_evaluated", stats.subsets_evaluated},
                        {"dp_rows", stats.dp_rows},
                        {"elapsed_ms", stats.elapsed_ms}};
        out << doc.dump(2) << '\n';
    } else {
        out << "status " << (sol ? "yes" : "no") << '\n';
        if (sol) {
            out << "size " << sol->vertices.size() << '\n';
            out << "vertices " << plain_vertices(sol->vertices) << '\n';
        }
        out << "method " << to_string(method) << '\n';
    }
    return sol ? kExitYes : kExitNo;
}

// ---- gst / dsot

struct GstArgs {
    Common common;
    std::string graph;
    std::string groups;
    std::size_t p = 0;
    bool witness = false;
};

int cmd_gst(const GstArgs& a, std::ostream& out) {
    GstInstance inst;
    inst.graph = read_graph_file(a.graph, parse_graph_format(a.common.format));
    inst.groups = parse_groups(read_text_file(a.groups), inst.graph.num_vertices());
    inst.max_vertices = a.p;
    inst.validate();

    const auto counting = counting_options(a.common);
    SteinerStats stats;
    std::optional<VertexSet> tree;
    bool yes;
    if (a.witness) {
        tree = gst_extract_tree(inst, counting, &stats);
        yes = tree.has_value();
    } else {
        yes = gst_decide(inst, counting, &stats);
    }

    if (a.common.json_out) {
        json doc;
        doc["status"] = yes ? "yes" : "no";
        if (tree) doc["tree"] = vertex_list(*tree);
        doc["p"] = a.p;
        doc["groups"] = inst.groups.size();
        add_counting_fields(doc, a.common, stats.modulus);
        doc["stats"] = {{"subsets_evaluated", stats.subsets_evaluated},
                        {"roots_tried", stats.roots_tried},
                        {"decide_calls", stats.decide_calls}};
        out << doc.dump(2) << '\n';
    } else {
        out << "status " << (yes ? "yes" : "no") << '\n';
        if (tree) out << "tree " << plain_vertices(*tree) << '\n';
    }
    return yes ? kExitYes : kExitNo;
}

struct DsotArgs {
    Common common;
    std::string digraph;
    std::string terminals;
    std::size_t p = 0;
    std::size_t root = 1;
};

int cmd_dsot(const DsotArgs& a, std::ostream& out) {
    DsotInstance inst;
    inst.digraph = parse_digraph(read_text_file(a.digraph));
    const std::size_t n = inst.digraph.num_vertices();
    if (a.root < 1 || a.root > n) throw std::invalid_argument("--root out of range");
    inst.root = static_cast<Vertex>(a.root - 1);
    inst.terminals = parse_vertex_list(read_text_file(a.terminals), n);
    inst.max_vertices = a.p;

    SteinerStats stats;
    const bool yes = dsot_decide(inst, counting_options(a.common), &stats);
    if (a.common.json_out) {
        json doc;
        doc["status"] = yes ? "yes" : "no";
        doc["p"] = a.p;
        doc["root"] = a.root;
        doc["terminals"] = vertex_list(inst.terminals);
        add_counting_fields(doc, a.common, stats.modulus);
        doc["stats"] = {{"subsets_evaluated", stats.subsets_evaluated}};
        out << doc.dump(2) << '\n';
    } else {
        out << "status " << (yes ? "yes" : "no") << '\n';
    }
    return yes ? kExitYes : kExitNo;
}

// ---- enum

struct EnumArgs {
    std::string format = "auto";
    std::string graph;
    std::size_t k = 0;
    bool verify = false;
    bool minimal = false;
};

int cmd_enum(const EnumArgs& a, std::ostream& out, std::ostream& err) {
    const Graph g = read_graph_file(a.graph, parse_graph_format(a.format));
    auto reps = enumerate_compact_representations(g, a.k);
    if (a.minimal) {
        std::vector<CompactRepresentation> split;
        for (const auto& rep : reps)
            for (auto& part : minimal_part(g, rep)) split.push_back(std::move(part));
        reps = std::move(split);
    }
    if (a.verify) {
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (!verify_compact_rep(g, reps[i], a.k, a.minimal)) {
                err << "representation " << i + 1 << " failed verification\n";
                return kExitError;
            }
        }
    }
    out << write_representations(reps);
    return kExitYes;
}

// ---- gen

struct GenArgs {
    std::string family;
    std::vector<std::size_t> params;
    std::size_t n = 10;
    std::size_t m = 15;
    std::uint64_t seed = 1;
    std::string output;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    auto need = [&](std::size_t count, const char* usage) {
        if (a.params.size() != count) throw std::invalid_argument(std::string("usage: gen ") + usage);
    };
    Graph g;
    if (a.family == "random-gnm") {
        need(0, "random-gnm --n N --m M --seed S");
        g = random_gnm(a.n, a.m, a.seed);
    } else if (a.family == "random-multigraph") {
        need(0, "random-multigraph --n N --m M --seed S");
        g = random_multigraph(a.n, a.m, a.seed);
    } else if (a.family == "disjoint-cycles") {
        need(2, "disjoint-cycles R L");
        g = disjoint_cycles(a.params[0], a.params[1]);
    } else if (a.family == "cvc-gadget") {
        need(0, "cvc-gadget --n N --m M --seed S");
        g = cvc_to_cfvs(random_gnm(a.n, a.m, a.seed));
    } else if (a.family == "grid") {
        if (a.params.size() == 1) g = grid_graph(a.params[0], a.params[0]);
        else {
            need(2, "grid W [H]");
            g = grid_graph(a.params[0], a.params[1]);
        }
    } else {
        throw std::invalid_argument("unknown family '" + a.family + "'");
    }
    write_output(a.output, write_graph_gr(g), out);
    return kExitYes;
}

// ---- td-validate / td-nicify

struct TdArgs {
    std::string format = "auto";
    std::string graph;
    std::string td;
    bool json_out = false;
};

int cmd_td_validate(const TdArgs& a, std::ostream& out) {
    const Graph g = read_graph_file(a.graph, parse_graph_format(a.format));
    auto td = parse_td(read_text_file(a.td));
    td.normalize();
    const bool ok = validate_td(g, td);
    out << (ok ? "valid" : "invalid") << " width " << td.width() << '\n';
    return ok ? kExitYes : kExitNo;
}

int cmd_td_nicify(const TdArgs& a, std::ostream& out) {
    auto td = parse_td(read_text_file(a.td));
    td.normalize();
    const auto ntd = nicify(td);
    if (a.json_out) {
        json nodes = json::array();
        for (const auto& node : ntd.nodes) {
            json bag = json::array();
            for (Vertex v : node.bag) bag.push_back(v + 1);
            json j = {{"kind", to_string(node.kind)}, {"bag", bag}, {"children", node.children}};
            if (node.kind == NodeKind::introduce || node.kind == NodeKind::forget) j["vertex"] = node.vertex + 1;
            nodes.push_back(j);
        }
        out << json{{"root", ntd.root}, {"width", ntd.width()}, {"nodes", nodes}}.dump(2) << '\n';
        return kExitYes;
    }
    out << "root " << ntd.root << " width " << ntd.width() << " nodes " << ntd.nodes.size() << '\n';
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        const auto& node = ntd.nodes[i];
        out << i << ' ' << to_string(node.kind);
        if (node.kind == NodeKind::introduce || node.kind == NodeKind::forget) out << ' ' << node.vertex + 1;
        out << " bag";
        for (Vertex v : node.bag) out << ' ' << v + 1;
        out << " children";
        for (int c : node.children) out << ' ' << c;
        out << '\n';
    }
    return kExitYes;
}

// ---- bench

struct BenchArgs {
    Common common;
    std::string dir;
    std::vector<std::string> methods;
    std::string csv;
    std::string scaling;
    int repetitions = 5;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    if (!a.scaling.empty()) {
        std::vector<ScalingPoint> points;
        if (a.scaling == "gst") points = gst_scaling(40, 8, 1, 9, a.repetitions, a.common.seed);
        else points = dp_scaling(40, 4, a.repetitions, a.common.seed);
        const auto csv = scaling_csv(points, a.scaling == "gst" ? "l" : "w");
        if (!a.csv.empty()) write_output(a.csv, csv, out);
        else out << csv;
        return kExitYes;
    }
    if (a.dir.empty()) throw std::invalid_argument("bench needs a corpus directory or --scaling");
    std::vector<Method> methods;
    for (const auto& m : a.methods) methods.push_back(parse_method(m));
    if (methods.empty()) methods = {Method::compact_gst, Method::treewidth_dp};
    SolveOptions opts;
    opts.counting = counting_options(a.common);
    const auto records = bench_corpus(a.dir, methods, opts);
    if (!a.csv.empty()) write_output(a.csv, bench_csv(records), out);
    out << bench_table(records);
    return kExitYes;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Connected feedback vertex set solvers and utilities", "cfvs"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "decide or optimise connected FVS");
    solve_cmd->add_option("graph", solve.graph, "graph file")->required();
    solve_cmd->add_option("--k", solve.k, "budget");
    solve_cmd->add_option("--method", solve.method, "compact-gst, treewidth-dp or brute-force");
    solve_cmd->add_option("--td", solve.td, "tree decomposition (.td) for treewidth-dp");
    solve_cmd->add_option("--max-width", solve.max_width, "reject decompositions wider than this");
    solve_cmd->add_flag("--optimize", solve.optimize, "report the minimum size");
    add_common(solve_cmd, solve.common);

    GstArgs gst;
    auto* gst_cmd = app.add_subcommand("gst", "group Steiner tree decision");
    gst_cmd->add_option("graph", gst.graph, "graph file")->required();
    gst_cmd->add_option("groups", gst.groups, "groups file")->required();
    gst_cmd->add_option("--p", gst.p, "maximum tree vertices")->required();
    gst_cmd->add_flag("--witness", gst.witness, "also print a tree");
    add_common(gst_cmd, gst.common);

    DsotArgs dsot;
    auto* dsot_cmd = app.add_subcommand("dsot", "directed Steiner out-tree decision");
    dsot_cmd->add_option("digraph", dsot.digraph, "digraph file")->required();
    dsot_cmd->add_option("terminals", dsot.terminals, "terminals file")->required();
    dsot_cmd->add_option("--p", dsot.p, "maximum tree vertices")->required();
    dsot_cmd->add_option("--root", dsot.root, "root vertex (1-indexed)")->required();
    add_common(dsot_cmd, dsot.common);

    EnumArgs en;
    auto* enum_cmd = app.add_subcommand("enum", "compact representations of minimal FVSs");
    enum_cmd->add_option("graph", en.graph, "graph file")->required();
    enum_cmd->add_option("--k", en.k, "budget")->required();
    enum_cmd->add_flag("--verify", en.verify, "check every representation");
    enum_cmd->add_flag("--minimal", en.minimal, "keep only minimal choices");
    enum_cmd->add_option("--format", en.format, "graph format");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate an instance in .gr format");
    gen_cmd->add_option("family", gen.family, "random-gnm, random-multigraph, disjoint-cycles, cvc-gadget, grid")
        ->required();
    gen_cmd->add_option("params", gen.params, "family parameters");
    gen_cmd->add_option("--n", gen.n, "vertices");
    gen_cmd->add_option("--m", gen.m, "edges");
    gen_cmd->add_option("--seed", gen.seed, "seed");
    gen_cmd->add_option("-o,--output", gen.output, "output file");

    TdArgs tdv;
    auto* tdv_cmd = app.add_subcommand("td-validate", "check a tree decomposition");
    tdv_cmd->add_option("graph", tdv.graph, "graph file")->required();
    tdv_cmd->add_option("td", tdv.td, ".td file")->required();
    tdv_cmd->add_option("--format", tdv.format, "graph format");

    TdArgs tdn;
    auto* tdn_cmd = app.add_subcommand("td-nicify", "print a nice tree decomposition");
    tdn_cmd->add_option("td", tdn.td, ".td file")->required();
    tdn_cmd->add_flag("--json", tdn.json_out, "JSON output");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "run a corpus or a scaling sweep");
    bench_cmd->add_option("dir", bench.dir, "corpus directory");
    bench_cmd->add_option("--method", bench.methods, "methods (repeatable)");
    bench_cmd->add_option("--csv", bench.csv, "CSV output file, - for stdout");
    bench_cmd->add_option("--scaling", bench.scaling, "gst or dp")->check(CLI::IsMember({"gst", "dp"}));
    bench_cmd->add_option("--repetitions", bench.repetitions, "timings per point")->check(CLI::PositiveNumber);
    add_common(bench_cmd, bench.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitError;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve, out);
        if (*gst_cmd) return cmd_gst(gst, out);
        if (*dsot_cmd) return cmd_dsot(dsot, out);
        if (*enum_cmd) return cmd_enum(en, out, err);
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*tdv_cmd) return cmd_td_validate(tdv, out);
        if (*tdn_cmd) return cmd_td_nicify(tdn, out);
        if (*bench_cmd) return cmd_bench(bench, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace cfvs
