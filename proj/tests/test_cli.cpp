#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cfvs/cli.hpp"
#include "cfvs/graph_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cfvs");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cfvs::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("cfvs_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

}  // namespace

TEST_CASE("solve") {
    TempDir dir;
    const auto c5 = dir.write("c5.gr", "p tw 5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n");
    const auto forest = dir.write("forest.gr", "p tw 4 2\n1 2\n3 4\n");
    const auto c4 = dir.write("c4.gr", "p tw 4 4\n1 2\n2 3\n3 4\n4 1\n");
    const auto c4td = dir.write("c4.td", "s td 2 3 4\nb 1 1 2 3\nb 2 1 3 4\n1 2\n");

    auto r = run({"solve", "--k", "1", c5});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["status"] == "yes");
    CHECK(doc["size"] == 1);
    CHECK(doc["vertices"].size() == 1);
    CHECK(doc["method"] == "treewidth-dp");
    CHECK(doc["stats"].contains("elapsed_ms"));

    r = run({"solve", "--k", "0", forest});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["size"] == 0);

    r = run({"solve", "--method", "treewidth", "--td", c4td, "--k", "1", c4});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["size"] == 1);

    r = run({"solve", "--k", "0", c4, "--method", "gst", "--plain"});
    CHECK(r.code == 1);
    CHECK(r.out == "status no\nmethod compact-gst\n");

    r = run({"solve", "--optimize", c5, "--plain", "--method", "brute-force"});
    CHECK(r.code == 0);
    CHECK(r.out == "status yes\nsize 1\nvertices 1\nmethod brute-force\n");

    r = run({"solve", "--k", "1", "--counting", "modular", "--seed", "3", "--method", "gst", c5});
    doc = nlohmann::json::parse(r.out);
    CHECK(doc["counting"] == "modular");
    CHECK(doc.contains("modulus"));
}

TEST_CASE("solve errors") {
    TempDir dir;
    const auto bad = dir.write("bad.gr", "p tw 3 1\n1 9\n");
    auto r = run({"solve", "--k", "1", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(r.out.empty());
    CHECK(run({"solve", "--k", "1", dir.path("missing.gr")}).code == 2);
    CHECK(run({"solve", dir.write("ok.gr", "p tw 1 0\n")}).code == 2);
    CHECK(run({"solve", "--k", "1", "--method", "nope", dir.path("ok.gr")}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("gst and dsot") {
    TempDir dir;
    const auto tri = dir.write("tri.gr", "p tw 3 3\n1 2\n2 3\n1 3\n");
    const auto path = dir.write("path.gr", "p tw 3 2\n1 2\n2 3\n");
    const auto ab = dir.write("ab.txt", "1\n2\n");
    const auto ac = dir.write("ac.txt", "1\n3\n");
    CHECK(run({"gst", "--p", "2", tri, ab}).code == 0);
    CHECK(run({"gst", "--p", "2", path, ac}).code == 1);
    auto r = run({"gst", "--p", "3", path, ac, "--witness", "--plain"});
    CHECK(r.code == 0);
    CHECK(r.out == "status yes\ntree 1 2 3\n");
    const auto overlap = dir.write("overlap.txt", "1 2\n2\n");
    r = run({"gst", "--p", "3", tri, overlap});
    CHECK(r.code == 2);
    CHECK(r.err.find("overlap") != std::string::npos);

    const auto digraph = dir.write("d.txt", "p arc 3 2\na 1 2\na 2 3\n");
    const auto terminal = dir.write("t.txt", "3\n");
    CHECK(run({"dsot", "--p", "2", "--root", "1", digraph, terminal}).code == 1);
    CHECK(run({"dsot", "--p", "3", "--root", "1", digraph, terminal}).code == 0);
    CHECK(run({"dsot", "--p", "3", "--root", "3", digraph, dir.write("t1.txt", "1\n")}).code == 1);
    CHECK(run({"dsot", "--p", "3", "--root", "1", dir.write("bad.txt", "3 2\n1 2\n"), terminal}).code == 2);
}

TEST_CASE("enum") {
    TempDir dir;
    auto r = run({"gen", "disjoint-cycles", "2", "3", "-o", dir.path("t.gr")});
    REQUIRE(r.code == 0);
    r = run({"enum", "--k", "2", "--verify", dir.path("t.gr")});
    CHECK(r.code == 0);
    CHECK(r.out == "1 2 3\n4 5 6\n");
    r = run({"enum", "--k", "0", dir.path("t.gr")});
    CHECK(r.out.empty());
    r = run({"enum", "--k", "0", dir.write("f.gr", "p tw 2 1\n1 2\n")});
    CHECK(r.out == "-\n");
}

TEST_CASE("gen") {
    auto r = run({"gen", "disjoint-cycles", "3", "4"});
    CHECK(r.code == 0);
    auto g = cfvs::parse_graph(r.out);
    CHECK(g.num_vertices() == 12);
    CHECK(g.num_edges() == 12);

    r = run({"gen", "cvc-gadget", "--n", "5", "--m", "6", "--seed", "7"});
    g = cfvs::parse_graph(r.out);
    CHECK(g.num_vertices() == 11);
    CHECK(g.num_edges() == 18);
    CHECK(run({"gen", "cvc-gadget", "--n", "5", "--m", "6", "--seed", "7"}).out == r.out);

    g = cfvs::parse_graph(run({"gen", "grid", "4", "4"}).out);
    CHECK(g.num_vertices() == 16);
    CHECK(g.num_edges() == 24);

    g = cfvs::parse_graph(run({"gen", "random-gnm", "--n", "9", "--m", "11", "--seed", "2"}).out);
    CHECK(g.num_edges() == 11);
    CHECK(run({"gen", "disjoint-cycles", "3"}).code == 2);
    CHECK(run({"gen", "moebius"}).code == 2);
}

TEST_CASE("td utilities") {
    TempDir dir;
    const auto c4 = dir.write("c4.gr", "p tw 4 4\n1 2\n2 3\n3 4\n4 1\n");
    const auto good = dir.write("good.td", "s td 2 3 4\nb 1 1 2 3\nb 2 1 3 4\n1 2\n");
    const auto bad = dir.write("bad.td", "s td 2 2 4\nb 1 1 2\nb 2 3 4\n1 2\n");
    auto r = run({"td-validate", c4, good});
    CHECK(r.code == 0);
    CHECK(r.out == "valid width 2\n");
    CHECK(run({"td-validate", c4, bad}).code == 1);

    r = run({"td-nicify", good});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("root ", 0) == 0);
    r = run({"td-nicify", good, "--json"});
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["width"] == 2);
    CHECK(doc["nodes"][doc["root"].get<int>()]["bag"].empty());
}

TEST_CASE("bench") {
    TempDir dir;
    fs::create_directories(dir.path("empty"));
    auto r = run({"bench", dir.path("empty"), "--csv", "-"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("instance,method,size,time_ms,reps_tried,subsets_evaluated,dp_rows,width\n", 0) == 0);

    fs::create_directories(dir.path("corpus"));
    run({"gen", "disjoint-cycles", "1", "5", "-o", dir.path("corpus/c5.gr")});
    run({"gen", "grid", "3", "3", "-o", dir.path("corpus/grid.gr")});
    r = run({"bench", dir.path("corpus"), "--csv", dir.path("out.csv"), "--method", "dp", "--method", "gst"});
    CHECK(r.code == 0);
    std::ifstream csv(dir.path("out.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 5);
    CHECK(r.out.find("c5.gr") != std::string::npos);
}
