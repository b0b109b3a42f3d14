#include "cfvs/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "cfvs/generators.hpp"
#include "cfvs/graph_io.hpp"
#include "cfvs/steiner.hpp"
#include "cfvs/treewidth_dp.hpp"

namespace cfvs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Process CPU time, so the scaling sweeps are not skewed by other load.
double cpu_ms() { return 1000.0 * static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 ? xs[m] : (xs[m - 1] + xs[m]) / 2;
}

bool is_graph_file(const std::filesystem::path& p) {
    const auto ext = p.extension().string();
    return ext == ".gr" || ext == ".dimacs" || ext == ".col" || ext == ".txt";
}

std::vector<Vertex> bfs_order(const Graph& g, Vertex start) {
    std::vector<char> seen(g.num_vertices(), 0);
    std::vector<Vertex> order{start};
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Vertex w : g.neighbors(order[i])) {
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            order.push_back(w);
        }
    }
    return order;
}

void fill_ratios(std::vector<ScalingPoint>& points) {
    for (std::size_t i = 1; i < points.size(); ++i)
        points[i].ratio = points[i - 1].median_ms > 0 ? points[i].median_ms / points[i - 1].median_ms : 0;
}

}  // namespace

std::vector<BenchRecord> bench_corpus(const std::string& dir, const std::vector<Method>& methods,
                                      const SolveOptions& opts) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && is_graph_file(entry.path())) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<BenchRecord> out;
    for (const auto& path : files) {
        const Graph g = read_graph_file(path.string());
        const int width = greedy_td(g).width();
        for (Method m : methods) {
            BenchRecord rec;
            rec.instance = path.filename().string();
            rec.method = to_string(m);
            rec.width = width;
            SolveStats stats;
            const auto start = Clock::now();
            const auto sol = solve_cfvs_optimum(g, m, opts, &stats);
            rec.time_ms = ms_since(start);
            if (sol) rec.size = sol->vertices.size();
            rec.reps_tried = stats.reps_tried;
            rec.subsets_evaluated = stats.subsets_evaluated;
            rec.dp_rows = stats.dp_rows;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream os;
    os << "instance,method,size,time_ms,reps_tried,subsets_evaluated,dp_rows,width\n";
    os << std::fixed << std::setprecision(3);
    for (const auto& r : records) {
        os << r.instance << ',' << r.method << ',';
        if (r.size) os << *r.size;
        else os << "none";
        os << ',' << r.time_ms << ',' << r.reps_tried << ',' << r.subsets_evaluated << ',' << r.dp_rows << ','
           << r.width << '\n';
    }
    return os.str();
}

std::string bench_table(const std::vector<BenchRecord>& records) {
    std::ostringstream os;
    os << std::left << std::setw(24) << "instance" << std::setw(14) << "method" << std::right << std::setw(6)
       << "size" << std::setw(12) << "time_ms" << std::setw(8) << "reps" << std::setw(12) << "subsets"
       << std::setw(12) << "dp_rows" << std::setw(7) << "width" << '\n';
    os << std::fixed << std::setprecision(2);
    for (const auto& r : records) {
        os << std::left << std::setw(24) << r.instance << std::setw(14) << r.method << std::right << std::setw(6)
           << (r.size ? std::to_string(*r.size) : "none") << std::setw(12) << r.time_ms << std::setw(8)
           << r.reps_tried << std::setw(12) << r.subsets_evaluated << std::setw(12) << r.dp_rows << std::setw(7)
           << r.width << '\n';
    }
    return os.str();
}

std::vector<ScalingPoint> gst_scaling(std::size_t n, std::size_t p, int l_min, int l_max, int repetitions,
                                      std::uint64_t seed) {
    // Sparse random graph plus a Hamiltonian path so it is connected.
    Graph g = random_gnm(n, n, seed);
    for (std::size_t v = 0; v + 1 < n; ++v)
        if (!g.adjacent(static_cast<Vertex>(v), static_cast<Vertex>(v + 1)))
            g.add_edge(static_cast<Vertex>(v), static_cast<Vertex>(v + 1));
    const auto order = bfs_order(g, 0);

    std::vector<ScalingPoint> points;
    for (int l = l_min; l <= l_max; ++l) {
        GstInstance inst;
        inst.graph = g;
        inst.max_vertices = p;
        for (int i = 0; i < l; ++i) inst.groups.push_back(VertexSet(n, {order[static_cast<std::size_t>(i)]}));
        std::vector<double> times;
        for (int rep = 0; rep < repetitions; ++rep) {
            const double start = cpu_ms();
            (void)gst_decide(inst);
            times.push_back(cpu_ms() - start);
        }
        points.push_back({l, median(times), 0, 0, 0});
    }
    fill_ratios(points);
    return points;
}

std::vector<ScalingPoint> dp_scaling(std::size_t n, int max_width, int repetitions, std::uint64_t seed) {
    std::vector<ScalingPoint> points;
    for (int w = 1; w <= max_width; ++w) {
        const auto inst = random_partial_ktree(n, static_cast<std::size_t>(w), 0.5, seed + static_cast<std::uint64_t>(w));
        const auto ntd = nicify(inst.td);
        std::vector<double> times;
        DpStats stats;
        for (int rep = 0; rep < repetitions; ++rep) {
            const double start = cpu_ms();
            const auto result = dp_solve(inst.graph, ntd, n);
            times.push_back(cpu_ms() - start);
            stats = result.stats;
        }
        points.push_back({w, median(times), 0, stats.max_rows, dp_row_bound(w)});
    }
    fill_ratios(points);
    return points;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = std::min(x.size(), y.size());
    if (m < 2) return 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    return denom == 0 ? 0 : (static_cast<double>(m) * sxy - sx * sy) / denom;
}

std::string scaling_csv(const std::vector<ScalingPoint>& points, const std::string& parameter_name) {
    std::ostringstream os;
    os << parameter_name << ",median_ms,ratio,max_rows,row_bound\n";
    for (const auto& pt : points)
        os << pt.parameter << ',' << std::fixed << std::setprecision(4) << pt.median_ms << ',' << pt.ratio << ','
           << pt.max_rows << ',' << std::setprecision(0) << static_cast<double>(pt.row_bound) << '\n';
    return os.str();
}

}  // namespace cfvs
