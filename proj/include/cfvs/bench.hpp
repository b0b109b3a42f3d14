#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfvs/graph.hpp"
#include "cfvs/solver.hpp"

namespace cfvs {

struct BenchRecord {
    std::string instance;
    std::string method;
    std::optional<std::size_t> size;  // nullopt: no connected FVS exists
    double time_ms = 0;
    std::uint64_t reps_tried = 0;
    std::uint64_t subsets_evaluated = 0;
    std::uint64_t dp_rows = 0;
    int width = -1;  // greedy decomposition width
};

// Optimum of every graph file (.gr, .dimacs, .col, .txt) directly in dir,
// in file-name order, with each method.
std::vector<BenchRecord> bench_corpus(const std::string& dir, const std::vector<Method>& methods,
                                      const SolveOptions& opts = {});

std::string bench_csv(const std::vector<BenchRecord>& records);
std::string bench_table(const std::vector<BenchRecord>& records);

struct ScalingPoint {
    int parameter = 0;      // l for the Steiner sweep, w for the DP sweep
    double median_ms = 0;
    double ratio = 0;       // median_ms over the previous point's, 0 for the first
    std::uint64_t max_rows = 0;   // DP sweep only
    long double row_bound = 0;    // DP sweep only
};

// Group Steiner decisions on one fixed connected graph of n vertices with l
// singleton groups, l = l_min..l_max, tree size p. Groups are the l vertices
// nearest to vertex 0 in BFS order so every terminal is reachable in budget.
std::vector<ScalingPoint> gst_scaling(std::size_t n, std::size_t p, int l_min, int l_max, int repetitions,
                                      std::uint64_t seed);

// Full DP runs on random partial k-trees of n vertices for w = 1..max_width,
// each k-tree edge kept with probability 1/2.
std::vector<ScalingPoint> dp_scaling(std::size_t n, int max_width, int repetitions, std::uint64_t seed);

// Least-squares slope of log(median_ms) against log(x_i).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string scaling_csv(const std::vector<ScalingPoint>& points, const std::string& parameter_name);

}  // namespace cfvs
