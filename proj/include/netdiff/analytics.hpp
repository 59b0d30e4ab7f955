#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "netdiff/simulation.hpp"

namespace netdiff {

/// Per-status time series. values[s][i] belongs to statuses[s] at iterations[i].
struct Series {
    std::string name;                   // usually the model name
    std::string kind;                   // "trend" or "prevalence"
    std::vector<std::string> statuses;
    std::vector<std::uint64_t> iterations;
    std::vector<std::vector<double>> values;

    bool operator==(const Series&) const = default;
};

/// Node counts per status at every iteration of the trajectory.
Series trend(const Trajectory& trajectory, std::vector<std::string> statuses, std::string name = {});
/// Signed per-status change at every iteration from 1 on.
Series prevalence(const Trajectory& trajectory, std::vector<std::string> statuses, std::string name = {});

struct ComparisonColumn {
    std::string series;
    std::string status;
    std::vector<double> values;  // aligned with ComparisonTable::iterations; NaN past a series' end
};

struct ComparisonTable {
    std::vector<std::uint64_t> iterations;
    std::vector<ComparisonColumn> columns;
};

/// Puts the selected statuses of several series side by side. An empty filter keeps every status.
ComparisonTable compare(std::span<const Series> series, std::span<const std::string> statuses = {});

/// Median line plus nearest-rank percentile envelope across runs.
struct BandedSeries {
    std::string name;
    std::vector<std::string> statuses;
    std::vector<std::uint64_t> iterations;
    std::vector<std::vector<double>> median, lower, upper;
    double lower_pct = 25.0;
    double upper_pct = 75.0;
    std::string centre = "median";
};

/// Nearest-rank percentile of `sorted` (ascending, non-empty): element ceil(p/100 * N), at least the first.
double nearest_rank(std::span<const double> sorted, double pct);

/// Aggregates trend series of several runs. Shorter runs hold their last
/// counts. Requires lower_pct <= 50 <= upper_pct and lower_pct < upper_pct.
BandedSeries aggregate_runs(std::span<const Trajectory> runs, std::vector<std::string> statuses, double lower_pct,
                            double upper_pct, std::string name = {});

std::string to_csv(const Series& series);
std::string to_csv(const ComparisonTable& table);
std::string to_csv(const BandedSeries& banded);
nlohmann::json to_json(const Series& series);
Series series_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const BandedSeries& banded);
/// Static SVG line plot: one polyline per status.
std::string to_svg(const Series& series);
/// As above, with the percentile envelope drawn behind each median line.
std::string to_svg(const BandedSeries& banded);

}  // namespace netdiff
