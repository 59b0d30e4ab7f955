#include "netdiff/analytics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "netdiff/error.hpp"

namespace netdiff {

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

void check_width(const IterationDelta& d, std::size_t n_status) {
    if (d.node_count.size() != n_status)
        throw ParameterError("delta has " + std::to_string(d.node_count.size()) + " statuses, expected " +
                             std::to_string(n_status));
}

}  // namespace

Series trend(const Trajectory& trajectory, std::vector<std::string> statuses, std::string name) {
    Series s{std::move(name), "trend", std::move(statuses), {}, {}};
    s.values.resize(s.statuses.size());
    for (const auto& d : trajectory) {
        check_width(d, s.statuses.size());
        s.iterations.push_back(d.iteration);
        for (std::size_t k = 0; k < s.statuses.size(); ++k) s.values[k].push_back(static_cast<double>(d.node_count[k]));
    }
    return s;
}

Series prevalence(const Trajectory& trajectory, std::vector<std::string> statuses, std::string name) {
    Series s{std::move(name), "prevalence", std::move(statuses), {}, {}};
    s.values.resize(s.statuses.size());
    for (const auto& d : trajectory) {
        if (d.iteration == 0) continue;
        check_width(d, s.statuses.size());
        s.iterations.push_back(d.iteration);
        for (std::size_t k = 0; k < s.statuses.size(); ++k)
            s.values[k].push_back(static_cast<double>(d.status_delta[k]));
    }
    return s;
}

ComparisonTable compare(std::span<const Series> series, std::span<const std::string> statuses) {
    ComparisonTable table;
    for (const auto& s : series)
        for (auto it : s.iterations) table.iterations.push_back(it);
    std::sort(table.iterations.begin(), table.iterations.end());
    table.iterations.erase(std::unique(table.iterations.begin(), table.iterations.end()), table.iterations.end());

    for (const auto& s : series) {
        for (std::size_t k = 0; k < s.statuses.size(); ++k) {
            if (!statuses.empty() && std::find(statuses.begin(), statuses.end(), s.statuses[k]) == statuses.end())
                continue;
            ComparisonColumn col{s.name, s.statuses[k],
                                 std::vector<double>(table.iterations.size(), std::numeric_limits<double>::quiet_NaN())};
            for (std::size_t i = 0; i < s.iterations.size(); ++i) {
                auto pos = std::lower_bound(table.iterations.begin(), table.iterations.end(), s.iterations[i]);
                col.values[static_cast<std::size_t>(pos - table.iterations.begin())] = s.values[k][i];
            }
            table.columns.push_back(std::move(col));
        }
    }
    return table;
}

double nearest_rank(std::span<const double> sorted, double pct) {
    if (sorted.empty()) throw ParameterError("percentile of an empty sample");
    auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

BandedSeries aggregate_runs(std::span<const Trajectory> runs, std::vector<std::string> statuses, double lower_pct,
                            double upper_pct, std::string name) {
    if (runs.empty()) throw ParameterError("aggregate_runs needs at least one run");
    if (!(lower_pct >= 0.0 && lower_pct < upper_pct && upper_pct <= 100.0))
        throw ParameterError("percentiles must satisfy 0 <= lower < upper <= 100");
    if (lower_pct > 50.0 || upper_pct < 50.0)
        throw ParameterError("the percentile range must contain the median");

    BandedSeries out;
    out.name = std::move(name);
    out.statuses = std::move(statuses);
    out.lower_pct = lower_pct;
    out.upper_pct = upper_pct;
    const std::size_t n_status = out.statuses.size();
    std::size_t length = 0;
    for (const auto& r : runs) {
        if (r.empty()) throw ParameterError("aggregate_runs got an empty run");
        for (const auto& d : r) check_width(d, n_status);
        length = std::max(length, r.size());
    }
    for (const auto& r : runs)
        if (r.size() == length) {
            for (const auto& d : r) out.iterations.push_back(d.iteration);
            break;
        }
    out.median.assign(n_status, std::vector<double>(length));
    out.lower = out.median;
    out.upper = out.median;
    std::vector<double> sample(runs.size());
    for (std::size_t i = 0; i < length; ++i) {
        for (std::size_t k = 0; k < n_status; ++k) {
            for (std::size_t r = 0; r < runs.size(); ++r) {
                const auto& run = runs[r];
                sample[r] = static_cast<double>(run[std::min(i, run.size() - 1)].node_count[k]);
            }
            std::sort(sample.begin(), sample.end());
            out.median[k][i] = nearest_rank(sample, 50.0);
            out.lower[k][i] = nearest_rank(sample, lower_pct);
            out.upper[k][i] = nearest_rank(sample, upper_pct);
        }
    }
    return out;
}

std::string to_csv(const Series& s) {
    std::string out = "iteration";
    for (const auto& st : s.statuses) out += "," + st;
    out += "\n";
    for (std::size_t i = 0; i < s.iterations.size(); ++i) {
        out += std::to_string(s.iterations[i]);
        for (const auto& col : s.values) out += "," + fmt(col[i]);
        out += "\n";
    }
    return out;
}

std::string to_csv(const ComparisonTable& t) {
    std::string out = "iteration";
    for (const auto& c : t.columns) out += "," + (c.series.empty() ? c.status : c.series + "." + c.status);
    out += "\n";
    for (std::size_t i = 0; i < t.iterations.size(); ++i) {
        out += std::to_string(t.iterations[i]);
        for (const auto& c : t.columns) out += "," + fmt(c.values[i]);
        out += "\n";
    }
    return out;
}

std::string to_csv(const BandedSeries& b) {
    std::string out = "iteration";
    for (const auto& st : b.statuses) out += "," + st + "_median," + st + "_lower," + st + "_upper";
    out += "\n";
    for (std::size_t i = 0; i < b.iterations.size(); ++i) {
        out += std::to_string(b.iterations[i]);
        for (std::size_t k = 0; k < b.statuses.size(); ++k)
            out += "," + fmt(b.median[k][i]) + "," + fmt(b.lower[k][i]) + "," + fmt(b.upper[k][i]);
        out += "\n";
    }
    return out;
}

nlohmann::json to_json(const Series& s) {
    nlohmann::json values = nlohmann::json::object();
    for (std::size_t k = 0; k < s.statuses.size(); ++k) values[s.statuses[k]] = s.values[k];
    return {{"name", s.name}, {"kind", s.kind}, {"statuses", s.statuses}, {"iterations", s.iterations},
            {"values", std::move(values)}};
}

Series series_from_json(const nlohmann::json& doc) {
    Series s;
    s.name = doc.at("name").get<std::string>();
    s.kind = doc.at("kind").get<std::string>();
    s.statuses = doc.at("statuses").get<std::vector<std::string>>();
    s.iterations = doc.at("iterations").get<std::vector<std::uint64_t>>();
    for (const auto& st : s.statuses) s.values.push_back(doc.at("values").at(st).get<std::vector<double>>());
    return s;
}

nlohmann::json to_json(const BandedSeries& b) {
    nlohmann::json bands = nlohmann::json::object();
    for (std::size_t k = 0; k < b.statuses.size(); ++k)
        bands[b.statuses[k]] = {{"median", b.median[k]}, {"lower", b.lower[k]}, {"upper", b.upper[k]}};
    return {{"name", b.name},           {"statuses", b.statuses},   {"iterations", b.iterations},
            {"centre", b.centre},       {"lower_pct", b.lower_pct}, {"upper_pct", b.upper_pct},
            {"percentile", "nearest_rank"}, {"bands", std::move(bands)}};
}

namespace {

constexpr double kWidth = 640, kHeight = 400, kMargin = 40;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

struct Frame {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

    void fit(std::span<const std::uint64_t> xs, const std::vector<std::vector<double>>& ys) {
        if (!xs.empty()) {
            x0 = static_cast<double>(xs.front());
            x1 = static_cast<double>(xs.back());
        }
        bool first = true;
        for (const auto& col : ys)
            for (double v : col) {
                if (std::isnan(v)) continue;
                if (first) y0 = y1 = v, first = false;
                y0 = std::min(y0, v);
                y1 = std::max(y1, v);
            }
        if (x1 <= x0) x1 = x0 + 1;
        if (y1 <= y0) y1 = y0 + 1;
    }
    double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
    double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

std::string points(const Frame& f, std::span<const std::uint64_t> xs, const std::vector<double>& ys) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!out.empty()) out += ' ';
        out += fmt(std::round(f.px(static_cast<double>(xs[i])) * 100) / 100) + "," +
               fmt(std::round(f.py(ys[i]) * 100) / 100);
    }
    return out;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string header(const std::string& title) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\">\n";
    out += "<title>" + escape(title) + "</title>\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) + "\" fill=\"white\"/>\n";
    out += "<line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(kHeight - kMargin) + "\" x2=\"" + fmt(kWidth - kMargin) +
           "\" y2=\"" + fmt(kHeight - kMargin) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(kMargin) + "\" x2=\"" + fmt(kMargin) + "\" y2=\"" +
           fmt(kHeight - kMargin) + "\" stroke=\"black\"/>\n";
    return out;
}

std::string legend(std::size_t k, const std::string& status) {
    const double y = kMargin + 14.0 * static_cast<double>(k);
    return "<text x=\"" + fmt(kWidth - kMargin - 100) + "\" y=\"" + fmt(y) + "\" fill=\"" + kPalette[k % 7] +
           "\" font-size=\"11\">" + escape(status) + "</text>\n";
}

}  // namespace

std::string to_svg(const Series& s) {
    Frame f;
    f.fit(s.iterations, s.values);
    std::string out = header(s.name.empty() ? s.kind : s.name + " " + s.kind);
    for (std::size_t k = 0; k < s.statuses.size(); ++k) {
        out += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[k % 7]) + "\" stroke-width=\"1.5\" data-status=\"" +
               escape(s.statuses[k]) + "\" points=\"" + points(f, s.iterations, s.values[k]) + "\"/>\n";
        out += legend(k, s.statuses[k]);
    }
    return out + "</svg>\n";
}

std::string to_svg(const BandedSeries& b) {
    Frame f;
    auto all = b.lower;
    all.insert(all.end(), b.upper.begin(), b.upper.end());
    f.fit(b.iterations, all);
    std::string out = header(b.name + " median and " + fmt(b.lower_pct) + "-" + fmt(b.upper_pct) + " percentile band");
    for (std::size_t k = 0; k < b.statuses.size(); ++k) {
        std::vector<std::uint64_t> xs(b.iterations.rbegin(), b.iterations.rend());
        std::vector<double> lower_rev(b.lower[k].rbegin(), b.lower[k].rend());
        out += "<polygon fill=\"" + std::string(kPalette[k % 7]) + "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"" +
               points(f, b.iterations, b.upper[k]) + " " + points(f, xs, lower_rev) + "\"/>\n";
    }
    for (std::size_t k = 0; k < b.statuses.size(); ++k) {
        out += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[k % 7]) + "\" stroke-width=\"1.5\" data-status=\"" +
               escape(b.statuses[k]) + "\" points=\"" + points(f, b.iterations, b.median[k]) + "\"/>\n";
        out += legend(k, b.statuses[k]);
    }
    return out + "</svg>\n";
}

}  // namespace netdiff
