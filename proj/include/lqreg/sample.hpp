#pragma once

// Panel loading and pair preparation.
//
// Input files are comma-separated price panels: a header row naming the
// columns, a leading label column (dates or other opaque row ids), and one
// numeric column per series.  Empty or non-numeric cells count as missing.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lqreg/errors.hpp"

namespace lqreg {

enum class Transform { levels, log_returns };

inline const char* transform_name(Transform t) {
    return t == Transform::levels ? "levels" : "log_returns";
}

// A loaded panel: columns in file order, complete cases only.
struct PricePanel {
    std::vector<std::string> labels; // row labels, never parsed
    struct Column {
        std::string name;
        std::vector<double> values;
    };
    std::vector<Column> columns;
    std::string market_name;
    std::vector<std::string> dropped_columns; // removed by the missing-data rule

    const Column* find(const std::string& name) const {
        for (const auto& c : columns)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// A mean-centered (x, y) sample ready for moment computation.
// x_scale / y_scale remember the pre-centering magnitude of each series so
// that later degeneracy checks can be made relative to the source data.
struct BivariatePairs {
    std::vector<double> x; // market, centered
    std::vector<double> y; // asset, centered
    std::size_t n = 0;
    std::string asset_name;
    std::string market_name;
    double x_scale = 0.0;
    double y_scale = 0.0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

// Full-cell numeric parse; anything else is a missing value.
inline std::optional<double> parse_cell(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return v;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

} // namespace detail

// Applies the chosen transform to one series of the panel.
// levels: identity.  log_returns: log(p_t / p_{t-1}), length n-1.
inline std::vector<double> transform_series(const std::vector<double>& values, Transform t) {
    if (t == Transform::levels) return values;
    std::vector<double> r;
    if (values.size() < 2) throw input_error("log_returns needs at least 2 observations");
    r.reserve(values.size() - 1);
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i - 1] <= 0.0 || values[i] <= 0.0)
            throw input_error("log_returns requires strictly positive prices");
        r.push_back(std::log(values[i] / values[i - 1]));
    }
    return r;
}

// Builds centered pairs from two raw series of equal length.  Panel loading
// enforces the n >= 5 rule; direct series construction allows down to n = 2
// so small hand-checkable fixtures stay expressible.
inline BivariatePairs make_pairs_from_series(std::vector<double> x, std::vector<double> y,
                                             std::string asset_name = "y",
                                             std::string market_name = "x") {
    if (x.size() != y.size()) throw input_error("series lengths differ");
    if (x.size() < 2) throw input_error("need at least 2 observations per series");
    BivariatePairs p;
    p.x_scale = detail::max_abs(x);
    p.y_scale = detail::max_abs(y);
    const double mx = detail::mean_of(x);
    const double my = detail::mean_of(y);
    for (double& v : x) v -= mx;
    for (double& v : y) v -= my;
    p.x = std::move(x);
    p.y = std::move(y);
    p.n = p.x.size();
    p.asset_name = std::move(asset_name);
    p.market_name = std::move(market_name);
    return p;
}

// Loads a CSV price panel.
//
// Columns whose missing fraction exceeds drop_threshold are removed (and
// recorded in dropped_columns); afterwards rows with any remaining missing
// cell are deleted (complete-case rule).  The market column must survive and
// at least 5 complete rows must remain.
inline PricePanel load_panel(const std::string& path, const std::string& market,
                             double drop_threshold = 0.05) {
    if (!(drop_threshold >= 0.0 && drop_threshold < 1.0))
        throw input_error("drop_threshold must lie in [0, 1)");
    std::ifstream in(path);
    if (!in) throw input_error("cannot open input file: " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        lines.push_back(line);
    }
    if (lines.empty()) throw input_error("empty input file: " + path);

    const auto header = detail::split_csv_line(lines[0]);
    if (header.size() < 3)
        throw input_error("panel needs a label column, a market column and at least one asset column");
    const std::size_t ncols = header.size() - 1;
    for (std::size_t i = 1; i < header.size(); ++i) {
        if (header[i].empty()) throw input_error("empty column name in header");
        for (std::size_t j = i + 1; j < header.size(); ++j)
            if (header[i] == header[j]) throw input_error("duplicate column name: " + header[i]);
    }

    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<double>>> cells(ncols);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto row = detail::split_csv_line(lines[r]);
        if (row.size() != header.size()) {
            std::ostringstream msg;
            msg << "row " << r + 1 << " has " << row.size() << " cells, expected " << header.size();
            throw input_error(msg.str());
        }
        labels.push_back(row[0]);
        for (std::size_t c = 0; c < ncols; ++c)
            cells[c].push_back(detail::parse_cell(row[c + 1]));
    }
    const std::size_t nrows = labels.size();

    // Missing-data column rule.
    std::vector<std::size_t> kept;
    PricePanel panel;
    for (std::size_t c = 0; c < ncols; ++c) {
        std::size_t missing = 0;
        for (const auto& v : cells[c])
            if (!v) ++missing;
        const bool drop = nrows == 0 ||
                          static_cast<double>(missing) > drop_threshold * static_cast<double>(nrows);
        if (drop)
            panel.dropped_columns.push_back(header[c + 1]);
        else
            kept.push_back(c);
    }

    const auto is_kept = [&](const std::string& name) {
        for (std::size_t c : kept)
            if (header[c + 1] == name) return true;
        return false;
    };
    if (!is_kept(market)) throw input_error("market column absent or dropped: " + market);
    if (kept.size() < 2) throw input_error("fewer than 2 columns survive the missing-data rule");

    // Complete-case row deletion over the surviving columns.
    for (std::size_t c : kept)
        panel.columns.push_back({header[c + 1], {}});
    for (std::size_t r = 0; r < nrows; ++r) {
        bool complete = true;
        for (std::size_t c : kept)
            if (!cells[c][r]) { complete = false; break; }
        if (!complete) continue;
        panel.labels.push_back(labels[r]);
        for (std::size_t k = 0; k < kept.size(); ++k)
            panel.columns[k].values.push_back(*cells[kept[k]][r]);
    }
    if (panel.labels.size() < 5) throw input_error("fewer than 5 complete rows after cleaning");
    panel.market_name = market;
    return panel;
}

// Extracts the centered (market, asset) pairs for one asset of the panel.
inline BivariatePairs make_pairs(const PricePanel& panel, const std::string& asset,
                                 Transform t = Transform::levels) {
    if (asset == panel.market_name) throw input_error("asset must differ from the market column");
    const PricePanel::Column* a = panel.find(asset);
    if (!a) throw input_error("unknown asset column: " + asset);
    const PricePanel::Column* m = panel.find(panel.market_name);
    if (!m) throw input_error("unknown market column: " + panel.market_name);
    return make_pairs_from_series(transform_series(m->values, t), transform_series(a->values, t),
                                  asset, panel.market_name);
}

} // namespace lqreg
