#pragma once

// Batch risk pipeline: per-asset slope comparison over a price panel.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lqreg/errors.hpp"
#include "lqreg/moments.hpp"
#include "lqreg/sample.hpp"
#include "lqreg/solver.hpp"

namespace lqreg {

enum class AssetFlag { degenerate, sys_ratio_undefined, three_roots };

inline const char* flag_name(AssetFlag f) {
    switch (f) {
        case AssetFlag::degenerate: return "degenerate";
        case AssetFlag::sys_ratio_undefined: return "sys_ratio_undefined";
        case AssetFlag::three_roots: return "three_roots";
    }
    return "unknown";
}

enum class SlopeKind { ls, lq, ts };

inline const char* slope_name(SlopeKind k) {
    switch (k) {
        case SlopeKind::ls: return "ls";
        case SlopeKind::lq: return "lq";
        case SlopeKind::ts: return "ts";
    }
    return "unknown";
}

inline SlopeKind parse_slope_kind(const std::string& name) {
    if (name == "ls") return SlopeKind::ls;
    if (name == "lq") return SlopeKind::lq;
    if (name == "ts") return SlopeKind::ts;
    throw input_error("unknown slope criterion: " + name);
}

struct AssetRow {
    std::string asset_name;
    bool ok = false;
    std::string error; // set when ok == false

    double corr = 0;
    double lambda12 = 0, lambda21 = 0, lambda13 = 0, lambda22 = 0, lambda31 = 0;
    double b_ls = 0, b_lq = 0, b_ts = 0;
    double delta_pct = 0;
    bool delta_defined = false;
    std::vector<AssetFlag> flags;
};

struct RankingTable {
    SlopeKind criterion = SlopeKind::lq;
    struct Entry {
        int rank = 0;
        std::string asset_name;
        double slope = 0;
    };
    std::vector<Entry> entries;
};

struct AnalysisOptions {
    Transform transform = Transform::levels;
};

struct SeriesSummary {
    std::string name;
    bool ok = false;
    std::string error;
    SummaryStats stats{};
};

struct PanelReport {
    std::vector<SeriesSummary> summaries; // panel column order, market included
    std::vector<AssetRow> rows;           // one per non-market column, panel order
};

// Relative change of the least-quartic slope against least squares, percent.
// The guard threshold only rules out division by (near-)zero; scale is the
// other slope in play, floored at 1.
inline bool delta_defined(double b_ls, double b_lq) {
    return std::abs(b_ls) > 1e-12 * std::max(1.0, std::abs(b_lq));
}

inline double delta_pct(double b_ls, double b_lq) {
    if (!delta_defined(b_ls, b_lq)) throw numeric_error("b_ls too close to zero for delta_pct");
    return (b_lq - b_ls) / b_ls * 100.0;
}

namespace detail {

// Shared per-asset pipeline; throws on any failure.
inline AssetRow analyze_asset_strict(const PricePanel& panel, const std::string& asset,
                                     const AnalysisOptions& opts) {
    const BivariatePairs pairs = make_pairs(panel, asset, opts.transform);
    const MomentSet m = compute_moments(pairs);
    const CoMomentReport rep = comoment_report(m);
    const QuarticFit fit = fit_lq(pairs);

    AssetRow row;
    row.asset_name = asset;
    row.ok = true;
    row.corr = rep.rho;
    row.lambda12 = rep.lambda12;
    row.lambda21 = rep.lambda21;
    row.lambda13 = rep.lambda13;
    row.lambda22 = rep.lambda22;
    row.lambda31 = rep.lambda31;
    row.b_ls = fit_ls(m);
    row.b_lq = fit.b_lq;
    row.b_ts = fit_theil_sen(pairs);
    row.delta_defined = delta_defined(row.b_ls, row.b_lq);
    row.delta_pct = row.delta_defined ? delta_pct(row.b_ls, row.b_lq) : 0.0;
    if (!rep.sys_coskew_defined || !rep.sys_cokurt_defined)
        row.flags.push_back(AssetFlag::sys_ratio_undefined);
    if (fit.n_real_roots == 3) row.flags.push_back(AssetFlag::three_roots);
    return row;
}

} // namespace detail

// One asset -> one row.  The asset must exist and differ from the market
// (those are caller errors and propagate); failures caused by the series
// content are embedded as an error row instead.
inline AssetRow analyze_asset(const PricePanel& panel, const std::string& asset,
                              const AnalysisOptions& opts = {}) {
    if (asset == panel.market_name) throw input_error("asset must differ from the market column");
    if (!panel.find(asset)) throw input_error("unknown asset column: " + asset);
    try {
        return detail::analyze_asset_strict(panel, asset, opts);
    } catch (const numeric_error& e) {
        AssetRow row;
        row.asset_name = asset;
        row.ok = false;
        row.error = e.what();
        row.flags.push_back(AssetFlag::degenerate);
        return row;
    } catch (const input_error& e) {
        AssetRow row;
        row.asset_name = asset;
        row.ok = false;
        row.error = e.what();
        return row;
    }
}

// Full batch: per-series summaries (panel order) plus one asset row per
// non-market column.  No per-asset failure is fatal.
inline PanelReport build_report(const PricePanel& panel, const AnalysisOptions& opts = {}) {
    PanelReport report;
    for (const auto& col : panel.columns) {
        SeriesSummary s;
        s.name = col.name;
        try {
            s.stats = summary_stats(transform_series(col.values, opts.transform));
            s.ok = true;
        } catch (const std::exception& e) {
            s.ok = false;
            s.error = e.what();
        }
        report.summaries.push_back(std::move(s));
    }
    for (const auto& col : panel.columns) {
        if (col.name == panel.market_name) continue;
        report.rows.push_back(analyze_asset(panel, col.name, opts));
    }
    return report;
}

// Top-n assets by the chosen slope, descending; ties broken by name.  Error
// rows are excluded.
inline RankingTable rank_assets(const std::vector<AssetRow>& rows, SlopeKind by, int top_n) {
    if (top_n <= 0) throw input_error("top_n must be positive");
    const auto slope_of = [by](const AssetRow& r) {
        switch (by) {
            case SlopeKind::ls: return r.b_ls;
            case SlopeKind::lq: return r.b_lq;
            case SlopeKind::ts: return r.b_ts;
        }
        return r.b_lq;
    };
    RankingTable table;
    table.criterion = by;
    std::vector<const AssetRow*> ok;
    for (const auto& r : rows)
        if (r.ok) ok.push_back(&r);
    if (ok.empty()) throw numeric_error("no analyzable assets to rank");
    std::sort(ok.begin(), ok.end(), [&](const AssetRow* a, const AssetRow* b) {
        const double sa = slope_of(*a), sb = slope_of(*b);
        if (sa != sb) return sa > sb;
        return a->asset_name < b->asset_name;
    });
    const std::size_t count = std::min<std::size_t>(ok.size(), static_cast<std::size_t>(top_n));
    for (std::size_t i = 0; i < count; ++i)
        table.entries.push_back({static_cast<int>(i) + 1, ok[i]->asset_name, slope_of(*ok[i])});
    return table;
}

} // namespace lqreg
