#pragma once

// Command surface and table serialization (CSV / JSON).
//
// All floats are printed with 6 significant digits via printf "%#.6g"; the
// JSON form stores the number parsed back from that same string, so the two
// formats always carry identical values and identical inputs always produce
// identical output bytes.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lqreg/capm.hpp"
#include "lqreg/errors.hpp"
#include "lqreg/moments.hpp"
#include "lqreg/sample.hpp"
#include "lqreg/solver.hpp"
#include "lqreg/synth.hpp"

namespace lqreg::cli {

enum class Command { summary, comoments, fit, rank, loss_curve, simulate };
enum class OutputFormat { csv, json };

struct CliConfig {
    Command command = Command::summary;
    std::string input_path;
    std::string market;
    std::string asset; // empty = all assets
    Transform transform = Transform::levels;
    double drop_threshold = 0.05;
    int top_n = 10;
    SlopeKind by = SlopeKind::lq;
    double from = 0.0, to = 0.0, step = 0.0; // loss-curve grid
    OutputFormat format = OutputFormat::csv;
    std::uint64_t seed = 0;
    GeneratorKind kind = GeneratorKind::bivariate_normal;
    std::size_t n = 1000;
};

// ============================================================
// formatting
// ============================================================

inline std::string fmt6(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[48];
    std::snprintf(buf, sizeof buf, "%#.6g", v);
    std::string s(buf);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

struct Cell {
    enum class Kind { text, number, integer, boolean, null } kind = Kind::null;
    std::string text;
    double num = 0;
    bool flag = false;

    static Cell str(std::string s) { return {Kind::text, std::move(s), 0, false}; }
    static Cell value(double v) { return {Kind::number, {}, v, false}; }
    static Cell whole(long long v) {
        return {Kind::integer, {}, static_cast<double>(v), false};
    }
    static Cell boolean(bool b) { return {Kind::boolean, {}, 0, b}; }
    static Cell null() { return {}; }
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out += "\"";
    return out;
}

inline std::string csv_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::text: return csv_escape(c.text);
        case Cell::Kind::number: return fmt6(c.num);
        case Cell::Kind::integer: return std::to_string(static_cast<long long>(c.num));
        case Cell::Kind::boolean: return c.flag ? "true" : "false";
        case Cell::Kind::null: return "nan";
    }
    return "";
}

// Number carried into JSON: the value round-tripped through fmt6, so CSV and
// JSON agree field by field.
inline nlohmann::ordered_json json_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::text: return c.text;
        case Cell::Kind::integer: return static_cast<long long>(c.num);
        case Cell::Kind::boolean: return c.flag;
        case Cell::Kind::null: return nullptr;
        case Cell::Kind::number: {
            if (std::isnan(c.num) || std::isinf(c.num)) return nullptr;
            const std::string s = fmt6(c.num);
            double v = 0.0;
            std::from_chars(s.data(), s.data() + s.size(), v);
            return v;
        }
    }
    return nullptr;
}

} // namespace detail

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out.push_back(',');
        out += detail::csv_escape(t.header[i]);
    }
    out.push_back('\n');
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += detail::csv_cell(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

inline nlohmann::ordered_json to_json_value(const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < t.header.size(); ++i)
            obj[t.header[i]] = detail::json_cell(row[i]);
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline std::string to_json(const Table& t) { return to_json_value(t).dump(2) + "\n"; }

inline std::string render(const Table& t, OutputFormat f) {
    return f == OutputFormat::csv ? to_csv(t) : to_json(t);
}

// ============================================================
// table builders
// ============================================================

inline Table summary_table(const std::vector<SeriesSummary>& summaries) {
    Table t;
    t.header = {"name", "mean", "variance", "st_dev", "cv", "cv_negative_mean",
                "skewness", "excess_kurtosis", "z_skew", "z_kurt", "error"};
    for (const auto& s : summaries) {
        std::vector<Cell> row;
        row.push_back(Cell::str(s.name));
        if (s.ok) {
            row.push_back(Cell::value(s.stats.mean));
            row.push_back(Cell::value(s.stats.variance));
            row.push_back(Cell::value(s.stats.st_dev));
            row.push_back(Cell::value(s.stats.cv));
            row.push_back(Cell::boolean(s.stats.cv_negative_mean));
            row.push_back(Cell::value(s.stats.skewness));
            row.push_back(Cell::value(s.stats.excess_kurtosis));
            row.push_back(Cell::value(s.stats.z_skew));
            row.push_back(Cell::value(s.stats.z_kurt));
            row.push_back(Cell::str(""));
        } else {
            for (int i = 0; i < 9; ++i) row.push_back(Cell::null());
            row.push_back(Cell::str(s.error));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

struct ComomentRow {
    std::string asset_name;
    bool ok = false;
    std::string error;
    CoMomentReport report{};
};

inline Table comoments_table(const std::vector<ComomentRow>& rows) {
    Table t;
    t.header = {"asset", "rho", "lambda21", "lambda12", "lambda31", "lambda13", "lambda22",
                "sys_coskew", "sys_coskew_defined", "sys_cokurt", "sys_cokurt_defined",
                "kappa13", "kappa31", "kappa22", "error"};
    for (const auto& r : rows) {
        std::vector<Cell> row;
        row.push_back(Cell::str(r.asset_name));
        if (r.ok) {
            const CoMomentReport& c = r.report;
            row.push_back(Cell::value(c.rho));
            row.push_back(Cell::value(c.lambda21));
            row.push_back(Cell::value(c.lambda12));
            row.push_back(Cell::value(c.lambda31));
            row.push_back(Cell::value(c.lambda13));
            row.push_back(Cell::value(c.lambda22));
            row.push_back(c.sys_coskew_defined ? Cell::value(c.sys_coskew) : Cell::null());
            row.push_back(Cell::boolean(c.sys_coskew_defined));
            row.push_back(c.sys_cokurt_defined ? Cell::value(c.sys_cokurt) : Cell::null());
            row.push_back(Cell::boolean(c.sys_cokurt_defined));
            row.push_back(Cell::value(c.kappa13));
            row.push_back(Cell::value(c.kappa31));
            row.push_back(Cell::value(c.kappa22));
            row.push_back(Cell::str(""));
        } else {
            for (int i = 0; i < 13; ++i) row.push_back(Cell::null());
            row.push_back(Cell::str(r.error));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline std::string flags_text(const std::vector<AssetFlag>& flags) {
    std::string s;
    for (AssetFlag f : flags) {
        if (!s.empty()) s.push_back(';');
        s += flag_name(f);
    }
    return s;
}

inline Table fit_table(const std::vector<AssetRow>& rows) {
    Table t;
    t.header = {"asset", "corr", "lambda12", "lambda21", "lambda13", "lambda22", "lambda31",
                "b_ls", "b_lq", "b_ts", "delta_pct", "delta_defined", "flags", "error"};
    for (const auto& r : rows) {
        std::vector<Cell> row;
        row.push_back(Cell::str(r.asset_name));
        if (r.ok) {
            row.push_back(Cell::value(r.corr));
            row.push_back(Cell::value(r.lambda12));
            row.push_back(Cell::value(r.lambda21));
            row.push_back(Cell::value(r.lambda13));
            row.push_back(Cell::value(r.lambda22));
            row.push_back(Cell::value(r.lambda31));
            row.push_back(Cell::value(r.b_ls));
            row.push_back(Cell::value(r.b_lq));
            row.push_back(Cell::value(r.b_ts));
            row.push_back(r.delta_defined ? Cell::value(r.delta_pct) : Cell::null());
            row.push_back(Cell::boolean(r.delta_defined));
            row.push_back(Cell::str(flags_text(r.flags)));
            row.push_back(Cell::str(""));
        } else {
            for (int i = 0; i < 10; ++i) row.push_back(Cell::null());
            row.push_back(Cell::boolean(false));
            row.push_back(Cell::str(flags_text(r.flags)));
            row.push_back(Cell::str(r.error));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Table rank_table(const RankingTable& ranking) {
    Table t;
    t.header = {"rank", "asset", std::string("b_") + slope_name(ranking.criterion)};
    for (const auto& e : ranking.entries) {
        std::vector<Cell> row;
        row.push_back(Cell::whole(e.rank));
        row.push_back(Cell::str(e.asset_name));
        row.push_back(Cell::value(e.slope));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Table loss_curve_table(const MomentSet& m, double from, double to, double step) {
    if (!(from < to)) throw input_error("loss-curve needs from < to");
    if (!(step > 0.0)) throw input_error("loss-curve needs step > 0");
    Table t;
    t.header = {"b", "loss"};
    for (std::size_t k = 0;; ++k) {
        const double b = from + static_cast<double>(k) * step;
        if (b > to + 1e-9 * step) break;
        t.rows.push_back({Cell::value(b), Cell::value(quartic_loss(m, b))});
    }
    return t;
}

inline Table pairs_table(const BivariatePairs& p) {
    Table t;
    t.header = {"x", "y"};
    for (std::size_t i = 0; i < p.n; ++i)
        t.rows.push_back({Cell::value(p.x[i]), Cell::value(p.y[i])});
    return t;
}

// Whole-report serialization: summaries plus asset rows.
inline std::string render_report(const PanelReport& report, OutputFormat f) {
    const Table summaries = summary_table(report.summaries);
    const Table assets = fit_table(report.rows);
    if (f == OutputFormat::csv)
        return "# summaries\n" + to_csv(summaries) + "# assets\n" + to_csv(assets);
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    obj["summaries"] = to_json_value(summaries);
    obj["assets"] = to_json_value(assets);
    return obj.dump(2) + "\n";
}

// ============================================================
// command dispatch
// ============================================================

namespace detail {

inline std::vector<std::string> asset_selection(const PricePanel& panel, const std::string& asset) {
    if (!asset.empty()) return {asset};
    std::vector<std::string> names;
    for (const auto& col : panel.columns)
        if (col.name != panel.market_name) names.push_back(col.name);
    return names;
}

inline void note_dropped(const PricePanel& panel, std::ostream& err) {
    for (const auto& name : panel.dropped_columns)
        err << "note: dropped column " << name << " (too many missing cells)\n";
}

} // namespace detail

inline int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case Command::summary: {
                const PricePanel panel = load_panel(cfg.input_path, cfg.market, cfg.drop_threshold);
                detail::note_dropped(panel, err);
                std::vector<SeriesSummary> summaries;
                for (const auto& col : panel.columns) {
                    SeriesSummary s;
                    s.name = col.name;
                    try {
                        s.stats = summary_stats(transform_series(col.values, cfg.transform));
                        s.ok = true;
                    } catch (const std::exception& e) {
                        s.error = e.what();
                    }
                    summaries.push_back(std::move(s));
                }
                out << render(summary_table(summaries), cfg.format);
                return 0;
            }
            case Command::comoments: {
                const PricePanel panel = load_panel(cfg.input_path, cfg.market, cfg.drop_threshold);
                detail::note_dropped(panel, err);
                const bool single = !cfg.asset.empty();
                std::vector<ComomentRow> rows;
                for (const auto& name : detail::asset_selection(panel, cfg.asset)) {
                    ComomentRow r;
                    r.asset_name = name;
                    if (single) {
                        r.report = comoment_report(
                            compute_moments(make_pairs(panel, name, cfg.transform)));
                        r.ok = true;
                    } else {
                        try {
                            r.report = comoment_report(
                                compute_moments(make_pairs(panel, name, cfg.transform)));
                            r.ok = true;
                        } catch (const std::exception& e) {
                            r.error = e.what();
                        }
                    }
                    rows.push_back(std::move(r));
                }
                out << render(comoments_table(rows), cfg.format);
                return 0;
            }
            case Command::fit: {
                const PricePanel panel = load_panel(cfg.input_path, cfg.market, cfg.drop_threshold);
                detail::note_dropped(panel, err);
                const AnalysisOptions opts{cfg.transform};
                std::vector<AssetRow> rows;
                if (!cfg.asset.empty()) {
                    if (cfg.asset == panel.market_name)
                        throw input_error("asset must differ from the market column");
                    if (!panel.find(cfg.asset))
                        throw input_error("unknown asset column: " + cfg.asset);
                    rows.push_back(lqreg::detail::analyze_asset_strict(panel, cfg.asset, opts));
                } else {
                    for (const auto& name : detail::asset_selection(panel, cfg.asset))
                        rows.push_back(analyze_asset(panel, name, opts));
                }
                out << render(fit_table(rows), cfg.format);
                return 0;
            }
            case Command::rank: {
                const PricePanel panel = load_panel(cfg.input_path, cfg.market, cfg.drop_threshold);
                detail::note_dropped(panel, err);
                const AnalysisOptions opts{cfg.transform};
                std::vector<AssetRow> rows;
                for (const auto& name : detail::asset_selection(panel, ""))
                    rows.push_back(analyze_asset(panel, name, opts));
                out << render(rank_table(rank_assets(rows, cfg.by, cfg.top_n)), cfg.format);
                return 0;
            }
            case Command::loss_curve: {
                if (cfg.asset.empty()) throw input_error("loss-curve needs --asset");
                const PricePanel panel = load_panel(cfg.input_path, cfg.market, cfg.drop_threshold);
                detail::note_dropped(panel, err);
                const MomentSet m = compute_moments(make_pairs(panel, cfg.asset, cfg.transform));
                out << render(loss_curve_table(m, cfg.from, cfg.to, cfg.step), cfg.format);
                return 0;
            }
            case Command::simulate: {
                GeneratorSpec spec;
                spec.kind = cfg.kind;
                spec.n = cfg.n;
                spec.sigma_x = 1.0;
                spec.sigma_y = 1.0;
                spec.rho = 0.6;
                spec.contamination = 0.0; // kind default
                spec.seed = cfg.seed;
                out << render(pairs_table(generate(spec)), cfg.format);
                return 0;
            }
        }
        throw input_error("unknown command");
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const numeric_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace lqreg::cli
