// lqreg command-line tool: co-moment analytics and least-quartic slopes over
// CSV price panels, plus seeded synthetic samples.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "lqreg/cli.hpp"
#include "lqreg/lqreg.hpp"

namespace {

using lqreg::cli::CliConfig;
using lqreg::cli::Command;

void add_format_flag(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option_function<std::string>(
           "--format",
           [&cfg](const std::string& v) {
               cfg.format = v == "json" ? lqreg::cli::OutputFormat::json
                                        : lqreg::cli::OutputFormat::csv;
           },
           "Output format: csv (default) or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void add_panel_flags(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("input", cfg.input_path, "CSV price panel")->required();
    cmd->add_option("--market", cfg.market, "Name of the market column")->required();
    cmd->add_option_function<std::string>(
           "--transform",
           [&cfg](const std::string& v) {
               cfg.transform = v == "log_returns" ? lqreg::Transform::log_returns
                                                  : lqreg::Transform::levels;
           },
           "Series transform: levels (default) or log_returns")
        ->check(CLI::IsMember({"levels", "log_returns"}));
    cmd->add_option("--drop-threshold", cfg.drop_threshold,
                    "Max missing-cell fraction before a column is dropped (default 0.05)");
    add_format_flag(cmd, cfg);
}

} // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    CLI::App app{"Least-quartic regression and co-moment analytics for asset panels"};
    app.require_subcommand(1);

    CLI::App* summary = app.add_subcommand("summary", "Per-column summary statistics");
    add_panel_flags(summary, cfg);

    CLI::App* comoments = app.add_subcommand("comoments", "Standardized co-moments per asset");
    add_panel_flags(comoments, cfg);
    comoments->add_option("--asset", cfg.asset, "Restrict to one asset column");

    CLI::App* fit = app.add_subcommand("fit", "Least-squares / least-quartic / pairwise-median slopes");
    add_panel_flags(fit, cfg);
    fit->add_option("--asset", cfg.asset, "Restrict to one asset column");

    CLI::App* rank = app.add_subcommand("rank", "Rank assets by a slope estimate");
    add_panel_flags(rank, cfg);
    rank->add_option("--top-n", cfg.top_n, "Number of entries to keep (default 10)");
    rank->add_option_function<std::string>(
            "--by",
            [&cfg](const std::string& v) { cfg.by = lqreg::parse_slope_kind(v); },
            "Slope criterion: ls, lq (default) or ts")
        ->check(CLI::IsMember({"ls", "lq", "ts"}));

    CLI::App* curve = app.add_subcommand("loss-curve", "Quartic loss over a slope grid");
    add_panel_flags(curve, cfg);
    curve->add_option("--asset", cfg.asset, "Asset column")->required();
    curve->add_option("--from", cfg.from, "Grid start")->required();
    curve->add_option("--to", cfg.to, "Grid end")->required();
    curve->add_option("--step", cfg.step, "Grid step")->required();

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Emit a seeded synthetic sample (sigma 1, core rho 0.6, default tail weight)");
    simulate->add_option_function<std::string>(
                "--kind",
                [&cfg](const std::string& v) { cfg.kind = lqreg::parse_kind(v); },
                "Generator kind (default bivariate_normal)")
        ->check(CLI::IsMember({"bivariate_normal", "coskew_left_pos", "coskew_right_pos",
                               "coskew_neg", "cokurt_lepto_pos", "cokurt_platy_pos", "cokurt_neg",
                               "outlier_contaminated"}));
    simulate->add_option("--n", cfg.n, "Sample size (default 1000)");
    simulate->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    add_format_flag(simulate, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const lqreg::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    const std::map<const CLI::App*, Command> commands = {
        {summary, Command::summary}, {comoments, Command::comoments}, {fit, Command::fit},
        {rank, Command::rank},       {curve, Command::loss_curve},    {simulate, Command::simulate},
    };
    for (const auto& [sub, command] : commands)
        if (sub->parsed()) cfg.command = command;

    return lqreg::cli::run(cfg, std::cout, std::cerr);
}
