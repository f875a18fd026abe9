#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fairclust/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Individually fair clustering toolkit"};
    app.require_subcommand(1);

    fairclust::RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_data) {
        sub->add_option("--input", cfg.input, "input file")->required();
        if (needs_data) {
            sub->add_option("--features", cfg.features,
                            "numeric feature column names")
                ->required()
                ->delimiter(',');
            sub->add_option("--groups", cfg.group_cols,
                            "categorical group column names")
                ->delimiter(',');
            sub->add_option("--p", cfg.p, "norm order: 1, 2 or inf")
                ->check(CLI::IsMember({"1", "2", "inf"}));
            sub->add_option("--fairness", cfg.fairness,
                            "f1 | f2 | metric | file=PATH");
            sub->add_option("--m", cfg.m, "neighbor count for f1");
            sub->add_option("--delta", cfg.delta,
                            "group sandwich slack in (0,1)");
            sub->add_option("--subsample", cfg.subsample,
                            "keep this many rows (0 = all)");
            sub->add_option("--tol", cfg.tol, "violation tolerance");
        }
        sub->add_option("--k", cfg.k, "number of centers")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--threads", cfg.threads,
                        "worker threads (0 = library default)");
        sub->add_option("--out", cfg.out,
                        "report directory (default: stdout)");
    };

    add_common(app.add_subcommand("cluster", "vanilla clustering"), true);
    add_common(app.add_subcommand("fair", "individually fair clustering"),
               true);
    add_common(app.add_subcommand(
                   "combined", "individual plus group-balanced clustering"),
               true);
    add_common(app.add_subcommand("kcenter-fair", "fair k-center"), true);
    CLI::App* audit = app.add_subcommand(
        "audit", "check a saved soft clustering against the data");
    add_common(audit, true);
    audit->add_option("--soft", cfg.soft, "soft clustering CSV to audit")
        ->required();
    add_common(app.add_subcommand(
                   "baseline", "soft k-means tuned to the fair cost"),
               true);
    add_common(app.add_subcommand("bound",
                                  "relaxation lower bound and cost ratio"),
               true);
    add_common(app.add_subcommand("reduce",
                                  "dominating-set reduction on a graph file"),
               false);

    CLI11_PARSE(app, argc, argv);

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        return fairclust::run_command(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
