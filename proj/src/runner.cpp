#include "fairclust/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

#include "fairclust/audit.hpp"
#include "fairclust/core.hpp"
#include "fairclust/fair_assign.hpp"
#include "fairclust/io.hpp"
#include "fairclust/kernels.hpp"
#include "fairclust/rounding.hpp"
#include "fairclust/vanilla.hpp"

namespace fairclust {

using nlohmann::json;

int log_level() {
    static const int level = [] {
        const char* v = std::getenv("FAIRCLUST_LOG");
        return v ? std::atoi(v) : 0;
    }();
    return level;
}

void log_line(int level, const std::string& msg) {
    if (log_level() >= level) std::cerr << "[fairclust] " << msg << "\n";
}

namespace {

struct Dataset {
    PointSet points;
    DistanceMatrix dm;
    std::vector<Group> groups;
    std::size_t rows_rejected = 0;
};

Dataset load_dataset(const RunConfig& cfg) {
    Dataset ds;
    IngestResult in = ingest_csv_file(cfg.input, cfg.features, cfg.group_cols);
    log_line(1, "ingested " + std::to_string(in.points.size()) + " rows (" +
                    std::to_string(in.rows_rejected) + " rejected)");
    ds.rows_rejected = in.rows_rejected;
    PointSet pts = in.points.size() >= 2 ? normalize(in.points)
                                         : std::move(in.points);
    ds.groups = std::move(in.groups);
    if (cfg.subsample > 0 && cfg.subsample != pts.size()) {
        SubsampleResult sub =
            subsample(pts, ds.groups, cfg.subsample, cfg.seed);
        pts = std::move(sub.points);
        ds.groups = std::move(sub.groups);
        log_line(1, "subsampled to " + std::to_string(pts.size()) + " rows");
    }
    if (pts.size() == 0) throw std::runtime_error("no usable rows in input");
    ds.dm = DistanceMatrix::from_points(pts);
    ds.points = std::move(pts);
    return ds;
}

FairnessConstraintSet build_fairness(const RunConfig& cfg,
                                     const DistanceMatrix& dm) {
    if (cfg.fairness == "f1") return fairness_f1(dm, cfg.m);
    if (cfg.fairness == "f2") return fairness_f2(dm, cfg.k);
    if (cfg.fairness == "metric") return fairness_from_metric(dm);
    if (cfg.fairness.rfind("file=", 0) == 0)
        return read_fairness_file(cfg.fairness.substr(5));
    throw std::invalid_argument("unknown fairness measure: " + cfg.fairness);
}

json config_echo(const RunConfig& cfg) {
    return json{{"command", cfg.command},
                {"input", cfg.input},
                {"features", cfg.features},
                {"groups", cfg.group_cols},
                {"k", cfg.k},
                {"p", cfg.p},
                {"fairness", cfg.fairness},
                {"m", cfg.m},
                {"delta", cfg.delta},
                {"seed", cfg.seed},
                {"subsample", cfg.subsample},
                {"tol", cfg.tol},
                {"threads", cfg.threads},
                {"out", cfg.out},
                {"soft", cfg.soft}};
}

json violations_json(const ViolationReport& rep) {
    return json{{"checked", rep.checked},
                {"violations", rep.violations},
                {"fraction", rep.fraction()},
                {"max_excess", rep.max_excess}};
}

json per_group_json(const SoftClustering& sc, const DistanceMatrix& dm,
                    const std::vector<Group>& groups, double tol) {
    json arr = json::array();
    const std::vector<BiasCheck> checks = check_bias_bound(sc, dm, groups, tol);
    for (std::size_t r = 0; r < checks.size(); ++r) {
        arr.push_back(json{{"group", checks[r].group},
                           {"size", groups[r].members.size()},
                           {"mad", checks[r].mad},
                           {"emd_bound", checks[r].bound},
                           {"gap", checks[r].gap},
                           {"holds", checks[r].holds}});
    }
    return arr;
}

json ratio_or_null(double num, double den) {
    if (den > 0.0) return num / den;
    return nullptr;
}

// Largest violation of the per-(center, group) mass sandwich, for the report.
double sandwich_excess(const SoftClustering& sc, const GroupSpec& gs) {
    double worst = 0.0;
    for (std::size_t c = 0; c < sc.num_centers(); ++c) {
        double total = 0.0;
        for (std::size_t j = 0; j < sc.num_points(); ++j) total += sc.mu[j][c];
        for (std::size_t r = 0; r < gs.num_groups(); ++r) {
            double mass = 0.0;
            for (int j : gs.groups[r].members)
                mass += sc.mu[static_cast<std::size_t>(j)][c];
            worst = std::max(worst, mass - gs.alpha[r] * total);
            worst = std::max(worst, gs.beta[r] * total - mass);
        }
    }
    return worst;
}

PNorm pnorm_of(const RunConfig& cfg) { return parse_pnorm(cfg.p); }

void require_finite_p(const PNorm& p, const char* cmd) {
    if (p.infinite)
        throw std::invalid_argument(std::string(cmd) +
                                    " needs p = 1 or 2; use kcenter-fair for "
                                    "p = inf");
}

HardClustering vanilla_clustering(const Dataset& ds, const RunConfig& cfg,
                                  PNorm p) {
    if (p.infinite) return gonzalez_kcenter(ds.dm, cfg.k);
    if (p.p == 2.0) return lloyd_kmeans(ds.points, cfg.k, cfg.seed).clustering;
    return local_search_kmedian(ds.dm, cfg.k, p.p);
}

json cmd_cluster(const RunConfig& cfg, const Dataset& ds) {
    const PNorm p = pnorm_of(cfg);
    const HardClustering hc = vanilla_clustering(ds, cfg, p);
    return json{{"centers", hc.centers},
                {"assign", hc.assign},
                {"costs", json{{"cost", hard_cost(hc, ds.dm, p)}}}};
}

json cmd_fair(const RunConfig& cfg, const Dataset& ds, SoftClustering* soft) {
    const PNorm p = pnorm_of(cfg);
    require_finite_p(p, "fair");
    const FairnessConstraintSet fairness = build_fairness(cfg, ds.dm);
    const AlgResult res =
        alg_if(ds.dm, &ds.points, cfg.k, p, fairness, cfg.seed);
    json rep{{"centers", res.stage1.centers},
             {"costs", json{{"vanilla_cost", res.stage1_cost},
                            {"fair_cost", res.fair_cost},
                            {"ratio", ratio_or_null(res.fair_cost,
                                                    res.stage1_cost)}}},
             {"violations",
              violations_json(count_violations(res.soft, fairness, cfg.tol))},
             {"fairness_pairs", fairness.num_pairs()}};
    if (!ds.groups.empty())
        rep["per_group"] = per_group_json(res.soft, ds.dm, ds.groups, cfg.tol);
    *soft = res.soft;
    return rep;
}

json cmd_combined(const RunConfig& cfg, const Dataset& ds,
                  SoftClustering* soft) {
    const PNorm p = pnorm_of(cfg);
    require_finite_p(p, "combined");
    if (ds.groups.empty())
        throw std::invalid_argument("combined needs at least one group column");
    const FairnessConstraintSet fairness = build_fairness(cfg, ds.dm);
    const GroupSpec gs =
        GroupSpec::from_delta(ds.groups, cfg.delta, ds.dm.size());
    const AlgResult res =
        alg_cf(ds.dm, &ds.points, cfg.k, p, fairness, gs, cfg.seed);
    json rep{{"centers", res.stage1.centers},
             {"costs", json{{"vanilla_cost", res.stage1_cost},
                            {"fair_cost", res.fair_cost},
                            {"ratio", ratio_or_null(res.fair_cost,
                                                    res.stage1_cost)}}},
             {"bounds", json{{"sandwich_max_excess",
                              sandwich_excess(res.soft, gs)}}},
             {"per_group", per_group_json(res.soft, ds.dm, ds.groups, cfg.tol)},
             {"fairness_pairs", fairness.num_pairs()}};
    // only within-group pairs are enforced; count violations on that subset
    FairnessConstraintSet within;
    {
        std::vector<std::vector<bool>> in_group(
            gs.num_groups(), std::vector<bool>(ds.dm.size(), false));
        for (std::size_t r = 0; r < gs.num_groups(); ++r)
            for (int j : gs.groups[r].members)
                in_group[r][static_cast<std::size_t>(j)] = true;
        for (const auto& [pair, bound] : fairness.bounds())
            for (std::size_t r = 0; r < gs.num_groups(); ++r)
                if (in_group[r][static_cast<std::size_t>(pair.first)] &&
                    in_group[r][static_cast<std::size_t>(pair.second)])
                    within.add(pair.first, pair.second, bound);
    }
    rep["violations"] =
        violations_json(count_violations(res.soft, within, cfg.tol));
    *soft = res.soft;
    return rep;
}

json cmd_kcenter(const RunConfig& cfg, const Dataset& ds,
                 SoftClustering* soft) {
    const FairnessConstraintSet fairness = build_fairness(cfg, ds.dm);
    const GroupSpec gs =
        GroupSpec::from_delta(ds.groups, cfg.delta, ds.dm.size());
    const KCenterResult res = fair_kcenter(
        ds.dm, cfg.k, fairness, ds.groups.empty() ? nullptr : &gs);
    json rep{{"centers", res.soft.centers},
             {"costs", json{{"radius", res.radius},
                            {"guess", res.guess},
                            {"support_radius",
                             support_radius(res.soft, ds.dm)}}},
             {"violations",
              violations_json(count_violations(res.soft, fairness, cfg.tol))},
             {"timings", json{{"guesses_tried", res.guesses_tried}}}};
    if (!ds.groups.empty())
        rep["per_group"] = per_group_json(res.soft, ds.dm, ds.groups, cfg.tol);
    *soft = res.soft;
    return rep;
}

json cmd_audit(const RunConfig& cfg, const Dataset& ds) {
    if (cfg.soft.empty())
        throw std::invalid_argument("audit needs --soft PATH");
    const SoftClustering sc = read_soft_csv_file(cfg.soft);
    if (sc.num_points() != ds.dm.size())
        throw std::runtime_error("soft clustering row count does not match "
                                 "the dataset");
    for (int c : sc.centers)
        if (c < 0 || static_cast<std::size_t>(c) >= ds.dm.size())
            throw std::runtime_error("soft clustering center id out of range");
    const FairnessConstraintSet fairness = build_fairness(cfg, ds.dm);
    json rep{{"violations",
              violations_json(count_violations(sc, fairness, cfg.tol))},
             {"costs", json{{"cost", soft_cost(sc, ds.dm, pnorm_of(cfg))}}},
             {"fairness_pairs", fairness.num_pairs()}};
    if (!ds.groups.empty())
        rep["per_group"] = per_group_json(sc, ds.dm, ds.groups, cfg.tol);
    return rep;
}

json cmd_baseline(const RunConfig& cfg, const Dataset& ds,
                  SoftClustering* soft) {
    const PNorm p = pnorm_of(cfg);
    require_finite_p(p, "baseline");
    const FairnessConstraintSet fairness = build_fairness(cfg, ds.dm);
    const AlgResult fair =
        alg_if(ds.dm, &ds.points, cfg.k, p, fairness, cfg.seed);
    const double beta =
        calibrate_beta(ds.dm, fair.stage1.centers, p, fair.fair_cost);
    const SoftClustering base = soften(ds.dm, fair.stage1.centers, beta);
    json rep{{"centers", fair.stage1.centers},
             {"costs", json{{"target_cost", fair.fair_cost},
                            {"baseline_cost", soft_cost(base, ds.dm, p)},
                            {"beta", beta}}},
             {"violations",
              json{{"baseline", violations_json(
                                    count_violations(base, fairness, cfg.tol))},
                   {"fair", violations_json(count_violations(fair.soft,
                                                             fairness,
                                                             cfg.tol))}}},
             {"fairness_pairs", fairness.num_pairs()}};
    *soft = base;
    return rep;
}

json cmd_bound(const RunConfig& cfg, const Dataset& ds) {
    const PNorm p = pnorm_of(cfg);
    require_finite_p(p, "bound");
    const FairnessConstraintSet fairness = build_fairness(cfg, ds.dm);
    const AlgResult res =
        alg_if(ds.dm, &ds.points, cfg.k, p, fairness, cfg.seed);
    const double lb_fair = lower_bound(ds.dm, cfg.k, fairness, p);
    const double lb_vanilla =
        lower_bound(ds.dm, cfg.k, FairnessConstraintSet{}, p);
    // rho falls back to 1 when the vanilla relaxation is 0; then stage 1 is
    // also 0 and the theorem bound degenerates with it.
    const double rho =
        lb_vanilla > 0.0 ? res.stage1_cost / lb_vanilla : 1.0;
    const double factor = std::pow(3.0, 1.0 - 1.0 / p.p) * (rho + 2.0);
    return json{
        {"costs", json{{"vanilla_cost", res.stage1_cost},
                       {"fair_cost", res.fair_cost}}},
        {"bounds", json{{"lower_bound", lb_fair},
                        {"vanilla_lower_bound", lb_vanilla},
                        {"rho", rho},
                        {"theorem_factor", factor},
                        {"theorem_bound", factor * lb_fair},
                        {"theorem_holds",
                         res.fair_cost <= factor * lb_fair + 1e-9},
                        {"ratio", ratio_or_null(res.fair_cost, lb_fair)}}}};
}

json cmd_reduce(const RunConfig& cfg) {
    std::ifstream f(cfg.input);
    if (!f) throw std::runtime_error("cannot open graph file: " + cfg.input);
    const Graph g = parse_graph(f);
    const ReductionReport rep = reduction_report(g, cfg.k);
    return json{{"graph", json{{"n", g.n}, {"edges", g.edges.size()}}},
                {"k", cfg.k},
                {"domset", rep.domset},
                {"fair_opt", rep.fair_opt},
                {"agrees", rep.agrees}};
}

void emit(const RunConfig& cfg, json rep, const SoftClustering* soft) {
    rep["config"] = config_echo(cfg);
    if (!rep.contains("timings"))
        rep["timings"] = json::object();
    // wall-clock time goes to the FAIRCLUST_LOG stream so reports stay
    // byte-identical across runs
    rep["timings"]["wall_clock"] = "logged to stderr at FAIRCLUST_LOG>=1";
    const std::string text = rep.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(cfg.out);
    const std::string report_path =
        (std::filesystem::path(cfg.out) / "report.json").string();
    std::ofstream f(report_path);
    if (!f) throw std::runtime_error("cannot write report: " + report_path);
    f << text;
    log_line(1, "report written to " + report_path);
    if (soft) {
        const std::string soft_path =
            (std::filesystem::path(cfg.out) / "soft.csv").string();
        write_soft_csv_file(soft_path, *soft);
        log_line(1, "distributions written to " + soft_path);
    }
}

}  // namespace

int run_command(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
    kernels::set_max_threads(cfg.threads);

    json rep;
    SoftClustering soft;
    bool has_soft = false;
    if (cfg.command == "cluster") {
        rep = cmd_cluster(cfg, load_dataset(cfg));
    } else if (cfg.command == "fair") {
        rep = cmd_fair(cfg, load_dataset(cfg), &soft);
        has_soft = true;
    } else if (cfg.command == "combined") {
        rep = cmd_combined(cfg, load_dataset(cfg), &soft);
        has_soft = true;
    } else if (cfg.command == "kcenter-fair") {
        rep = cmd_kcenter(cfg, load_dataset(cfg), &soft);
        has_soft = true;
    } else if (cfg.command == "audit") {
        rep = cmd_audit(cfg, load_dataset(cfg));
    } else if (cfg.command == "baseline") {
        rep = cmd_baseline(cfg, load_dataset(cfg), &soft);
        has_soft = true;
    } else if (cfg.command == "bound") {
        rep = cmd_bound(cfg, load_dataset(cfg));
    } else if (cfg.command == "reduce") {
        rep = cmd_reduce(cfg);
    } else {
        throw std::invalid_argument("unknown command: " + cfg.command);
    }

    emit(cfg, std::move(rep), has_soft ? &soft : nullptr);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    log_line(1, cfg.command + " finished in " + std::to_string(ms) + " ms");
    return 0;
}

}  // namespace fairclust
