// Command-line front end: binds experiment configs to the estimator library
// and writes CSV reports plus a manifest sufficient to reproduce each run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aucboot/aucboot.hpp"
#include "aucboot/dataset_io.hpp"

namespace fs = std::filesystem;
using namespace aucboot;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> bootstraps;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> jobs;

    void attach(CLI::App& cmd) {
        cmd.add_option("--config", config_path, "flat key = value config file");
        cmd.add_option("--out-dir", out_dir, "directory for CSV outputs and the manifest");
        cmd.add_option("--seed", seed, "master seed (overrides the config)");
        cmd.add_option("--B", bootstraps, "bootstrap replicates (overrides the config)");
        cmd.add_option("--trials", trials, "Monte-Carlo trials (overrides the config)");
        cmd.add_option("--jobs", jobs, "parallel trial workers (overrides the config)");
    }

    KeyValueFile load_kv() const {
        KeyValueFile kv;
        if (!config_path.empty()) kv = KeyValueFile::parse_file(config_path);
        if (seed) kv.set("seed", std::to_string(*seed));
        if (bootstraps) kv.set("bootstraps", std::to_string(*bootstraps));
        if (trials) kv.set("trials", std::to_string(*trials));
        if (jobs) kv.set("jobs", std::to_string(*jobs));
        return kv;
    }
};

class RunWriter {
public:
    RunWriter(std::string command, const fs::path& out_dir)
        : command_(std::move(command)), out_dir_(out_dir), start_(clock::now()) {
        fs::create_directories(out_dir_);
    }

    fs::path write(const std::string& name, const CsvTable& table) {
        const fs::path path = out_dir_ / name;
        table.write_atomic(path);
        outputs_.push_back(name);
        return path;
    }

    void finish(const KeyValueFile& resolved) {
        RunManifest manifest;
        manifest.command = command_;
        manifest.resolved = resolved;
        manifest.outputs = outputs_;
        manifest.wall_clock_ms =
            std::chrono::duration<double, std::milli>(clock::now() - start_).count();
        manifest.write_atomic(out_dir_ / "manifest.txt");
        std::cout << command_ << ": wrote " << outputs_.size() << " file(s) + manifest to "
                  << out_dir_.string() << "\n";
    }

private:
    using clock = std::chrono::steady_clock;
    std::string command_;
    fs::path out_dir_;
    std::vector<std::string> outputs_;
    clock::time_point start_;
};

std::string flag_cell(bool flagged) { return flagged ? "1" : "0"; }

int cmd_estimate(const CommonFlags& flags, const std::string& data_flag, double threshold_flag,
                 bool threshold_set) {
    KeyValueFile kv = flags.load_kv();
    if (!data_flag.empty()) kv.set("data", data_flag);
    if (threshold_set) kv.set("threshold", csv_number(threshold_flag));
    const std::string data_path = kv.get_string("data");
    if (data_path.empty())
        throw std::invalid_argument("estimate: a dataset is required (--data or `data =` key)");

    const ExperimentConfig cfg = config_from_kv(kv);
    const LabeledDataset data = load_dataset_csv(data_path);

    const RngStream master(cfg.seed);
    const auto reps =
        draw_replicates(data, cfg.bootstraps, master.child(stream_id::replicates));
    const DiscriminantTrainer trainer{cfg.classifier};

    const ErrEstimateBundle err =
        estimate_errors(data, trainer, reps, cfg.threshold, master.child(stream_id::supplements));
    const LoobInfluenceResult loob_sd = if_variance_loob_error(
        data, trainer, reps, cfg.threshold, master.child(stream_id::supplements));
    const AucEstimateBundle auc =
        estimate_auc(data, trainer, reps, master.child(stream_id::lpob_supplements));

    RunWriter writer("estimate", flags.out_dir);

    CsvTable err_table({"estimator", "value", "se"});
    err_table.add_row({"apparent", csv_number(err.apparent), ""});
    // LOOCV is undefined when every deletion leaves an untrainable class
    // (two-case classes); diagnostics carry the skip count either way.
    if (std::isfinite(err.loocv)) err_table.add_row({"loocv", csv_number(err.loocv), ""});
    err_table.add_row({"simple_boot", csv_number(err.simple_boot), ""});
    err_table.add_row({"loob", csv_number(err.loob), csv_number(loob_sd.sd)});
    err_table.add_row({"err_star", csv_number(err.err_star), ""});
    err_table.add_row({"refined", csv_number(err.refined), ""});
    err_table.add_row({"dot632", csv_number(err.dot632), ""});
    err_table.add_row({"dot632plus", csv_number(err.dot632plus), ""});
    err_table.add_row({"gamma_hat", csv_number(err.gamma_hat), ""});
    err_table.add_row({"r_hat_prime", csv_number(err.r_hat_prime), ""});
    writer.write("error_estimates.csv", err_table);

    CsvTable auc_table({"estimator", "value"});
    auc_table.add_row({"apparent", csv_number(auc.apparent)});
    auc_table.add_row({"simple_boot", csv_number(auc.simple_boot)});
    auc_table.add_row({"star", csv_number(auc.star)});
    auc_table.add_row({"dot632", csv_number(auc.dot632)});
    auc_table.add_row({"dot632plus", csv_number(auc.dot632plus)});
    auc_table.add_row({"lpob", csv_number(auc.lpob)});
    auc_table.add_row({"gamma_auc", csv_number(gamma_auc())});
    auc_table.add_row({"r_hat_prime", csv_number(auc.r_hat_prime)});
    writer.write("auc_estimates.csv", auc_table);

    CsvTable diag({"counter", "count"});
    diag.add_row({"bootstraps", csv_number(err.bootstraps)});
    diag.add_row({"err_star_dropped", csv_number(err.err_star_dropped)});
    diag.add_row({"loob_supplements", csv_number(err.loob_supplements)});
    diag.add_row({"loocv_skipped", csv_number(err.loocv_skipped)});
    diag.add_row({"auc_star_dropped", csv_number(auc.star_dropped)});
    diag.add_row({"lpob_uncovered_pairs", csv_number(auc.lpob_uncovered_pairs)});
    writer.write("diagnostics.csv", diag);

    KeyValueFile resolved = kv_from_config(cfg);
    resolved.set("data", data_path);
    writer.finish(resolved);
    return 0;
}

int cmd_simulate(const CommonFlags& flags) {
    const KeyValueFile kv = flags.load_kv();
    const ExperimentConfig cfg = config_from_kv(kv);
    const MCExperimentReport report = run_mc_experiment(cfg);

    RunWriter writer("simulate", flags.out_dir);

    std::vector<std::string> header{"trial", "stream_seed", "true"};
    for (const auto& t : report.estimators) header.push_back(t.name);
    CsvTable per_trial(header);
    for (std::size_t g = 0; g < cfg.trials; ++g) {
        std::vector<std::string> row{csv_number(g), std::to_string(report.trial_seed[g]),
                                     csv_number(report.true_metric[g])};
        for (const auto& t : report.estimators) row.push_back(csv_number(t.per_trial[g]));
        per_trial.add_row(std::move(row));
    }
    writer.write("per_trial.csv", per_trial);

    CsvTable aggregate(
        {"estimator", "mean", "sd", "rms", "rms_around_mean", "corr", "corr_degenerate"});
    for (const AggregateRow& row : report.aggregate())
        aggregate.add_row({row.name, csv_number(row.mean), csv_number(row.sd),
                           csv_number(row.rms), csv_number(row.rms_around_mean),
                           csv_number(row.corr), flag_cell(row.corr_degenerate)});
    writer.write("aggregate.csv", aggregate);

    writer.finish(kv_from_config(cfg));
    return 0;
}

int cmd_smoothness(const CommonFlags& flags) {
    const KeyValueFile kv = flags.load_kv();
    ExperimentConfig cfg = config_from_kv(kv);
    // Smoothness sweeps rely on heavy replicate averaging; they default to
    // ten times the experiment default unless set explicitly.
    if (!kv.has("bootstraps")) cfg.bootstraps = 1000;

    const RngStream master(cfg.seed);
    RngStream data_rng = master.child(stream_id::train_data);
    const LabeledDataset data = gen_multinormal(cfg, data_rng);
    const auto reps =
        draw_replicates(data, cfg.bootstraps, master.child(stream_id::replicates));
    const DiscriminantTrainer trainer{cfg.classifier};

    SweepOptions opt;
    const std::size_t case_in_class1 =
        static_cast<std::size_t>(kv.get_u64("sweep_case", 0));
    if (case_in_class1 >= data.n1())
        throw std::invalid_argument("config field `sweep_case`: index exceeds class-1 size");
    opt.case_index = data.class1_indices()[case_in_class1];
    opt.coordinate = static_cast<std::size_t>(kv.get_u64("sweep_coord", 0));
    if (opt.coordinate >= cfg.dim)
        throw std::invalid_argument("config field `sweep_coord`: exceeds dimension");
    opt.threshold = cfg.threshold;
    const std::size_t points = static_cast<std::size_t>(kv.get_u64("sweep_points", 50));
    const double span_sd = kv.get_double("sweep_span_sd", 3.0);
    opt.grid = default_sweep_grid(data, opt.case_index, opt.coordinate, points, span_sd);

    const PerturbationSweep sweep = feature_sweep(data, trainer, reps, opt);

    RunWriter writer("smoothness", flags.out_dir);

    std::vector<std::string> header{"grid_value"};
    for (const auto& name : sweep.names) header.push_back(name);
    CsvTable table(header);
    for (std::size_t g = 0; g < sweep.grid.size(); ++g) {
        std::vector<std::string> row{csv_number(sweep.grid[g])};
        for (const auto& curve : sweep.curves) row.push_back(csv_number(curve[g]));
        table.add_row(std::move(row));
    }
    writer.write("sweep.csv", table);

    if (cfg.classifier == ClassifierKind::lda) {
        // Coefficients of the first few replicate decision surfaces, for
        // external plotting.
        std::vector<std::string> sh{"replicate"};
        for (std::size_t j = 0; j < cfg.dim; ++j) sh.push_back("w" + std::to_string(j));
        sh.push_back("bias");
        CsvTable surfaces(sh);
        const std::size_t count = std::min<std::size_t>(5, reps.size());
        for (std::size_t b = 0; b < count; ++b) {
            const TrainedClassifier m = train_subset(data, reps[b].indices, cfg.classifier);
            std::vector<std::string> row{csv_number(b)};
            for (double w : m.lda_weights) row.push_back(csv_number(w));
            row.push_back(csv_number(m.lda_bias));
            surfaces.add_row(std::move(row));
        }
        writer.write("surfaces.csv", surfaces);
    }

    KeyValueFile resolved = kv_from_config(cfg);
    resolved.set("sweep_case", std::to_string(case_in_class1));
    resolved.set("sweep_coord", std::to_string(opt.coordinate));
    resolved.set("sweep_points", std::to_string(points));
    resolved.set("sweep_span_sd", csv_number(span_sd));
    writer.finish(resolved);
    return 0;
}

int cmd_compare(const CommonFlags& flags) {
    const KeyValueFile kv = flags.load_kv();
    const ExperimentConfig cfg = config_from_kv(kv);
    const ComparisonReport report = compare_classifiers(cfg);

    RunWriter writer("compare", flags.out_dir);

    const std::string est = report.estimator_name;
    CsvTable per_trial({"trial", "stream_seed", "true1", "true2", "true_diff", est + "1",
                        est + "2", est + "_diff"});
    const auto true_diff = report.true_diff();
    const auto est_diff = report.est_diff();
    for (std::size_t g = 0; g < cfg.trials; ++g)
        per_trial.add_row({csv_number(g), std::to_string(report.trial_seed[g]),
                           csv_number(report.true1[g]), csv_number(report.true2[g]),
                           csv_number(true_diff[g]), csv_number(report.est1[g]),
                           csv_number(report.est2[g]), csv_number(est_diff[g])});
    writer.write("comparison_trials.csv", per_trial);

    CsvTable summary({"quantity", "classifier1", "classifier2", "difference"});
    summary.add_row({"mean_true", csv_number(mean_of(report.true1)),
                     csv_number(mean_of(report.true2)), csv_number(mean_of(true_diff))});
    summary.add_row({"sd_true", csv_number(sample_sd(report.true1)),
                     csv_number(sample_sd(report.true2)), csv_number(sample_sd(true_diff))});
    summary.add_row({"mean_" + est, csv_number(mean_of(report.est1)),
                     csv_number(mean_of(report.est2)), csv_number(mean_of(est_diff))});
    summary.add_row({"sd_" + est, csv_number(sample_sd(report.est1)),
                     csv_number(sample_sd(report.est2)), csv_number(sample_sd(est_diff))});
    writer.write("comparison_summary.csv", summary);

    writer.finish(kv_from_config(cfg));
    return 0;
}

int cmd_support_study(const CommonFlags& flags) {
    const KeyValueFile kv = flags.load_kv();
    const ExperimentConfig cfg = config_from_kv(kv);
    const std::vector<std::size_t> sizes =
        parse_size_list(kv.get_string("sizes", "20,40,80"), "sizes");
    const auto rows = support_size_study(cfg, sizes);

    RunWriter writer("support-study", flags.out_dir);
    CsvTable table({"n", "n_632", "n_5", "true_mean", "true_se", "star_632_mean", "star_632_se",
                    "star_5_mean", "star_5_se"});
    for (const SupportSizeRow& r : rows)
        table.add_row({csv_number(r.n), csv_number(r.n_632), csv_number(r.n_5),
                       csv_number(r.true_mean), csv_number(r.true_se),
                       csv_number(r.star_632_mean), csv_number(r.star_632_se),
                       csv_number(r.star_5_mean), csv_number(r.star_5_se)});
    writer.write("support_study.csv", table);

    KeyValueFile resolved = kv_from_config(cfg);
    resolved.set("sizes", kv.get_string("sizes", "20,40,80"));
    writer.finish(resolved);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bootstrap estimators of classifier error rate and AUC"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version_string));

    CommonFlags estimate_flags, simulate_flags, smooth_flags, compare_flags, support_flags;
    std::string data_path;
    double threshold = 0.0;

    CLI::App* estimate = app.add_subcommand(
        "estimate", "error and AUC estimator bundles for a dataset file");
    estimate_flags.attach(*estimate);
    estimate->add_option("--data", data_path, "dataset CSV (label,feature columns)");
    CLI::Option* threshold_opt =
        estimate->add_option("--threshold", threshold, "decision threshold for error rates");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte-Carlo estimator comparison on multinormal data");
    simulate_flags.attach(*simulate);

    CLI::App* smoothness = app.add_subcommand(
        "smoothness", "estimator response to sweeping one feature of one case");
    smooth_flags.attach(*smoothness);

    CLI::App* compare =
        app.add_subcommand("compare", "paired comparison of two classifiers");
    compare_flags.attach(*compare);

    CLI::App* support = app.add_subcommand(
        "support-study", "bootstrap support-size bracketing of the true metric");
    support_flags.attach(*support);

    CLI11_PARSE(app, argc, argv);

    try {
        if (estimate->parsed())
            return cmd_estimate(estimate_flags, data_path, threshold,
                                threshold_opt->count() > 0);
        if (simulate->parsed()) return cmd_simulate(simulate_flags);
        if (smoothness->parsed()) return cmd_smoothness(smooth_flags);
        if (compare->parsed()) return cmd_compare(compare_flags);
        if (support->parsed()) return cmd_support_study(support_flags);
    } catch (const std::exception& e) {
        std::cerr << "aucboot: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
