// Acceptance suite: end-to-end checks of the estimator library and CLI.
// Each criterion prints one PASS/FAIL line; the exit code is the number of
// failures. Heavy Monte-Carlo criteria run at desk scale with fixed seeds.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "aucboot/aucboot.hpp"
#include "aucboot/dataset_io.hpp"
#include "helpers.hpp"

namespace fs = std::filesystem;
using namespace aucboot;

namespace {

std::string g_tool_path;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buf[512];
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

struct Check {
    bool ok = true;
    std::string note;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (!note.empty()) note += "; ";
            note += "FAILED " + what;
        }
    }
    void info(const std::string& what) {
        if (!note.empty()) note += "; ";
        note += what;
    }
};

// ---------------------------------------------------------------- criterion 1

Check metric_identity_suite() {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    RngStream rng(11001);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const ScoreSet s = testutil::random_scoreset(rng, 30);
        const double diff = std::abs(auc_trapezoid(empirical_roc(s)) - auc_mann_whitney(s));
        worst = std::max(worst, diff);
    }
    const double elapsed = seconds_since(start);
    c.require(worst <= 1e-12, fmt("max |trapezoid - mann-whitney| = %.3e > 1e-12", worst));
    c.require(elapsed < 5.0, fmt("runtime %.2f s >= 5 s", elapsed));
    c.info(fmt("1000 score sets, max diff %.2e, %.2f s", worst, elapsed));
    return c;
}

// ---------------------------------------------------------------- criterion 2

Check no_information_diagonal() {
    Check c;
    RngStream rng(11002);
    double worst_gap = 0.0;
    bool all_half = true;
    for (int rep = 0; rep < 100; ++rep) {
        ScoreSet s;
        if (rep % 2 == 0) {
            s = testutil::random_scoreset(rng, 12);
        } else {
            RngStream data_rng = rng.child(static_cast<std::uint64_t>(rep));
            const LabeledDataset d =
                testutil::gaussian_data(4 + rep % 8, 2, 0.8, data_rng);
            s = score_dataset(train(d, ClassifierKind::lda), d);
        }
        const ScoreSet permuted = no_information_scores(s);
        const RocCurve roc = empirical_roc(permuted);
        for (const RocPoint& p : roc.points)
            worst_gap = std::max(worst_gap, std::abs(p.tpf - p.fpf));
        if (auc_mann_whitney(permuted) != 0.5) all_half = false;
    }
    c.require(worst_gap == 0.0, fmt("max |TPF - FPF| = %.3e != 0", worst_gap));
    c.require(all_half, "no-information AUC != 0.5 exactly");
    c.info(fmt("100 scored datasets, max diagonal gap %.1f, AUC exactly 0.5", worst_gap));
    return c;
}

// ---------------------------------------------------------------- criterion 3

Check appearance_regimes() {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = 50;
    const std::size_t replicates = 10000;
    LabeledDataset d(1);
    for (std::size_t i = 0; i < n; ++i) {
        d.append({static_cast<double>(i)}, ClassLabel::one);
        d.append({100.0 + static_cast<double>(i)}, ClassLabel::two);
    }
    double included_ordered = 0.0, included_unordered = 0.0;
    const RngStream ordered_stream(11003), unordered_stream(11013);
    for (std::size_t k = 0; k < replicates; ++k) {
        RngStream ro = ordered_stream.child(k);
        const BootstrapReplicate a = stratified_bootstrap(d, ro);
        included_ordered +=
            static_cast<double>(2 * n - a.excluded1.size() - a.excluded2.size());
        RngStream ru = unordered_stream.child(k);
        const BootstrapReplicate b = unordered_bootstrap(d, ru);
        included_unordered +=
            static_cast<double>(2 * n - b.excluded1.size() - b.excluded2.size());
    }
    const double freq_ordered =
        included_ordered / static_cast<double>(replicates * 2 * n);
    const double freq_unordered =
        included_unordered / static_cast<double>(replicates * 2 * n);
    const double want_ordered = appearance_probability(n, BootstrapMode::ordered);
    const double want_unordered = appearance_probability(n, BootstrapMode::unordered);
    const double elapsed = seconds_since(start);
    c.require(std::abs(freq_ordered - want_ordered) <= 0.01,
              fmt("ordered %.4f vs %.4f", freq_ordered, want_ordered));
    c.require(std::abs(freq_unordered - want_unordered) <= 0.01,
              fmt("unordered %.4f vs %.4f", freq_unordered, want_unordered));
    c.require(elapsed < 10.0, fmt("runtime %.2f s >= 10 s", elapsed));
    c.info(fmt("ordered %.4f (expect %.4f), unordered %.4f (expect %.4f), %.2f s",
               freq_ordered, want_ordered, freq_unordered, want_unordered, elapsed));
    return c;
}

// ---------------------------------------------------------------- criterion 4

Check dot632_anchors() {
    Check c;
    c.require(dot632_error(0.0, 0.5) == 0.316, ".368*0 + .632*0.5 != 0.316 exactly");
    const Dot632PlusResult plus = dot632plus_error(0.0, 0.5, 0.5);
    c.require(std::abs(plus.value - 0.5) <= 1e-15,
              fmt("random-label .632+ = %.17f != 0.5", plus.value));
    c.require(plus.r_hat_prime == 1.0, "random-label overfit rate != 1");
    c.info(".632(0, .5) = .316 exactly; random-label .632+ = 0.5");
    return c;
}

// ---------------------------------------------------------------- criterion 5

ExperimentConfig desk_auc_config(std::size_t n_per_class) {
    ExperimentConfig cfg;
    cfg.dim = 5;
    cfg.n1 = cfg.n2 = n_per_class;
    cfg.delta = 0.65;  // tuned so the true mean AUC at n = 20/class is near 0.62
    cfg.trials = 200;
    cfg.bootstraps = 100;
    cfg.test_per_class = 1000;
    cfg.seed = 11005;
    cfg.jobs = 2;
    return cfg;
}

Check auc_experiment_orderings() {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    const MCExperimentReport report = run_mc_experiment(desk_auc_config(20));
    const double mean_true = mean_of(report.true_metric);

    double mean_star = 0.0, mean_apparent = 0.0, mean_632 = 0.0, mean_plus = 0.0;
    double corr_star = 0.0, corr_632 = 0.0, corr_plus = 0.0;
    for (const AggregateRow& row : report.aggregate()) {
        if (row.name == "star") {
            mean_star = row.mean;
            corr_star = row.corr;
        }
        if (row.name == "apparent") mean_apparent = row.mean;
        if (row.name == "dot632") {
            mean_632 = row.mean;
            corr_632 = row.corr;
        }
        if (row.name == "dot632plus") {
            mean_plus = row.mean;
            corr_plus = row.corr;
        }
    }
    const double elapsed = seconds_since(start);

    c.require(mean_true > 0.58 && mean_true < 0.66,
              fmt("true mean AUC %.4f not near 0.62", mean_true));
    c.require(mean_star < mean_true, fmt("star %.4f !< true %.4f", mean_star, mean_true));
    c.require(mean_true < mean_apparent,
              fmt("true %.4f !< apparent %.4f", mean_true, mean_apparent));
    const double gap_plus = std::abs(mean_plus - mean_true);
    const double gap_632 = std::abs(mean_632 - mean_true);
    const double gap_star = std::abs(mean_star - mean_true);
    c.require(gap_plus < gap_632, fmt(".632+ bias %.4f !< .632 bias %.4f", gap_plus, gap_632));
    c.require(gap_plus < gap_star, fmt(".632+ bias %.4f !< star bias %.4f", gap_plus, gap_star));
    for (double corr : {corr_star, corr_632, corr_plus})
        c.require(corr >= 0.1 && corr <= 0.5, fmt("correlation %.3f outside [0.1, 0.5]", corr));
    c.require(elapsed < 600.0, fmt("runtime %.1f s >= 600 s", elapsed));
    c.info(fmt("true %.4f, star %.4f, .632 %.4f, .632+ %.4f, corr %.2f/%.2f/%.2f, %.1f s",
               mean_true, mean_star, mean_632, mean_plus, corr_star, corr_632, corr_plus,
               elapsed));
    return c;
}

// ---------------------------------------------------------------- criterion 6

Check average_rms_winner() {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    // Total sample sizes, split evenly across the classes. The quadratic
    // discriminant supplies the heavy small-sample optimism this comparison
    // is about; the linear rule overfits too little here for the blended
    // estimators to differ meaningfully.
    const std::size_t sizes[3] = {20, 50, 200};
    double rms_star = 0.0, rms_632 = 0.0, rms_plus = 0.0, rms_apparent = 0.0;
    for (std::size_t s = 0; s < 3; ++s) {
        ExperimentConfig cfg = desk_auc_config(sizes[s] / 2);
        cfg.classifier = ClassifierKind::qda;
        cfg.delta = 1.0;
        cfg.seed = 51 + 100 * s;
        const MCExperimentReport report = run_mc_experiment(cfg);
        for (const AggregateRow& row : report.aggregate()) {
            if (row.name == "star") rms_star += row.rms / 3.0;
            if (row.name == "dot632") rms_632 += row.rms / 3.0;
            if (row.name == "dot632plus") rms_plus += row.rms / 3.0;
            if (row.name == "apparent") rms_apparent += row.rms / 3.0;
        }
    }
    const double elapsed = seconds_since(start);
    c.require(rms_plus < rms_star, fmt(".632+ RMS %.4f !< star RMS %.4f", rms_plus, rms_star));
    c.require(rms_plus < rms_632, fmt(".632+ RMS %.4f !< .632 RMS %.4f", rms_plus, rms_632));
    c.require(rms_apparent > rms_star && rms_apparent > rms_632 && rms_apparent > rms_plus,
              fmt("apparent RMS %.4f is not the largest", rms_apparent));
    c.info(fmt("avg RMS: .632+ %.4f < {star %.4f, .632 %.4f} << apparent %.4f, %.1f s",
               rms_plus, rms_star, rms_632, rms_apparent, elapsed));
    return c;
}

// ---------------------------------------------------------------- criterion 7

Check influence_suite() {
    Check c;
    RngStream rng(11007);
    std::vector<double> x(40);
    for (double& v : x) v = 0.4 + 1.7 * rng.next_normal();
    const std::size_t n = x.size();
    const StatisticFn mean_stat = [](std::span<const double> xs, std::span<const double> w) {
        return weighted_mean(xs, w);
    };
    const StatisticFn var_stat = [](std::span<const double> xs, std::span<const double> w) {
        return weighted_variance_biased(xs, w);
    };

    const double xbar = weighted_mean(x, uniform_weights(n));
    const InfluenceReport rep = influence_report(mean_stat, x);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(rep.u[i] - (x[i] - xbar)));
    c.require(worst <= 1e-8, fmt("influence of mean off by %.2e", worst));
    c.require(std::abs(rep.mean_u) <= 1e-8, fmt("sum of influences %.2e != 0", rep.mean_u));

    const double want_var =
        weighted_variance_biased(x, uniform_weights(n)) / static_cast<double>(n);
    c.require(std::abs(rep.variance - want_var) <= 1e-8,
              fmt("if-variance of mean %.3e vs %.3e", rep.variance, want_var));

    // The deletion perturbation reproduces every jackknife value exactly.
    const double eps = deletion_epsilon(n);
    double worst_jack = 0.0;
    for (std::size_t omit = 0; omit < n; ++omit) {
        const std::vector<double> w = perturbed_weights(n, omit, eps);
        std::vector<double> reduced;
        reduced.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i)
            if (i != omit) reduced.push_back(x[i]);
        const std::vector<double> wr = uniform_weights(n - 1);
        worst_jack = std::max(worst_jack, std::abs(mean_stat(x, w) - mean_stat(reduced, wr)));
        worst_jack = std::max(worst_jack, std::abs(var_stat(x, w) - var_stat(reduced, wr)));
    }
    c.require(worst_jack <= 1e-12,
              fmt("deletion-epsilon jackknife mismatch %.2e", worst_jack));
    c.info(fmt("influence max err %.1e, sum %.1e, variance err %.1e, jackknife err %.1e",
               worst, rep.mean_u, std::abs(rep.variance - want_var), worst_jack));
    return c;
}

// ---------------------------------------------------------------- criterion 8

Check jackknife_bootstrap_linkage() {
    Check c;
    RngStream rng(11008);
    const std::size_t n = 30;
    std::vector<double> x(n);
    for (double& v : x) v = rng.next_normal();
    const StatisticFn mean_stat = [](std::span<const double> xs, std::span<const double> w) {
        return weighted_mean(xs, w);
    };
    const double jack = jackknife_bias_se(mean_stat, x).se;
    const double boot = bootstrap_bias_se(mean_stat, x, 2000, rng.child(1)).se;
    const double want = std::sqrt((static_cast<double>(n) - 1.0) / static_cast<double>(n));
    const double ratio = boot / jack;
    c.require(std::abs(ratio / want - 1.0) <= 0.05,
              fmt("boot/jack SE ratio %.4f vs sqrt((n-1)/n) %.4f beyond 5%%", ratio, want));
    c.info(fmt("boot/jack = %.4f, sqrt((n-1)/n) = %.4f", ratio, want));
    return c;
}

// ---------------------------------------------------------------- criterion 9

Check smoothness_contrast() {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    RngStream master(11009);
    RngStream data_rng = master.child(0);
    ExperimentConfig data_cfg;
    data_cfg.dim = 2;
    data_cfg.n1 = data_cfg.n2 = 20;
    data_cfg.delta = 1.2;
    const LabeledDataset d = gen_multinormal(data_cfg, data_rng);
    const auto reps = draw_replicates(d, 1000, master.child(1));
    const DiscriminantTrainer lda{ClassifierKind::lda};

    // Sweep the class-1 case closest to the fitted boundary.
    const TrainedClassifier full = train(d, ClassifierKind::lda);
    std::size_t target = d.class1_indices().front();
    double best = std::abs(full.score(d.row(target)));
    for (std::size_t i : d.class1_indices()) {
        const double margin = std::abs(full.score(d.row(i)));
        if (margin < best) {
            best = margin;
            target = i;
        }
    }
    SweepOptions opt;
    opt.case_index = target;
    opt.coordinate = 0;
    opt.grid = default_sweep_grid(d, target, 0, 50, 3.0);
    const PerturbationSweep sweep = feature_sweep(d, lda, reps, opt);

    const double single = smoothness_metric(sweep.curve("single_component")).max_jump;
    const double star = smoothness_metric(sweep.curve("err_star")).max_jump;
    const double loob = smoothness_metric(sweep.curve("loob")).max_jump;
    const double elapsed = seconds_since(start);
    c.require(single >= 5.0 * star,
              fmt("single jump %.4f < 5x err_star jump %.4f", single, star));
    c.require(single >= 5.0 * loob, fmt("single jump %.4f < 5x loob jump %.4f", single, loob));
    c.require(loob <= 2.0 / static_cast<double>(d.size()),
              fmt("loob max jump %.4f > 2/n = %.4f", loob, 2.0 / 40.0));
    c.require(elapsed < 300.0, fmt("runtime %.1f s >= 300 s", elapsed));
    c.info(fmt("max jumps: single %.4f, err_star %.4f, loob %.4f (2/n = 0.05), %.1f s",
               single, star, loob, elapsed));
    return c;
}

// --------------------------------------------------------------- criterion 10

Check support_size_bracket() {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.dim = 5;
    cfg.delta = 0.8;
    cfg.trials = 200;
    cfg.bootstraps = 100;
    cfg.test_per_class = 1000;
    cfg.seed = 11010;
    cfg.jobs = 2;
    const std::vector<std::size_t> sizes{20, 40, 80};
    const auto rows = support_size_study(cfg, sizes);
    for (const SupportSizeRow& r : rows) {
        const double se_lo =
            1.5 * std::sqrt(r.star_632_se * r.star_632_se + r.true_se * r.true_se);
        const double se_hi =
            1.5 * std::sqrt(r.star_5_se * r.star_5_se + r.true_se * r.true_se);
        c.require(r.star_632_mean <= r.true_mean + se_lo,
                  fmt("n=%zu: star(%zu) %.4f above true %.4f + %.4f", r.n, r.n_632,
                      r.star_632_mean, r.true_mean, se_lo));
        c.require(r.true_mean <= r.star_5_mean + se_hi,
                  fmt("n=%zu: true %.4f above star(%zu) %.4f + %.4f", r.n, r.true_mean,
                      r.n_5, r.star_5_mean, se_hi));
    }
    const double elapsed = seconds_since(start);
    c.info(fmt("n=20: %.4f <= %.4f <= %.4f; n=40: %.4f <= %.4f <= %.4f; "
               "n=80: %.4f <= %.4f <= %.4f; %.1f s",
               rows[0].star_632_mean, rows[0].true_mean, rows[0].star_5_mean,
               rows[1].star_632_mean, rows[1].true_mean, rows[1].star_5_mean,
               rows[2].star_632_mean, rows[2].true_mean, rows[2].star_5_mean, elapsed));
    return c;
}

// --------------------------------------------------------------- criterion 11

Check classifier_comparison() {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.dim = 4;
    cfg.n1 = cfg.n2 = 20;
    cfg.delta = 1.2;
    cfg.trials = 200;
    cfg.bootstraps = 100;
    cfg.test_per_class = 1000;
    cfg.classifier = ClassifierKind::lda;
    cfg.classifier2 = ClassifierKind::qda;
    cfg.seed = 11011;
    cfg.jobs = 2;
    const ComparisonReport report = compare_classifiers(cfg);
    const double mean_true_diff = mean_of(report.true_diff());
    const double mean_lpob_diff = mean_of(report.est_diff());
    const double sd_true_diff = sample_sd(report.true_diff());
    const double sd_lpob_diff = sample_sd(report.est_diff());
    const double elapsed = seconds_since(start);
    c.require(mean_true_diff > 0.0, fmt("mean true difference %.4f <= 0", mean_true_diff));
    c.require(mean_lpob_diff > 0.0, fmt("mean lpob difference %.4f <= 0", mean_lpob_diff));
    c.require(sd_true_diff > 0.0 && sd_lpob_diff > 0.0, "SD columns not populated");
    c.info(fmt("true diff %.4f (SD %.4f), lpob diff %.4f (SD %.4f), %.1f s", mean_true_diff,
               sd_true_diff, mean_lpob_diff, sd_lpob_diff, elapsed));
    return c;
}

// --------------------------------------------------------------- criterion 12

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

int run_tool(const std::string& args) {
    const std::string cmd = "\"" + g_tool_path + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

Check cli_determinism() {
    Check c;
    if (g_tool_path.empty()) {
        c.require(false, "tool path not supplied (--tool)");
        return c;
    }
    const fs::path work = fs::temp_directory_path() / "aucboot_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    // A small simulate run, reproduced from its own manifest.
    const fs::path cfg_path = work / "sim.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "trials = 25\nbootstraps = 60\ndim = 3\nn1 = 14\nn2 = 14\n"
               "delta = 0.8\ntest_per_class = 300\nseed = 12012\nlpob = 1\n";
    }
    const fs::path run1 = work / "run1";
    const fs::path run2 = work / "run2";
    const fs::path run3 = work / "run3";
    c.require(run_tool("simulate --config " + cfg_path.string() + " --out-dir " +
                       run1.string()) == 0,
              "simulate run 1 failed");
    c.require(run_tool("simulate --config " + (run1 / "manifest.txt").string() +
                       " --out-dir " + run2.string()) == 0,
              "simulate rerun from manifest failed");
    c.require(run_tool("simulate --config " + (run1 / "manifest.txt").string() +
                       " --out-dir " + run3.string() + " --jobs 2") == 0,
              "simulate rerun with jobs=2 failed");
    for (const char* name : {"per_trial.csv", "aggregate.csv"}) {
        c.require(slurp(run1 / name) == slurp(run2 / name),
                  fmt("%s differs between run and manifest rerun", name));
        c.require(slurp(run1 / name) == slurp(run3 / name),
                  fmt("%s differs under a different job count", name));
        c.require(!slurp(run1 / name).empty(), fmt("%s is empty", name));
    }
    c.require(slurp(run1 / "per_trial.csv")
                      .rfind("trial,stream_seed,true,apparent,sb,star,dot632,dot632plus,lpob",
                             0) == 0,
              "per_trial.csv header schema unexpected");
    c.require(slurp(run1 / "aggregate.csv")
                      .rfind("estimator,mean,sd,rms,rms_around_mean,corr,corr_degenerate",
                             0) == 0,
              "aggregate.csv header schema unexpected");

    // A config with an unknown field must fail, naming the field.
    const fs::path bad_cfg = work / "bad.cfg";
    {
        std::ofstream bad(bad_cfg);
        bad << "trails = 10\n";
    }
    c.require(run_tool("simulate --config " + bad_cfg.string() + " --out-dir " +
                       (work / "bad_out").string()) != 0,
              "unknown config field was accepted");

    // estimate: manifest rerun reproduces the bundle files byte for byte.
    const fs::path data_path = work / "toy.csv";
    {
        std::ofstream data(data_path);
        data << "label,f1,f2\n";
        RngStream rng(9090);
        for (int i = 0; i < 12; ++i)
            data << "1," << csv_number(rng.next_normal()) << ","
                 << csv_number(rng.next_normal()) << "\n";
        for (int i = 0; i < 12; ++i)
            data << "2," << csv_number(1.0 + rng.next_normal()) << ","
                 << csv_number(1.0 + rng.next_normal()) << "\n";
    }
    const fs::path est1 = work / "est1";
    const fs::path est2 = work / "est2";
    c.require(run_tool("estimate --data " + data_path.string() +
                       " --B 80 --seed 31 --out-dir " + est1.string()) == 0,
              "estimate run failed");
    c.require(run_tool("estimate --config " + (est1 / "manifest.txt").string() +
                       " --out-dir " + est2.string()) == 0,
              "estimate rerun from manifest failed");
    for (const char* name : {"error_estimates.csv", "auc_estimates.csv", "diagnostics.csv"})
        c.require(slurp(est1 / name) == slurp(est2 / name),
                  fmt("%s differs between run and manifest rerun", name));

    // A minimal four-case, one-feature file still yields finite bundles.
    const fs::path tiny_path = work / "tiny.csv";
    {
        std::ofstream tiny(tiny_path);
        tiny << "label,f1\n1,0.1\n1,0.4\n2,0.9\n2,1.3\n";
    }
    const fs::path est3 = work / "est3";
    c.require(run_tool("estimate --data " + tiny_path.string() +
                       " --B 40 --seed 3 --out-dir " + est3.string()) == 0,
              "estimate failed on the 4-case toy file");
    {
        std::istringstream rows(slurp(est3 / "error_estimates.csv"));
        std::string line;
        std::getline(rows, line);  // header
        while (std::getline(rows, line)) {
            const std::size_t c1 = line.find(',');
            const double v = std::atof(line.substr(c1 + 1).c_str());
            c.require(std::isfinite(v), "non-finite estimator in toy bundle: " + line);
        }
    }

    if (c.ok) c.info("simulate and estimate reruns byte-identical (incl. jobs=2)");
    fs::remove_all(work);
    return c;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int a = 1; a < argc; ++a) {
        const std::string arg = argv[a];
        if (arg == "--tool" && a + 1 < argc) {
            g_tool_path = argv[++a];
        } else {
            selected.push_back(std::atoi(arg.c_str()));
        }
    }

    const std::vector<Criterion> criteria{
        {1, "trapezoid and Mann-Whitney AUC identical to 1e-12", metric_identity_suite},
        {2, "no-information ROC is the exact diagonal with AUC 0.5", no_information_diagonal},
        {3, "ordered vs unordered bootstrap appearance regimes", appearance_regimes},
        {4, ".632 arithmetic anchors", dot632_anchors},
        {5, "AUC experiment orderings and correlations at desk scale",
         auc_experiment_orderings},
        {6, ".632+ has the lowest average RMS, apparent the highest", average_rms_winner},
        {7, "influence-function suite for the sample mean", influence_suite},
        {8, "jackknife vs bootstrap SE linkage", jackknife_bootstrap_linkage},
        {9, "replicate averaging smooths the estimator response", smoothness_contrast},
        {10, "bootstrap support-size bracket", support_size_bracket},
        {11, "LDA vs QDA paired comparison", classifier_comparison},
        {12, "CLI reruns from manifests are byte-identical", cli_determinism},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), criterion.id) == selected.end())
            continue;
        Check result;
        try {
            result = criterion.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.note = std::string("exception: ") + e.what();
        }
        std::printf("%s %2d  %s%s%s\n", result.ok ? "PASS" : "FAIL", criterion.id,
                    criterion.title, result.note.empty() ? "" : "  -- ",
                    result.note.c_str());
        std::fflush(stdout);
        if (!result.ok) ++failures;
    }
    return failures;
}
