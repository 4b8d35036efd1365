// Acceptance suite: every criterion prints one [PASS]/[FAIL] line with the
// measured numbers; the exit code is the failure count. The CLI binary path
// comes in as argv[1] (used by the determinism criterion).

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"

#include "faircf/batch.hpp"
#include "faircf/dataset.hpp"
#include "faircf/explain.hpp"
#include "faircf/fairness.hpp"
#include "faircf/harness.hpp"
#include "faircf/model.hpp"
#include "faircf/simplex.hpp"

using namespace faircf;

namespace {

int failures = 0;

void report(bool ok, const std::string& line) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", line.c_str());
    if (!ok) ++failures;
}

ExperimentConfig headline_config(std::uint64_t seed, double disparity, CfMode mode) {
    ExperimentConfig cfg;
    cfg.classifier = ClassifierKind::Logreg;
    cfg.mode = mode;
    cfg.folds = 3;
    cfg.synthetic.n_per_cell = 100;
    cfg.synthetic.dim = 5;
    cfg.synthetic.separation = 2.0;
    cfg.synthetic.disparity = disparity;
    cfg.master_seed = seed;
    return cfg;
}

void criterion_1_gap_reduction() {
    int ratio_ok = 0, diff_ok = 0, improved = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto rep = run_experiment(headline_config(seed, 3.0, CfMode::Closest));
        if (rep.pooled.diff_fair <= 0.5 * rep.pooled.diff) ++ratio_ok;
        if (rep.pooled.diff > 1.0) ++diff_ok;
        if (rep.pooled.diff_fair < rep.pooled.diff) ++improved;
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "1. gap reduction: Diff-Fair <= 0.5*Diff in %d/10 seeds (need >= 8), "
                  "Diff > 1.0 in %d/10 (need >= 8); Diff-Fair < Diff in %d/10",
                  ratio_ok, diff_ok, improved);
    report(ratio_ok >= 8 && diff_ok >= 8, buf);
}

void criterion_2_no_manufactured_disparity() {
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto rep = run_experiment(headline_config(seed, 0.0, CfMode::Closest));
        if (rep.pooled.diff < 0.3 && rep.pooled.diff_fair < 0.3) ++ok;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "2. no manufactured disparity: Diff and Diff-Fair < 0.3 in %d/10 "
                  "seeds (need >= 8)",
                  ok);
    report(ok >= 8, buf);
}

void criterion_3_report_arithmetic() {
    ExperimentReport rep;
    rep.pooled = row_from_medians("pooled", 0.96, 0.97, 1.62, 1.65);
    const auto text = emit_report(rep, ReportFormat::Markdown);
    const bool ok =
        text.find("| 0.96 | 0.97 | 1.62 | 1.65 | 0.01 | 0.03 |") != std::string::npos;
    report(ok, "3. report arithmetic: medians (0.96, 0.97, 1.62, 1.65) render Diff "
               "\"0.01\" and Diff-Fair \"0.03\"");
}

void criterion_4_oracle_equivalence() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> mag(1.0, 3.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> bias(-0.5, 0.5);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);

    int valid = 0, within = 0;
    double worst_rel = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        LogisticModel model({0.0, 0.0}, 0.0);
        FeatureVector x0(2);
        while (true) {
            std::vector<double> w{(unit(rng) < 0.5 ? -1.0 : 1.0) * mag(rng),
                                  (unit(rng) < 0.5 ? -1.0 : 1.0) * mag(rng)};
            if (std::max(std::abs(w[0]), std::abs(w[1])) < 1.5) continue;
            const double b = bias(rng);
            x0 = {coord(rng), coord(rng)};
            const double logit = w[0] * x0[0] + w[1] * x0[1] + b;
            if (std::abs(logit) > 4.0) continue;  // keep scores in a sane band
            model = LogisticModel(std::move(w), b);
            break;
        }

        const auto r = closest_counterfactual(model, x0);
        if (r.valid) ++valid;
        const double oracle =
            testutil::grid_search_min_cost_2d(model, x0, r.y_cf, 4.5, 0.01, 0.05);
        const double err = std::abs(r.cost - oracle);
        if (err <= 0.1 * oracle + 0.05) ++within;
        if (oracle > 0.0) worst_rel = std::max(worst_rel, err / oracle);
    }
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "4. closest-CF oracle equivalence: %d/20 within 10%%+0.05 of the "
                  "dense grid (worst rel err %.3f), validity %d/20 (need >= 19)",
                  within, worst_rel, valid);
    report(within == 20 && valid >= 19, buf);
}

void criterion_5_hinge_semantics() {
    const auto model = testutil::one_d_threshold_model();
    const FeatureVector x0{-2.0};
    FairCfConfig cfg;  // c0 = 100, c1 = 10

    const auto base = fair_counterfactual(model, x0, 0.0, cfg, CfMode::Closest, {});
    const auto pushed = fair_counterfactual(model, x0, 5.0, cfg, CfMode::Closest, {});

    const auto objective = [&](double z, double x) {
        const double dist = std::abs(x + 2.0);
        return dist + cfg.c0 * cf_loss(model, {x}, 1, cfg.base.margin) +
               cfg.c1 * std::max(0.0, z - dist);
    };
    const auto [x_at_0, f0] = testutil::line_search_argmin(
        [&](double x) { return objective(0.0, x); }, -3.0, 8.0, 1e-3);
    const auto [x_at_5, f5] = testutil::line_search_argmin(
        [&](double x) { return objective(5.0, x); }, -3.0, 8.0, 1e-3);

    const bool ok = std::abs(base.cost - 2.0) <= 0.1 && base.valid &&
                    std::abs(pushed.cost - 5.0) <= 0.2 && pushed.valid &&
                    std::abs(base.cost - std::abs(x_at_0 + 2.0)) <= 0.05 &&
                    std::abs(pushed.cost - std::abs(x_at_5 + 2.0)) <= 0.05;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "5. hinge semantics: z=0 cost %.3f (want 2 +/- 0.1), z=5 cost %.3f "
                  "(want 5 +/- 0.2), scan optima %.3f / %.3f",
                  base.cost, pushed.cost, std::abs(x_at_0 + 2.0),
                  std::abs(x_at_5 + 2.0));
    report(ok, buf);
}

void criterion_6_plausible_guarantees() {
    std::size_t checked = 0, member_ok = 0, valid_ok = 0;
    const std::vector<std::pair<std::uint64_t, double>> runs{{1, 3.0}, {2, 3.0}, {3, 0.0}};
    for (const auto& [seed, disparity] : runs) {
        const auto cfg = headline_config(seed, disparity, CfMode::Plausible);
        const auto rep = run_experiment(cfg);

        SyntheticSpec spec = cfg.synthetic;
        spec.seed = cfg.master_seed;
        const Dataset data = generate_synthetic(spec);

        std::vector<std::unique_ptr<LogisticModel>> fold_models;
        for (const auto& rows : rep.fold_train_rows)
            fold_models.push_back(
                std::make_unique<LogisticModel>(train_logreg(subset(data, rows), cfg.train)));

        for (const auto& rec : rep.samples) {
            for (const FeatureVector* cf : {&rec.cf_normal, &rec.cf_fair}) {
                ++checked;
                bool member = false;
                for (std::size_t row : rep.fold_train_rows[rec.fold])
                    member |= (data.features[row] == *cf);
                if (member) ++member_ok;
                if (fold_models[rec.fold]->predict(*cf) == rec.y_cf) ++valid_ok;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "6. plausible guarantees: %zu/%zu training-set members, %zu/%zu "
                  "predicted as the target (need 100%%)",
                  member_ok, checked, valid_ok, checked);
    report(checked > 0 && member_ok == checked && valid_ok == checked, buf);
}

void criterion_7_optimizer_check() {
    const auto rosenbrock = [](const FeatureVector& x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    SimplexConfig cfg;
    cfg.max_iterations = 2000;
    const auto r = minimize(rosenbrock, {-1.2, 1.0}, cfg);
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "7. optimizer check: Rosenbrock value %.2e after %d iterations "
                  "(need < 1e-6 within 2000)",
                  r.value, r.iterations);
    report(r.value < 1e-6 && r.iterations <= 2000, buf);
}

void criterion_8_cli_determinism(const std::string& cli) {
    const auto dir = testutil::scratch_dir();
    const std::string flags =
        " experiment --synth-spec n-per-cell=40,dim=3,separation=2,disparity=1.5 "
        "--clf logreg --mode closest --folds 3 --seed 7 --out-dir ";
    const auto a = testutil::run_cli(cli + flags + dir + "/a");
    const auto b = testutil::run_cli(cli + flags + dir + "/b");

    const bool ok = a.exit_code == 0 && b.exit_code == 0 &&
                    testutil::read_file(dir + "/a/report.csv") ==
                        testutil::read_file(dir + "/b/report.csv") &&
                    !testutil::read_file(dir + "/a/report.csv").empty() &&
                    testutil::read_file(dir + "/a/costs_hist.csv") ==
                        testutil::read_file(dir + "/b/costs_hist.csv") &&
                    !testutil::read_file(dir + "/a/costs_hist.csv").empty();
    report(ok, "8. determinism: two cmd_experiment runs with identical flags produce "
               "bitwise-identical report.csv and costs_hist.csv");
}

void criterion_9_metric_properties() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uniform(-10.0, 10.0);
    std::uniform_int_distribution<std::size_t> dims(1, 8);
    std::size_t ok = 0;
    const std::size_t trials = 1000;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t d = dims(rng);
        FeatureVector a(d), b(d), c(d);
        for (std::size_t j = 0; j < d; ++j) {
            a[j] = uniform(rng);
            b[j] = uniform(rng);
            c[j] = uniform(rng);
        }
        const bool identity = theta(a, a) == 0.0;
        const bool symmetry = theta(a, b) == theta(b, a);
        const bool triangle = theta(a, c) <= theta(a, b) + theta(b, c);
        if (identity && symmetry && triangle) ++ok;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "9. metric properties: identity/symmetry/triangle hold on %zu/%zu "
                  "random triples",
                  ok, trials);
    report(ok == trials, buf);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "./tools/faircf";
    criterion_1_gap_reduction();
    criterion_2_no_manufactured_disparity();
    criterion_3_report_arithmetic();
    criterion_4_oracle_equivalence();
    criterion_5_hinge_semantics();
    criterion_6_plausible_guarantees();
    criterion_7_optimizer_check();
    criterion_8_cli_determinism(cli);
    criterion_9_metric_properties();
    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
