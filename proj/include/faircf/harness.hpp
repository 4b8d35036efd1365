#ifndef FAIRCF_HARNESS_HPP
#define FAIRCF_HARNESS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "faircf/batch.hpp"
#include "faircf/dataset.hpp"
#include "faircf/explain.hpp"
#include "faircf/fairness.hpp"
#include "faircf/model.hpp"
#include "faircf/simplex.hpp"

namespace faircf {

enum class ClassifierKind { Logreg, Dectree, Gnb };

std::string to_string(ClassifierKind kind);
ClassifierKind classifier_from_string(const std::string& name);

struct ExperimentConfig {
    ClassifierKind classifier = ClassifierKind::Logreg;
    CfMode mode = CfMode::Closest;
    std::size_t folds = 3;
    FairCfConfig fair;
    SimplexConfig simplex;
    TrainConfig train;
    BatchOptions batch;

    // Data source: a CSV path, or a synthetic spec when the path is empty.
    std::string data_path;
    std::string label_column = "y";
    std::string group_column = "g";
    SyntheticSpec synthetic;

    std::uint64_t master_seed = 0;
};

struct ReportRow {
    std::string label;  // "fold-1", ..., "pooled"
    double group0 = 0.0, group1 = 0.0;            // median normal cost
    double group0_fair = 0.0, group1_fair = 0.0;  // median fair cost
    double diff = 0.0, diff_fair = 0.0;
    double validity_normal = 0.0, validity_fair = 0.0;
    std::size_t count0 = 0, count1 = 0;  // explained samples per group
};

ReportRow row_from_medians(std::string label, double g0, double g1,
                           double g0_fair, double g1_fair);

struct SampleRecord {
    std::size_t fold = 0;
    std::size_t row_id = 0;
    int group = 0;
    int y_cf = 0;
    double cost_normal = 0.0, cost_fair = 0.0;
    bool valid_normal = false, valid_fair = false;
    FeatureVector cf_normal, cf_fair;
};

struct ExperimentReport {
    std::vector<ReportRow> fold_rows;
    ReportRow pooled;
    std::vector<SampleRecord> samples;
    std::vector<std::vector<std::size_t>> fold_train_rows;  // row ids per fold
};

/// Per fold: train ignoring groups, explain every correctly classified test
/// sample, build Algorithm-1 cost pools from the training split, pre-draw one
/// z per test sample, compute fair counterfactuals, aggregate medians.
/// Fully deterministic per master seed.
ExperimentReport run_experiment(const ExperimentConfig& config);

enum class ReportFormat { Markdown, Csv };

/// Markdown renders the six Table-style cost columns rounded to two
/// decimals; CSV keeps full precision (round-trips exactly).
std::string emit_report(const ExperimentReport& report, ReportFormat format);

/// Long-format CSV (group_id, variant, cost), one row per explained sample.
std::string emit_histogram_data(const CostPool& normal0, const CostPool& normal1,
                                const CostPool& fair0, const CostPool& fair1);

/// The four per-group cost pools (normal g0, normal g1, fair g0, fair g1)
/// over all explained samples of the report.
std::array<CostPool, 4> histogram_pools(const ExperimentReport& report);

/// Writes report.md, report.csv and costs_hist.csv into `out_dir`.
void write_report_files(const ExperimentReport& report, const std::string& out_dir);

}  // namespace faircf

#endif  // FAIRCF_HARNESS_HPP
