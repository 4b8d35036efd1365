#include "faircf/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <utility>

#include "faircf/errors.hpp"

namespace faircf {

std::string to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::Logreg: return "logreg";
        case ClassifierKind::Dectree: return "dectree";
        case ClassifierKind::Gnb: return "gnb";
    }
    return "unknown";
}

ClassifierKind classifier_from_string(const std::string& name) {
    if (name == "logreg") return ClassifierKind::Logreg;
    if (name == "dectree") return ClassifierKind::Dectree;
    if (name == "gnb") return ClassifierKind::Gnb;
    throw ConfigError("unknown classifier '" + name + "'");
}

namespace {

std::string format_fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::unique_ptr<PredictionModel> train_model(ClassifierKind kind, const Dataset& train,
                                             const TrainConfig& cfg) {
    switch (kind) {
        case ClassifierKind::Logreg:
            return std::make_unique<LogisticModel>(train_logreg(train, cfg));
        case ClassifierKind::Dectree:
            return std::make_unique<TreeModel>(train_tree(train, cfg));
        case ClassifierKind::Gnb:
            return std::make_unique<GaussianNBModel>(train_gnb(train, cfg.variance_floor));
    }
    throw ConfigError("unknown classifier kind");
}

struct GroupCosts {
    std::vector<double> normal[2];
    std::vector<double> fair[2];
    std::size_t valid_normal = 0, valid_fair = 0, explained = 0;
};

ReportRow make_row(const std::string& label, const GroupCosts& gc) {
    if (gc.normal[0].empty() || gc.normal[1].empty())
        throw EmptyPool(label + ": a protected group has no explained samples");
    ReportRow row = row_from_medians(label, median_of(gc.normal[0]),
                                     median_of(gc.normal[1]), median_of(gc.fair[0]),
                                     median_of(gc.fair[1]));
    row.validity_normal =
        static_cast<double>(gc.valid_normal) / static_cast<double>(gc.explained);
    row.validity_fair =
        static_cast<double>(gc.valid_fair) / static_cast<double>(gc.explained);
    row.count0 = gc.normal[0].size();
    row.count1 = gc.normal[1].size();
    return row;
}

}  // namespace

ReportRow row_from_medians(std::string label, double g0, double g1, double g0_fair,
                           double g1_fair) {
    ReportRow row;
    row.label = std::move(label);
    row.group0 = g0;
    row.group1 = g1;
    row.group0_fair = g0_fair;
    row.group1_fair = g1_fair;
    row.diff = std::abs(g0 - g1);
    row.diff_fair = std::abs(g0_fair - g1_fair);
    return row;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    if (config.folds < 2) throw ConfigError("experiment needs at least 2 folds");

    Dataset data;
    if (config.data_path.empty()) {
        SyntheticSpec spec = config.synthetic;
        spec.seed = config.master_seed;
        data = generate_synthetic(spec);
    } else {
        data = load_csv(config.data_path, config.label_column, config.group_column);
    }

    const auto folds = kfold_split(data, config.folds, derive_seed(config.master_seed, 1));

    ExperimentReport report;
    GroupCosts pooled;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        const std::string fold_label = "fold-" + std::to_string(f + 1);
        try {
            const Dataset train = subset(data, folds[f].train);
            const Dataset test = subset(data, folds[f].test);
            const auto model = train_model(config.classifier, train, config.train);

            // only correctly classified test samples are explained
            std::vector<std::size_t> explained;
            std::vector<FeatureVector> points;
            for (std::size_t i = 0; i < test.size(); ++i) {
                if (model->predict(test.features[i]) != test.labels[i]) continue;
                explained.push_back(i);
                points.push_back(test.features[i]);
            }

            const auto normal =
                config.mode == CfMode::Closest
                    ? closest_batch(*model, points, config.fair.base, config.simplex,
                                    config.batch)
                    : plausible_batch(*model, points, train, config.batch);

            // Algorithm-1 pools come from the training split so z is never
            // calibrated on the samples being explained.
            const auto [train_g0, train_g1] = split_by_group(train);
            const auto pools =
                compute_cost_pools(*model, train_g0, train_g1, config.fair.base,
                                   config.simplex, config.mode, train, config.batch);
            const CostPool& dis = disadvantaged_pool(pools.first, pools.second);

            Rng z_rng(derive_seed(config.master_seed, 2 + f));
            std::vector<double> zs(points.size());
            for (double& z : zs) z = sample_z(dis, z_rng);

            const auto fair = fair_batch(*model, points, zs, config.fair, config.mode,
                                         train, config.simplex, config.batch);

            GroupCosts fold_costs;
            for (std::size_t i = 0; i < explained.size(); ++i) {
                const std::size_t local = explained[i];
                const auto g = static_cast<std::size_t>(test.groups[local]);

                SampleRecord rec;
                rec.fold = f;
                rec.row_id = test.row_ids[local];
                rec.group = test.groups[local];
                rec.y_cf = normal[i].y_cf;
                rec.cost_normal = normal[i].cost;
                rec.cost_fair = fair[i].cost;
                rec.valid_normal = normal[i].valid;
                rec.valid_fair = fair[i].valid;
                rec.cf_normal = normal[i].x_cf;
                rec.cf_fair = fair[i].x_cf;
                report.samples.push_back(std::move(rec));

                for (GroupCosts* gc : {&fold_costs, &pooled}) {
                    gc->normal[g].push_back(normal[i].cost);
                    gc->fair[g].push_back(fair[i].cost);
                    gc->valid_normal += normal[i].valid ? 1 : 0;
                    gc->valid_fair += fair[i].valid ? 1 : 0;
                    gc->explained += 1;
                }
            }
            report.fold_rows.push_back(make_row(fold_label, fold_costs));

            std::vector<std::size_t> train_rows;
            train_rows.reserve(train.size());
            for (std::size_t i = 0; i < train.size(); ++i)
                train_rows.push_back(train.row_ids[i]);
            report.fold_train_rows.push_back(std::move(train_rows));
        } catch (const EmptyPool& e) {
            throw EmptyPool(fold_label + ": " + e.what());
        } catch (const TooFewSamples& e) {
            throw TooFewSamples(fold_label + ": " + e.what());
        }
    }

    report.pooled = make_row("pooled", pooled);
    return report;
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
    std::vector<const ReportRow*> rows;
    for (const auto& row : report.fold_rows) rows.push_back(&row);
    rows.push_back(&report.pooled);

    std::string out;
    if (format == ReportFormat::Markdown) {
        out += "| Fold | Group-0 | Group-1 | Group-0-Fair | Group-1-Fair | Diff | "
               "Diff-Fair | Validity | Validity-Fair | N0 | N1 |\n";
        out += "|---|---|---|---|---|---|---|---|---|---|---|\n";
        for (const ReportRow* row : rows) {
            out += "| " + row->label + " | " + format_fixed2(row->group0) + " | " +
                   format_fixed2(row->group1) + " | " + format_fixed2(row->group0_fair) +
                   " | " + format_fixed2(row->group1_fair) + " | " +
                   format_fixed2(row->diff) + " | " + format_fixed2(row->diff_fair) +
                   " | " + format_fixed2(row->validity_normal) + " | " +
                   format_fixed2(row->validity_fair) + " | " +
                   std::to_string(row->count0) + " | " + std::to_string(row->count1) +
                   " |\n";
        }
        return out;
    }

    out += "fold,group0,group1,group0_fair,group1_fair,diff,diff_fair,"
           "validity_normal,validity_fair,n0,n1\n";
    for (const ReportRow* row : rows) {
        out += row->label + "," + format_full(row->group0) + "," +
               format_full(row->group1) + "," + format_full(row->group0_fair) + "," +
               format_full(row->group1_fair) + "," + format_full(row->diff) + "," +
               format_full(row->diff_fair) + "," + format_full(row->validity_normal) +
               "," + format_full(row->validity_fair) + "," +
               std::to_string(row->count0) + "," + std::to_string(row->count1) + "\n";
    }
    return out;
}

std::string emit_histogram_data(const CostPool& normal0, const CostPool& normal1,
                                const CostPool& fair0, const CostPool& fair1) {
    for (const CostPool* pool : {&normal0, &normal1, &fair0, &fair1})
        if (pool->costs.empty())
            throw EmptyPool("histogram export needs nonempty pools");

    std::string out = "group_id,variant,cost\n";
    auto append = [&out](const CostPool& pool, const char* variant) {
        for (double cost : pool.costs)
            out += std::to_string(pool.group_id) + "," + variant + "," +
                   format_full(cost) + "\n";
    };
    append(normal0, "normal");
    append(normal1, "normal");
    append(fair0, "fair");
    append(fair1, "fair");
    return out;
}

std::array<CostPool, 4> histogram_pools(const ExperimentReport& report) {
    std::array<CostPool, 4> pools;
    pools[0].group_id = 0;
    pools[1].group_id = 1;
    pools[2].group_id = 0;
    pools[3].group_id = 1;
    for (const auto& rec : report.samples) {
        const auto g = static_cast<std::size_t>(rec.group);
        pools[g].costs.push_back(rec.cost_normal);
        pools[2 + g].costs.push_back(rec.cost_fair);
    }
    for (auto& pool : pools) pool.source_count = pool.costs.size();
    return pools;
}

void write_report_files(const ExperimentReport& report, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto pools = histogram_pools(report);

    auto write = [&out_dir](const std::string& name, const std::string& text) {
        const auto path = std::filesystem::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw FaircfError("cannot write '" + path.string() + "'");
        out << text;
    };
    write("report.md", emit_report(report, ReportFormat::Markdown));
    write("report.csv", emit_report(report, ReportFormat::Csv));
    write("costs_hist.csv", emit_histogram_data(pools[0], pools[1], pools[2], pools[3]));
}

}  // namespace faircf
