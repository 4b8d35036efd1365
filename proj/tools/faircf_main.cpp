#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "faircf/batch.hpp"
#include "faircf/dataset.hpp"
#include "faircf/errors.hpp"
#include "faircf/explain.hpp"
#include "faircf/fairness.hpp"
#include "faircf/harness.hpp"
#include "faircf/model.hpp"
#include "faircf/simplex.hpp"

namespace {

using namespace faircf;

FeatureVector parse_input_vector(const std::string& text) {
    FeatureVector values;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            if (used != cell.size()) throw std::invalid_argument(cell);
            values.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("--input must be comma-separated reals, got '" + cell + "'");
        }
    }
    if (values.empty()) throw ConfigError("--input is empty");
    return values;
}

SyntheticSpec parse_synth_spec(const std::string& text) {
    SyntheticSpec spec;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--synth-spec entries must look like key=value, got '" +
                              item + "'");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        try {
            if (key == "n-per-cell") spec.n_per_cell = std::stoul(value);
            else if (key == "dim") spec.dim = std::stoul(value);
            else if (key == "separation") spec.separation = std::stod(value);
            else if (key == "disparity") spec.disparity = std::stod(value);
            else throw ConfigError("unknown --synth-spec key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad --synth-spec value '" + value + "' for key '" + key +
                              "'");
        }
    }
    return spec;
}

std::unique_ptr<PredictionModel> load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FaircfError("cannot open model file '" + path + "'");
    nlohmann::json doc;
    in >> doc;
    return model_from_json(doc);
}

int run_synth(const SyntheticSpec& spec, const std::string& out_path) {
    const Dataset data = generate_synthetic(spec);
    save_csv(data, out_path, "y", "g");
    std::cerr << "wrote " << data.size() << " rows to " << out_path << "\n";
    return 0;
}

int run_train(const std::string& data_path, const std::string& clf,
              const std::string& label, const std::string& group,
              const TrainConfig& train_cfg, const std::string& out_path) {
    const Dataset raw = load_csv(data_path, label, group);
    const Standardizer st = fit_standardizer(raw);
    const Dataset data = apply_standardizer(st, raw);

    std::shared_ptr<const PredictionModel> inner;
    switch (classifier_from_string(clf)) {
        case ClassifierKind::Logreg:
            inner = std::make_shared<LogisticModel>(train_logreg(data, train_cfg));
            break;
        case ClassifierKind::Dectree:
            inner = std::make_shared<TreeModel>(train_tree(data, train_cfg));
            break;
        case ClassifierKind::Gnb:
            inner = std::make_shared<GaussianNBModel>(
                train_gnb(data, train_cfg.variance_floor));
            break;
    }
    const StandardizedModel model(st, inner);
    std::ofstream out(out_path);
    if (!out) throw FaircfError("cannot write '" + out_path + "'");
    out << model.to_json().dump(2) << "\n";
    std::cerr << "trained " << clf << " (training accuracy "
              << accuracy(model, raw) << "), saved to " << out_path << "\n";
    return 0;
}

int run_explain(const std::string& model_path, const std::string& input,
                const std::string& mode_name, const std::string& data_path,
                const std::string& label, const std::string& group, bool fair,
                const std::string& pools_path, std::uint64_t seed, double c0,
                double c1, double margin) {
    const auto model = load_model(model_path);
    const FeatureVector x_orig = parse_input_vector(input);
    const CfMode mode = cf_mode_from_string(mode_name);

    SimplexConfig simplex;
    if (const auto* std_model = dynamic_cast<const StandardizedModel*>(model.get()))
        simplex.step_scale = std_model->standardizer().std_dev;

    Dataset candidates;
    if (mode == CfMode::Plausible) {
        if (data_path.empty())
            throw ConfigError("plausible mode needs --data for the candidate set");
        candidates = load_csv(data_path, label, group);
    }

    CounterfactualResult result;
    if (fair) {
        if (pools_path.empty()) throw ConfigError("--fair needs --pools");
        const auto pools = load_pools_csv(pools_path);
        const CostPool& pool = pools.size() >= 2
                                   ? disadvantaged_pool(pools[0], pools[1])
                                   : pools.front();
        Rng rng(seed);
        const double z = sample_z(pool, rng);

        FairCfConfig cfg;
        cfg.c0 = c0;
        cfg.c1 = c1;
        cfg.base.loss_weight = c0;
        cfg.base.margin = margin;
        result = fair_counterfactual(*model, x_orig, z, cfg, mode, candidates, simplex);
    } else {
        CfConfig cfg;
        cfg.loss_weight = c0;
        cfg.margin = margin;
        result = mode == CfMode::Closest
                     ? closest_counterfactual(*model, x_orig, cfg, simplex)
                     : plausible_counterfactual(*model, x_orig, candidates);
    }

    const nlohmann::json doc = {{"x_orig", result.x_orig},
                                {"x_cf", result.x_cf},
                                {"y_cf", result.y_cf},
                                {"cost", result.cost},
                                {"valid", result.valid},
                                {"method", to_string(result.method)},
                                {"iterations", result.iterations}};
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int run_experiment_cmd(const ExperimentConfig& config, const std::string& out_dir) {
    const ExperimentReport report = run_experiment(config);
    write_report_files(report, out_dir);
    std::cout << emit_report(report, ReportFormat::Markdown);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Group-fair counterfactual explanations for binary classifiers"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset CSV");
    SyntheticSpec synth_spec;
    std::string synth_out;
    synth->add_option("--n-per-cell", synth_spec.n_per_cell,
                      "Samples per (group, class) cell")->required();
    synth->add_option("--dim", synth_spec.dim, "Feature dimension");
    synth->add_option("--separation", synth_spec.separation, "Class separation");
    synth->add_option("--disparity", synth_spec.disparity,
                      "Extra boundary distance for group 0's class-0 cluster");
    synth->add_option("--seed", synth_spec.seed, "RNG seed");
    synth->add_option("--out", synth_out, "Output CSV path")->required();

    // train
    auto* train = app.add_subcommand("train", "Train a classifier and save it as JSON");
    std::string train_data, train_clf, train_label = "y", train_group = "g", train_out;
    TrainConfig train_cfg;
    train->add_option("--data", train_data, "Training CSV")->required();
    train->add_option("--clf", train_clf, "Classifier")
        ->required()
        ->check(CLI::IsMember({"logreg", "dectree", "gnb"}));
    train->add_option("--out", train_out, "Output model JSON path")->required();
    train->add_option("--label", train_label, "Label column name");
    train->add_option("--group", train_group, "Group column name");
    train->add_option("--max-depth", train_cfg.max_depth, "Tree max depth");
    train->add_option("--min-leaf", train_cfg.min_leaf, "Tree min leaf size");
    train->add_option("--lr", train_cfg.learning_rate, "Logistic learning rate");
    train->add_option("--epochs", train_cfg.epochs, "Logistic epochs");

    // explain
    auto* explain = app.add_subcommand("explain",
                                       "Explain one input; prints the counterfactual as JSON");
    std::string ex_model, ex_input, ex_mode = "closest", ex_data, ex_pools;
    std::string ex_label = "y", ex_group = "g";
    bool ex_fair = false;
    std::uint64_t ex_seed = 0;
    double ex_c0 = 100.0, ex_c1 = 10.0, ex_margin = 0.05;
    explain->add_option("--model", ex_model, "Model JSON from `train`")->required();
    explain->add_option("--input", ex_input, "Comma-separated feature values")->required();
    explain->add_option("--mode", ex_mode, "closest or plausible")
        ->check(CLI::IsMember({"closest", "plausible"}));
    explain->add_option("--data", ex_data, "Candidate CSV (plausible mode)");
    explain->add_option("--label", ex_label, "Label column in --data");
    explain->add_option("--group", ex_group, "Group column in --data");
    explain->add_flag("--fair", ex_fair, "Use the group-fair objective");
    explain->add_option("--pools", ex_pools, "Cost pool CSV (group_id,cost)");
    explain->add_option("--seed", ex_seed, "Seed for the z draw");
    explain->add_option("--c0", ex_c0, "Prediction-loss weight");
    explain->add_option("--c1", ex_c1, "Fair hinge weight");
    explain->add_option("--margin", ex_margin, "Score margin of the loss");

    // experiment
    auto* experiment = app.add_subcommand("experiment",
                                          "Cross-validated fairness experiment");
    ExperimentConfig exp_cfg;
    std::string exp_data, exp_synth, exp_clf, exp_mode = "closest", exp_out_dir;
    auto* opt_data = experiment->add_option("--data", exp_data, "Dataset CSV");
    auto* opt_synth = experiment->add_option(
        "--synth-spec", exp_synth,
        "Synthetic spec, e.g. n-per-cell=100,dim=5,separation=2,disparity=3");
    opt_data->excludes(opt_synth);
    experiment->add_option("--clf", exp_clf, "Classifier")
        ->required()
        ->check(CLI::IsMember({"logreg", "dectree", "gnb"}));
    experiment->add_option("--mode", exp_mode, "closest or plausible")
        ->check(CLI::IsMember({"closest", "plausible"}));
    double exp_c0 = 100.0, exp_c1 = 10.0;
    experiment->add_option("--c0", exp_c0, "Prediction-loss weight");
    experiment->add_option("--c1", exp_c1, "Fair hinge weight");
    experiment->add_option("--folds", exp_cfg.folds, "Cross-validation folds");
    experiment->add_option("--seed", exp_cfg.master_seed, "Master seed");
    experiment->add_option("--out-dir", exp_out_dir, "Report directory")->required();
    experiment->add_option("--label", exp_cfg.label_column, "Label column name");
    experiment->add_option("--group", exp_cfg.group_column, "Group column name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*synth) return run_synth(synth_spec, synth_out);
        if (*train)
            return run_train(train_data, train_clf, train_label, train_group, train_cfg,
                             train_out);
        if (*explain)
            return run_explain(ex_model, ex_input, ex_mode, ex_data, ex_label, ex_group,
                               ex_fair, ex_pools, ex_seed, ex_c0, ex_c1, ex_margin);
        if (*experiment) {
            if (exp_data.empty() && exp_synth.empty()) {
                std::cerr << "experiment needs --data or --synth-spec\n";
                return 2;
            }
            exp_cfg.classifier = classifier_from_string(exp_clf);
            exp_cfg.mode = cf_mode_from_string(exp_mode);
            exp_cfg.fair.c0 = exp_c0;
            exp_cfg.fair.c1 = exp_c1;
            exp_cfg.fair.base.loss_weight = exp_c0;
            exp_cfg.data_path = exp_data;
            if (!exp_synth.empty()) exp_cfg.synthetic = parse_synth_spec(exp_synth);
            return run_experiment_cmd(exp_cfg, exp_out_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
