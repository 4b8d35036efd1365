#include "faircf/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "faircf/errors.hpp"

namespace faircf {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void require_finite(const FeatureVector& x) {
    for (double v : x)
        if (!std::isfinite(v)) throw FaircfError("non-finite feature value");
}

void check_trainable(const Dataset& data) {
    if (data.size() == 0) throw EmptyDataset("training data is empty");
    const std::size_t d = data.dim();
    if (d == 0) throw DimensionMismatch("training data has zero feature dimension");
    for (const auto& x : data.features)
        if (x.size() != d)
            throw DimensionMismatch("inconsistent row dimensions in training data");
    const int first = data.labels.front();
    const bool mixed = std::any_of(data.labels.begin(), data.labels.end(),
                                   [first](int y) { return y != first; });
    if (!mixed) throw SingleClassData("training data holds a single class");
}

double gini(std::size_t n0, std::size_t n1) {
    const double n = static_cast<double>(n0 + n1);
    if (n == 0.0) return 0.0;
    const double p0 = static_cast<double>(n0) / n;
    const double p1 = static_cast<double>(n1) / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

}  // namespace

void PredictionModel::check_dim(const FeatureVector& x) const {
    if (x.size() != dim())
        throw DimensionMismatch("model expects dimension " + std::to_string(dim()) +
                                ", got " + std::to_string(x.size()));
}

double LogisticModel::score(const FeatureVector& x) const {
    check_dim(x);
    double z = bias_;
    for (std::size_t j = 0; j < weights_.size(); ++j) z += weights_[j] * x[j];
    return sigmoid(z);
}

nlohmann::json LogisticModel::to_json() const {
    return {{"version", 1}, {"kind", "logreg"}, {"weights", weights_}, {"bias", bias_}};
}

double TreeModel::score(const FeatureVector& x) const {
    check_dim(x);
    int idx = 0;
    while (nodes_[idx].feature >= 0) {
        const Node& node = nodes_[idx];
        idx = (x[static_cast<std::size_t>(node.feature)] <= node.threshold) ? node.left
                                                                            : node.right;
    }
    return nodes_[idx].p1;
}

int TreeModel::depth() const {
    // longest root-to-leaf chain of internal nodes
    std::vector<int> depth_of(nodes_.size(), 0);
    int deepest = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].feature < 0) continue;
        depth_of[nodes_[i].left] = depth_of[i] + 1;
        depth_of[nodes_[i].right] = depth_of[i] + 1;
        deepest = std::max(deepest, depth_of[i] + 1);
    }
    return nodes_.size() <= 1 ? 0 : deepest;
}

nlohmann::json TreeModel::to_json() const {
    nlohmann::json nodes = nlohmann::json::array();
    for (const Node& n : nodes_) {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"label", n.label},
                         {"p1", n.p1}});
    }
    return {{"version", 1}, {"kind", "dectree"}, {"dim", dim_}, {"nodes", nodes}};
}

double GaussianNBModel::score(const FeatureVector& x) const {
    check_dim(x);
    require_finite(x);
    double log_joint[2];
    for (int c = 0; c < 2; ++c) {
        double lj = std::log(prior_[static_cast<std::size_t>(c)]);
        for (std::size_t j = 0; j < dim(); ++j) {
            const double var = variances_[static_cast<std::size_t>(c)][j];
            const double dev = x[j] - means_[static_cast<std::size_t>(c)][j];
            lj += -0.5 * std::log(2.0 * M_PI * var) - dev * dev / (2.0 * var);
        }
        log_joint[c] = lj;
    }
    return sigmoid(log_joint[1] - log_joint[0]);
}

nlohmann::json GaussianNBModel::to_json() const {
    return {{"version", 1},
            {"kind", "gnb"},
            {"prior", prior_},
            {"mean", means_},
            {"var", variances_}};
}

nlohmann::json StandardizedModel::to_json() const {
    return {{"version", 1},
            {"kind", "standardized"},
            {"standardizer",
             {{"mean", standardizer_.mean}, {"std", standardizer_.std_dev}}},
            {"model", inner_->to_json()}};
}

LogisticModel train_logreg(const Dataset& data, const TrainConfig& config) {
    check_trainable(data);
    if (config.learning_rate <= 0.0) throw ConfigError("learning rate must be positive");
    if (config.epochs < 1) throw ConfigError("epochs must be >= 1");

    const std::size_t d = data.dim();
    const double n = static_cast<double>(data.size());
    std::vector<double> w(d, 0.0);
    double b = 0.0;

    std::vector<double> grad(d);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_b = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            double z = b;
            const auto& x = data.features[i];
            for (std::size_t j = 0; j < d; ++j) z += w[j] * x[j];
            const double err = sigmoid(z) - static_cast<double>(data.labels[i]);
            for (std::size_t j = 0; j < d; ++j) grad[j] += err * x[j];
            grad_b += err;
        }
        for (std::size_t j = 0; j < d; ++j) w[j] -= config.learning_rate * grad[j] / n;
        b -= config.learning_rate * grad_b / n;
    }
    return LogisticModel(std::move(w), b);
}

namespace {

struct TreeBuilder {
    const Dataset& data;
    const TrainConfig& config;
    std::vector<TreeModel::Node> nodes;
    int min_leaf_seen = std::numeric_limits<int>::max();

    int build(std::vector<std::size_t>& rows, int depth) {
        const int idx = static_cast<int>(nodes.size());
        nodes.emplace_back();

        const std::size_t n = rows.size();
        std::size_t n1 = 0;
        for (std::size_t i : rows) n1 += static_cast<std::size_t>(data.labels[i]);
        const std::size_t n0 = n - n1;
        const double p1 = (static_cast<double>(n1) + 1.0) / (static_cast<double>(n) + 2.0);

        TreeModel::Node node;
        node.p1 = p1;
        node.label = p1 >= 0.5 ? 1 : 0;

        const bool splittable = depth < config.max_depth && n1 != 0 && n0 != 0 &&
                                n >= 2 * static_cast<std::size_t>(config.min_leaf);
        int best_feature = -1;
        double best_threshold = 0.0;
        double best_score = gini(n0, n1) - 1e-12;
        if (splittable) {
            std::vector<std::pair<double, int>> column(n);
            for (std::size_t j = 0; j < data.dim(); ++j) {
                for (std::size_t i = 0; i < n; ++i)
                    column[i] = {data.features[rows[i]][j], data.labels[rows[i]]};
                std::stable_sort(column.begin(), column.end(),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
                std::size_t left1 = 0;
                for (std::size_t i = 1; i < n; ++i) {
                    left1 += static_cast<std::size_t>(column[i - 1].second);
                    if (column[i - 1].first == column[i].first) continue;
                    const std::size_t nl = i, nr = n - i;
                    if (nl < static_cast<std::size_t>(config.min_leaf) ||
                        nr < static_cast<std::size_t>(config.min_leaf))
                        continue;
                    const std::size_t right1 = n1 - left1;
                    const double weighted =
                        (static_cast<double>(nl) * gini(nl - left1, left1) +
                         static_cast<double>(nr) * gini(nr - right1, right1)) /
                        static_cast<double>(n);
                    if (weighted < best_score) {  // strict: ties keep the earliest
                        best_score = weighted;
                        best_feature = static_cast<int>(j);
                        best_threshold = 0.5 * (column[i - 1].first + column[i].first);
                    }
                }
            }
        }

        if (best_feature < 0) {
            node.feature = -1;
            min_leaf_seen = std::min(min_leaf_seen, static_cast<int>(n));
            nodes[static_cast<std::size_t>(idx)] = node;
            return idx;
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t i : rows) {
            if (data.features[i][static_cast<std::size_t>(best_feature)] <= best_threshold)
                left_rows.push_back(i);
            else
                right_rows.push_back(i);
        }
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = build(left_rows, depth + 1);
        node.right = build(right_rows, depth + 1);
        nodes[static_cast<std::size_t>(idx)] = node;
        return idx;
    }
};

}  // namespace

TreeModel train_tree(const Dataset& data, const TrainConfig& config) {
    check_trainable(data);
    if (config.max_depth < 1) throw ConfigError("max depth must be >= 1");
    if (config.min_leaf < 1) throw ConfigError("min leaf size must be >= 1");

    TreeBuilder builder{data, config, {}, std::numeric_limits<int>::max()};
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    builder.build(rows, 0);

    TreeModel model(std::move(builder.nodes), data.dim());
    model.set_min_leaf_count(builder.min_leaf_seen);
    return model;
}

GaussianNBModel train_gnb(const Dataset& data, double variance_floor) {
    check_trainable(data);
    if (variance_floor <= 0.0) throw ConfigError("variance floor must be positive");

    const std::size_t d = data.dim();
    std::array<std::size_t, 2> counts{0, 0};
    for (int y : data.labels) counts[static_cast<std::size_t>(y)]++;
    for (int c = 0; c < 2; ++c)
        if (counts[static_cast<std::size_t>(c)] < 2)
            throw TooFewSamples("class " + std::to_string(c) +
                                " needs at least 2 samples");

    std::vector<std::vector<double>> means(2, std::vector<double>(d, 0.0));
    std::vector<std::vector<double>> vars(2, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto c = static_cast<std::size_t>(data.labels[i]);
        for (std::size_t j = 0; j < d; ++j) means[c][j] += data.features[i][j];
    }
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j)
            means[c][j] /= static_cast<double>(counts[c]);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto c = static_cast<std::size_t>(data.labels[i]);
        for (std::size_t j = 0; j < d; ++j) {
            const double dev = data.features[i][j] - means[c][j];
            vars[c][j] += dev * dev;
        }
    }
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j)
            vars[c][j] = std::max(vars[c][j] / static_cast<double>(counts[c]),
                                  variance_floor);

    std::vector<double> prior{
        static_cast<double>(counts[0]) / static_cast<double>(data.size()),
        static_cast<double>(counts[1]) / static_cast<double>(data.size())};
    return GaussianNBModel(std::move(prior), std::move(means), std::move(vars));
}

double accuracy(const PredictionModel& model, const Dataset& data) {
    if (data.size() == 0) throw EmptyDataset("accuracy over an empty dataset");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (model.predict(data.features[i]) == data.labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

double log_loss(const PredictionModel& model, const Dataset& data) {
    if (data.size() == 0) throw EmptyDataset("log-loss over an empty dataset");
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        double p = model.score(data.features[i]);
        p = std::clamp(p, 1e-12, 1.0 - 1e-12);
        total += data.labels[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
    }
    return total / static_cast<double>(data.size());
}

nlohmann::json model_to_json(const PredictionModel& model) { return model.to_json(); }

std::unique_ptr<PredictionModel> model_from_json(const nlohmann::json& doc) {
    if (!doc.contains("version") || doc.at("version").get<int>() != 1)
        throw ConfigError("unsupported model document version");
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "logreg") {
        return std::make_unique<LogisticModel>(
            doc.at("weights").get<std::vector<double>>(), doc.at("bias").get<double>());
    }
    if (kind == "dectree") {
        std::vector<TreeModel::Node> nodes;
        for (const auto& n : doc.at("nodes")) {
            TreeModel::Node node;
            node.feature = n.at("feature").get<int>();
            node.threshold = n.at("threshold").get<double>();
            node.left = n.at("left").get<int>();
            node.right = n.at("right").get<int>();
            node.label = n.at("label").get<int>();
            node.p1 = n.at("p1").get<double>();
            nodes.push_back(node);
        }
        return std::make_unique<TreeModel>(std::move(nodes),
                                           doc.at("dim").get<std::size_t>());
    }
    if (kind == "gnb") {
        return std::make_unique<GaussianNBModel>(
            doc.at("prior").get<std::vector<double>>(),
            doc.at("mean").get<std::vector<std::vector<double>>>(),
            doc.at("var").get<std::vector<std::vector<double>>>());
    }
    if (kind == "standardized") {
        Standardizer st;
        st.mean = doc.at("standardizer").at("mean").get<std::vector<double>>();
        st.std_dev = doc.at("standardizer").at("std").get<std::vector<double>>();
        std::shared_ptr<const PredictionModel> inner = model_from_json(doc.at("model"));
        return std::make_unique<StandardizedModel>(std::move(st), std::move(inner));
    }
    throw ConfigError("unknown model kind '" + kind + "'");
}

}  // namespace faircf
