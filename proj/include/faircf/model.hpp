#ifndef FAIRCF_MODEL_HPP
#define FAIRCF_MODEL_HPP

#include <memory>
#include <string>
#include <vector>

#include "faircf/dataset.hpp"
#include "faircf/types.hpp"

#include "json.hpp"

namespace faircf {

/// Opaque binary classifier. predict(x) = 1 iff score(x) >= 0.5, where
/// score(x) is the estimated probability of class 1.
class PredictionModel {
public:
    virtual ~PredictionModel() = default;

    virtual double score(const FeatureVector& x) const = 0;
    virtual std::size_t dim() const = 0;
    virtual std::string kind() const = 0;
    virtual nlohmann::json to_json() const = 0;

    int predict(const FeatureVector& x) const { return score(x) >= 0.5 ? 1 : 0; }

protected:
    void check_dim(const FeatureVector& x) const;
};

struct TrainConfig {
    double learning_rate = 0.1;
    int epochs = 500;
    int max_depth = 8;
    int min_leaf = 5;
    double variance_floor = 1e-9;
};

class LogisticModel final : public PredictionModel {
public:
    LogisticModel(std::vector<double> weights, double bias)
        : weights_(std::move(weights)), bias_(bias) {}

    double score(const FeatureVector& x) const override;
    std::size_t dim() const override { return weights_.size(); }
    std::string kind() const override { return "logreg"; }
    nlohmann::json to_json() const override;

    const std::vector<double>& weights() const { return weights_; }
    double bias() const { return bias_; }

private:
    std::vector<double> weights_;
    double bias_;
};

class TreeModel final : public PredictionModel {
public:
    struct Node {
        // internal node when feature >= 0, leaf otherwise
        int feature = -1;
        double threshold = 0.0;
        int left = -1;   // index into nodes_
        int right = -1;
        int label = 0;
        double p1 = 0.0;  // Laplace-smoothed class-1 fraction
    };

    TreeModel(std::vector<Node> nodes, std::size_t dim)
        : nodes_(std::move(nodes)), dim_(dim) {}

    double score(const FeatureVector& x) const override;
    std::size_t dim() const override { return dim_; }
    std::string kind() const override { return "dectree"; }
    nlohmann::json to_json() const override;

    const std::vector<Node>& nodes() const { return nodes_; }
    int depth() const;
    int min_leaf_count() const { return min_leaf_count_; }
    void set_min_leaf_count(int n) { min_leaf_count_ = n; }

private:
    std::vector<Node> nodes_;  // nodes_[0] is the root
    std::size_t dim_;
    int min_leaf_count_ = 0;  // smallest training count over leaves
};

class GaussianNBModel final : public PredictionModel {
public:
    GaussianNBModel(std::vector<double> prior,
                    std::vector<std::vector<double>> means,
                    std::vector<std::vector<double>> variances)
        : prior_(std::move(prior)), means_(std::move(means)),
          variances_(std::move(variances)) {}

    double score(const FeatureVector& x) const override;
    std::size_t dim() const override { return means_.front().size(); }
    std::string kind() const override { return "gnb"; }
    nlohmann::json to_json() const override;

    const std::vector<double>& prior() const { return prior_; }
    const std::vector<std::vector<double>>& variances() const { return variances_; }

private:
    std::vector<double> prior_;                  // [p(class 0), p(class 1)]
    std::vector<std::vector<double>> means_;     // per class, per feature
    std::vector<std::vector<double>> variances_;
};

/// Wraps a model trained on standardized features so callers can work in
/// the original feature units.
class StandardizedModel final : public PredictionModel {
public:
    StandardizedModel(Standardizer st, std::shared_ptr<const PredictionModel> inner)
        : standardizer_(std::move(st)), inner_(std::move(inner)) {}

    double score(const FeatureVector& x) const override {
        return inner_->score(standardize_row(standardizer_, x));
    }
    std::size_t dim() const override { return inner_->dim(); }
    std::string kind() const override { return inner_->kind(); }
    nlohmann::json to_json() const override;

    const Standardizer& standardizer() const { return standardizer_; }
    const PredictionModel& inner() const { return *inner_; }

private:
    Standardizer standardizer_;
    std::shared_ptr<const PredictionModel> inner_;
};

LogisticModel train_logreg(const Dataset& data, const TrainConfig& config = {});
TreeModel train_tree(const Dataset& data, const TrainConfig& config = {});
GaussianNBModel train_gnb(const Dataset& data, double variance_floor = 1e-9);

double accuracy(const PredictionModel& model, const Dataset& data);
double log_loss(const PredictionModel& model, const Dataset& data);

/// Versioned JSON round-trip for trained models.
nlohmann::json model_to_json(const PredictionModel& model);
std::unique_ptr<PredictionModel> model_from_json(const nlohmann::json& doc);

}  // namespace faircf

#endif  // FAIRCF_MODEL_HPP
