#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edgeboost/matrix.hpp"
#include "edgeboost/preprocess.hpp"

namespace edgeboost {

/// Boosting hyperparameters. lambda is the leaf L2 regularizer, gamma the
/// minimum gain a split must clear, seed is reserved for the data split and
/// future subsampling extensions (training itself draws no random numbers).
struct ModelConfig {
    int n_trees = 100;
    int max_depth = 6;
    double learning_rate = 0.3;
    double lambda = 1.0;
    double gamma = 0.0;
    int min_samples_leaf = 1;
    std::uint64_t seed = 42;

    /// Throws ValueError listing every invalid field.
    void validate() const;
};

/// High-capacity configuration: 100 trees of depth 6.
ModelConfig full_config();

/// Reduced-footprint configuration: 25 trees of depth 3.
ModelConfig tiny_config();

inline constexpr std::int32_t kLeafMarker = -1;

/// One node of a flat-array tree. Internal nodes use feature/threshold and
/// child indices (always greater than the node's own index); leaves use
/// leaf_value only.
struct TreeNode {
    std::int32_t feature = kLeafMarker;
    double threshold = 0.0;
    double leaf_value = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;

    bool is_leaf() const { return feature == kLeafMarker; }
};

struct Tree {
    std::vector<TreeNode> nodes;

    /// Descends from the root: left when row[feature] < threshold.
    double evaluate(std::span<const double> row) const;
};

/// Trained model: prediction(x) = base_score + learning_rate * sum of tree
/// outputs. The scaler used during preprocessing travels with the model.
struct Ensemble {
    double base_score = 0.0;
    double learning_rate = 1.0;
    std::vector<Tree> trees;
    std::size_t n_features = 0;
    ScalerParams scaler;
};

struct SplitCandidate {
    double threshold = 0.0;
    double gain = 0.0;
};

/// Exact greedy split search over one feature column. Considers thresholds
/// at midpoints between consecutive distinct sorted values and returns the
/// split maximizing
///     gain = 1/2 [G_L^2/(H_L+lambda) + G_R^2/(H_R+lambda) - G^2/(H+lambda)] - gamma
/// subject to min_samples_leaf on both sides, or nullopt when no positive-
/// gain split exists. Equal gains resolve to the smallest threshold.
std::optional<SplitCandidate> find_best_split(std::span<const double> gradients,
                                              std::span<const double> hessians,
                                              std::span<const double> feature_values,
                                              double lambda, double gamma,
                                              int min_samples_leaf);

struct TrainLog {
    std::vector<double> round_rmse;  // training RMSE after each boosting round
};

/// Fits an ensemble to squared-error loss: per round, one tree on the
/// gradient/hessian statistics g_i = pred_i - y_i, h_i = 1, grown by exact
/// greedy search with second-order leaf values -G/(H+lambda). Deterministic
/// for fixed inputs and config regardless of platform thread count (training
/// is sequential by design). Throws ValueError on empty or non-finite input.
///
/// The returned scaler is the identity; callers attach the real one.
Ensemble train(const Matrix& x, std::span<const double> y, const ModelConfig& cfg,
               TrainLog* log = nullptr);

/// Batch prediction in scaled units. Throws ValueError on column-count
/// mismatch or NaN cells. The per-row loop performs no allocations.
std::vector<double> predict(const Ensemble& model, const Matrix& x);

/// Same as predict but writes into caller-owned storage (the profiled path).
void predict_into(const Ensemble& model, const Matrix& x, std::span<double> out);

}  // namespace edgeboost
