#include "edgeboost/gbrt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "edgeboost/errors.hpp"
#include "edgeboost/metrics.hpp"

namespace edgeboost {

void ModelConfig::validate() const {
    std::string problems;
    auto add = [&](const std::string& p) {
        if (!problems.empty()) problems += "; ";
        problems += p;
    };
    if (n_trees < 1) add("n_trees must be >= 1");
    if (max_depth < 1) add("max_depth must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) add("learning_rate must lie in (0, 1]");
    if (!(lambda >= 0.0)) add("lambda must be >= 0");
    if (!(gamma >= 0.0)) add("gamma must be >= 0");
    if (min_samples_leaf < 1) add("min_samples_leaf must be >= 1");
    if (!problems.empty()) throw ValueError("invalid model config: " + problems);
}

ModelConfig full_config() {
    return ModelConfig{100, 6, 0.3, 1.0, 0.0, 1, 42};
}

ModelConfig tiny_config() {
    return ModelConfig{25, 3, 0.3, 1.0, 0.0, 1, 42};
}

double Tree::evaluate(std::span<const double> row) const {
    if (nodes.empty()) return 0.0;
    std::size_t i = 0;
    while (!nodes[i].is_leaf()) {
        const TreeNode& nd = nodes[i];
        i = static_cast<std::size_t>(row[static_cast<std::size_t>(nd.feature)] < nd.threshold
                                         ? nd.left
                                         : nd.right);
    }
    return nodes[i].leaf_value;
}

namespace {

struct ScanResult {
    bool found = false;
    double threshold = 0.0;
    double gain = 0.0;
    std::size_t left_count = 0;
};

// Scans one feature in ascending value order (given by `order`) and keeps
// the best boundary between consecutive distinct values. Equal gains keep
// the earlier (smaller) threshold via the strict comparison.
template <typename ValueOf>
ScanResult best_split_scan(std::span<const std::uint32_t> order, ValueOf value_of,
                           std::span<const double> g, std::span<const double> h,
                           double lambda, double gamma, std::size_t min_samples_leaf,
                           double g_total, double h_total) {
    ScanResult best;
    const std::size_t n = order.size();
    if (n < 2) return best;

    const double parent_score = (g_total * g_total) / (h_total + lambda);
    double g_left = 0.0;
    double h_left = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::uint32_t idx = order[i];
        g_left += g[idx];
        h_left += h[idx];
        const double v = value_of(idx);
        const double v_next = value_of(order[i + 1]);
        if (v == v_next) continue;

        const std::size_t left_count = i + 1;
        if (left_count < min_samples_leaf || n - left_count < min_samples_leaf) continue;

        const double g_right = g_total - g_left;
        const double h_right = h_total - h_left;
        const double gain = 0.5 * (g_left * g_left / (h_left + lambda) +
                                   g_right * g_right / (h_right + lambda) - parent_score) -
                            gamma;
        if (best.found && gain <= best.gain) continue;

        // Midpoint, nudged so that {x : x < threshold} is exactly the
        // scanned prefix even when v and v_next are adjacent doubles.
        double threshold = 0.5 * v + 0.5 * v_next;
        if (threshold <= v) threshold = v_next;

        best.found = true;
        best.threshold = threshold;
        best.gain = gain;
        best.left_count = left_count;
    }
    return best;
}

// Per-node view: for every feature, the node's rows sorted by that feature
// (ties by row index). Children inherit sortedness by stable partition.
struct NodeColumns {
    std::vector<std::vector<std::uint32_t>> per_feature;
};

Tree build_tree(const Matrix& x, std::span<const double> g, std::span<const double> h,
                const ModelConfig& cfg, const NodeColumns& root_columns) {
    const std::size_t n_features = x.n_cols;
    const std::size_t msl = static_cast<std::size_t>(cfg.min_samples_leaf);

    Tree tree;
    struct Work {
        std::int32_t node;
        NodeColumns columns;
        int depth;
    };
    std::vector<Work> stack;
    tree.nodes.emplace_back();
    stack.push_back(Work{0, root_columns, 0});

    while (!stack.empty()) {
        Work work = std::move(stack.back());
        stack.pop_back();

        const std::vector<std::uint32_t>& rows = work.columns.per_feature[0];
        const std::size_t n = rows.size();

        double g_sum = 0.0;
        double h_sum = 0.0;
        for (std::uint32_t r : rows) {
            g_sum += g[r];
            h_sum += h[r];
        }

        auto finish_leaf = [&]() {
            TreeNode& node = tree.nodes[static_cast<std::size_t>(work.node)];
            node.feature = kLeafMarker;
            node.leaf_value = -g_sum / (h_sum + cfg.lambda);
        };

        if (work.depth >= cfg.max_depth || n < 2 * msl || n < 2) {
            finish_leaf();
            continue;
        }

        bool found = false;
        std::size_t best_feature = 0;
        double best_threshold = 0.0;
        double best_gain = 0.0;
        std::size_t best_left_count = 0;
        for (std::size_t f = 0; f < n_features; ++f) {
            ScanResult r = best_split_scan(
                work.columns.per_feature[f], [&](std::uint32_t row) { return x.at(row, f); }, g,
                h, cfg.lambda, cfg.gamma, msl, g_sum, h_sum);
            if (r.found && (!found || r.gain > best_gain)) {
                found = true;
                best_feature = f;
                best_threshold = r.threshold;
                best_gain = r.gain;
                best_left_count = r.left_count;
            }
        }

        if (!found || best_gain <= 0.0) {
            finish_leaf();
            continue;
        }

        NodeColumns left;
        NodeColumns right;
        left.per_feature.resize(n_features);
        right.per_feature.resize(n_features);
        for (std::size_t f = 0; f < n_features; ++f) {
            left.per_feature[f].reserve(best_left_count);
            right.per_feature[f].reserve(n - best_left_count);
            for (std::uint32_t r : work.columns.per_feature[f]) {
                if (x.at(r, best_feature) < best_threshold) {
                    left.per_feature[f].push_back(r);
                } else {
                    right.per_feature[f].push_back(r);
                }
            }
        }

        const std::int32_t left_index = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        const std::int32_t right_index = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();

        TreeNode& node = tree.nodes[static_cast<std::size_t>(work.node)];
        node.feature = static_cast<std::int32_t>(best_feature);
        node.threshold = best_threshold;
        node.left = left_index;
        node.right = right_index;

        stack.push_back(Work{right_index, std::move(right), work.depth + 1});
        stack.push_back(Work{left_index, std::move(left), work.depth + 1});
    }

    return tree;
}

void check_finite(const Matrix& x, std::span<const double> y) {
    for (double v : x.data) {
        if (!std::isfinite(v)) throw ValueError("train: non-finite feature value");
    }
    for (double v : y) {
        if (!std::isfinite(v)) throw ValueError("train: non-finite target value");
    }
}

}  // namespace

std::optional<SplitCandidate> find_best_split(std::span<const double> gradients,
                                              std::span<const double> hessians,
                                              std::span<const double> feature_values,
                                              double lambda, double gamma,
                                              int min_samples_leaf) {
    if (gradients.size() != hessians.size() || gradients.size() != feature_values.size()) {
        throw ValueError("find_best_split: input lengths differ");
    }
    if (min_samples_leaf < 1) {
        throw ValueError("find_best_split: min_samples_leaf must be >= 1");
    }
    const std::size_t n = feature_values.size();
    if (n < 2) return std::nullopt;

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (feature_values[a] != feature_values[b]) return feature_values[a] < feature_values[b];
        return a < b;
    });

    double g_total = 0.0;
    double h_total = 0.0;
    for (std::uint32_t idx : order) {
        g_total += gradients[idx];
        h_total += hessians[idx];
    }

    ScanResult best = best_split_scan(
        order, [&](std::uint32_t idx) { return feature_values[idx]; }, gradients, hessians,
        lambda, gamma, static_cast<std::size_t>(min_samples_leaf), g_total, h_total);

    if (!best.found || best.gain <= 0.0) return std::nullopt;
    return SplitCandidate{best.threshold, best.gain};
}

Ensemble train(const Matrix& x, std::span<const double> y, const ModelConfig& cfg,
               TrainLog* log) {
    cfg.validate();
    if (x.n_rows == 0 || y.empty()) throw ValueError("train: empty training set");
    if (x.n_cols == 0) throw ValueError("train: no feature columns");
    if (x.n_rows != y.size()) {
        throw ValueError("train: feature and target row counts differ");
    }
    check_finite(x, y);

    const std::size_t n = x.n_rows;

    Ensemble model;
    model.n_features = x.n_cols;
    model.learning_rate = cfg.learning_rate;
    model.base_score = pairwise_sum(y) / static_cast<double>(n);
    model.scaler = identity_scaler(x.n_cols);
    model.trees.reserve(static_cast<std::size_t>(cfg.n_trees));

    // Feature order depends only on x: sort once, reuse every round.
    NodeColumns root_columns;
    root_columns.per_feature.resize(x.n_cols);
    for (std::size_t f = 0; f < x.n_cols; ++f) {
        std::vector<std::uint32_t>& order = root_columns.per_feature[f];
        order.resize(n);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (x.at(a, f) != x.at(b, f)) return x.at(a, f) < x.at(b, f);
            return a < b;
        });
    }

    std::vector<double> pred(n, model.base_score);
    std::vector<double> g(n);
    std::vector<double> h(n, 1.0);

    for (int round = 0; round < cfg.n_trees; ++round) {
        for (std::size_t i = 0; i < n; ++i) g[i] = pred[i] - y[i];

        Tree tree = build_tree(x, g, h, cfg, root_columns);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] += cfg.learning_rate * tree.evaluate(x.row(i));
        }
        model.trees.push_back(std::move(tree));

        if (log != nullptr) log->round_rmse.push_back(rmse(y, pred));
    }

    return model;
}

void predict_into(const Ensemble& model, const Matrix& x, std::span<double> out) {
    if (x.n_cols != model.n_features) {
        throw ValueError("predict: matrix has " + std::to_string(x.n_cols) +
                         " columns, model expects " + std::to_string(model.n_features));
    }
    if (out.size() != x.n_rows) {
        throw ValueError("predict: output length does not match row count");
    }
    for (double v : x.data) {
        if (std::isnan(v)) throw ValueError("predict: NaN feature value");
    }

    for (std::size_t r = 0; r < x.n_rows; ++r) {
        const std::span<const double> row = x.row(r);
        double sum = 0.0;
        for (const Tree& tree : model.trees) sum += tree.evaluate(row);
        out[r] = model.base_score + model.learning_rate * sum;
    }
}

std::vector<double> predict(const Ensemble& model, const Matrix& x) {
    std::vector<double> out(x.n_rows);
    predict_into(model, x, out);
    return out;
}

}  // namespace edgeboost
