#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "edgeboost/errors.hpp"
#include "edgeboost/gbrt.hpp"
#include "edgeboost/metrics.hpp"
#include "edgeboost/model_store.hpp"
#include "oracles.hpp"

using namespace edgeboost;

namespace {

Matrix column_matrix(std::vector<double> values) {
    Matrix x(values.size(), 1);
    x.data = std::move(values);
    return x;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Matrix x(rows, cols);
    for (double& v : x.data) v = dist(rng);
    return x;
}

}  // namespace

TEST_SUITE("gbrt") {

TEST_CASE("find_best_split reproduces the hand-computed example") {
    std::vector<double> g{0.5, 0.5, -0.5, -0.5};
    std::vector<double> h{1, 1, 1, 1};
    std::vector<double> values{0, 1, 2, 3};
    auto split = find_best_split(g, h, values, 1.0, 0.0, 1);
    REQUIRE(split.has_value());
    CHECK(split->threshold == doctest::Approx(1.5));
    CHECK(split->gain == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("identical feature values admit no split") {
    std::vector<double> g{1, -1, 1};
    std::vector<double> h{1, 1, 1};
    std::vector<double> values{4, 4, 4};
    CHECK_FALSE(find_best_split(g, h, values, 1.0, 0.0, 1).has_value());
}

TEST_CASE("min_samples_leaf is honored on both sides") {
    std::vector<double> g{3, -1, -1, -1};
    std::vector<double> h{1, 1, 1, 1};
    std::vector<double> values{0, 1, 2, 3};
    auto split = find_best_split(g, h, values, 0.0, 0.0, 2);
    REQUIRE(split.has_value());
    CHECK(split->threshold == doctest::Approx(1.5));  // 1-vs-3 splits are excluded
}

TEST_CASE("gamma can veto otherwise positive splits") {
    std::vector<double> g{0.5, 0.5, -0.5, -0.5};
    std::vector<double> h{1, 1, 1, 1};
    std::vector<double> values{0, 1, 2, 3};
    CHECK_FALSE(find_best_split(g, h, values, 1.0, 0.4, 1).has_value());
}

TEST_CASE("greedy splitter agrees with the brute-force enumerator") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng() % 199;
        std::vector<double> g(n), h(n), values(n);
        bool grid = trial % 3 == 0;  // coarse grids exercise duplicate values
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = unit(rng) * 2.0 - 1.0;
            h[i] = 1.0;
            values[i] = grid ? static_cast<double>(rng() % 8) : unit(rng);
        }
        double lambda = (trial % 4) * 0.5;
        double gamma = (trial % 5 == 0) ? 0.05 : 0.0;
        int msl = 1 + static_cast<int>(rng() % 3);

        auto fast = find_best_split(g, h, values, lambda, gamma, msl);
        auto ref = oracles::brute_force_best_split(g, h, values, lambda, gamma, msl);

        REQUIRE(fast.has_value() == ref.has_value());
        if (fast) {
            CHECK(std::abs(fast->threshold - ref->threshold) <= 1e-9);
            CHECK(std::abs(fast->gain - ref->gain) <=
                  1e-9 * std::max(1.0, std::abs(ref->gain)));
        }
    }
}

TEST_CASE("one depth-1 round on the hand example builds the expected tree") {
    Matrix x = column_matrix({0, 1, 2, 3});
    std::vector<double> y{0, 0, 1, 1};
    ModelConfig cfg{1, 1, 1.0, 1.0, 0.0, 1, 42};

    Ensemble model = train(x, y, cfg);
    CHECK(model.base_score == doctest::Approx(0.5));
    REQUIRE(model.trees.size() == 1);
    const Tree& tree = model.trees[0];
    REQUIRE(tree.nodes.size() == 3);
    CHECK(tree.nodes[0].feature == 0);
    CHECK(tree.nodes[0].threshold == doctest::Approx(1.5));
    CHECK(tree.nodes[tree.nodes[0].left].leaf_value == doctest::Approx(-1.0 / 3.0));
    CHECK(tree.nodes[tree.nodes[0].right].leaf_value == doctest::Approx(1.0 / 3.0));

    std::vector<double> preds = predict(model, x);
    CHECK(preds[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(preds[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(preds[2] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(preds[3] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));

    Matrix probe = column_matrix({2});
    CHECK(predict(model, probe)[0] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("constant targets produce single-leaf trees and the mean prediction") {
    Matrix x = random_matrix(40, 3, 99);
    std::vector<double> y(40, 0.25);
    Ensemble model = train(x, y, ModelConfig{5, 4, 0.3, 1.0, 0.0, 1, 42});
    for (const Tree& tree : model.trees) {
        CHECK(tree.nodes.size() == 1);
        CHECK(tree.nodes[0].is_leaf());
    }
    for (double p : predict(model, x)) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("training twice gives bit-identical serialized models") {
    Matrix x = random_matrix(300, 5, 7);
    std::vector<double> y(300);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = 0.4 * x.at(i, 0) + 0.3 * x.at(i, 1) * x.at(i, 2);
    }
    ModelConfig cfg{12, 4, 0.3, 1.0, 0.0, 1, 42};
    Ensemble a = train(x, y, cfg);
    Ensemble b = train(x, y, cfg);
    CHECK(serialize(a) == serialize(b));
}

TEST_CASE("prediction is exactly base plus shrinkage times the tree sum") {
    Matrix x = random_matrix(60, 4, 21);
    std::vector<double> y(60);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x.at(i, 0) * x.at(i, 3);
    Ensemble model = train(x, y, ModelConfig{8, 3, 0.3, 1.0, 0.0, 1, 42});

    std::vector<double> preds = predict(model, x);
    for (std::size_t r = 0; r < x.n_rows; ++r) {
        double sum = 0.0;
        for (const Tree& tree : model.trees) sum += tree.evaluate(x.row(r));
        CHECK(preds[r] == model.base_score + model.learning_rate * sum);
    }
}

TEST_CASE("training RMSE is non-increasing round over round") {
    Matrix x = random_matrix(500, 6, 33);
    std::vector<double> y(500);
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = 0.5 * x.at(i, 0) + 0.2 * x.at(i, 1) * x.at(i, 2) + 0.1 * x.at(i, 4) + noise(rng);
    }
    for (double lr : {0.1, 0.3, 1.0}) {
        TrainLog log;
        ModelConfig cfg{20, 4, lr, 1.0, 0.0, 1, 42};
        train(x, y, cfg, &log);
        REQUIRE(log.round_rmse.size() == 20);
        for (std::size_t i = 1; i < log.round_rmse.size(); ++i) {
            CHECK(log.round_rmse[i] <= log.round_rmse[i - 1] + 1e-12);
        }
    }
}

TEST_CASE("leaf values stay within [-1, 1] for lambda >= 1 and targets in [0,1]") {
    Matrix x = random_matrix(400, 5, 55);
    std::vector<double> y(400);
    std::mt19937_64 rng(56);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double& v : y) v = unit(rng);

    Ensemble model = train(x, y, full_config());
    for (const Tree& tree : model.trees) {
        for (const TreeNode& node : tree.nodes) {
            if (node.is_leaf()) {
                CHECK(std::isfinite(node.leaf_value));
                CHECK(std::abs(node.leaf_value) <= 1.0);
            }
        }
    }
}

TEST_CASE("child indices always point forward in the node array") {
    Matrix x = random_matrix(200, 4, 77);
    std::vector<double> y(200);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x.at(i, 1);
    Ensemble model = train(x, y, ModelConfig{10, 5, 0.3, 1.0, 0.0, 1, 42});
    for (const Tree& tree : model.trees) {
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            const TreeNode& node = tree.nodes[i];
            if (!node.is_leaf()) {
                CHECK(node.left > static_cast<std::int32_t>(i));
                CHECK(node.right > static_cast<std::int32_t>(i));
                CHECK(node.left < static_cast<std::int32_t>(tree.nodes.size()));
                CHECK(node.right < static_cast<std::int32_t>(tree.nodes.size()));
            }
        }
    }
}

TEST_CASE("zero-tree ensembles predict the base score everywhere") {
    Ensemble model;
    model.base_score = 0.37;
    model.learning_rate = 0.5;
    model.n_features = 2;
    model.scaler = identity_scaler(2);
    Matrix x = random_matrix(10, 2, 88);
    for (double p : predict(model, x)) CHECK(p == 0.37);
}

TEST_CASE("squared-loss gradient matches central finite differences") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double eps = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double y = unit(rng);
        double pred = unit(rng);
        auto loss = [&](double p) { return 0.5 * (p - y) * (p - y); };
        double numeric = (loss(pred + eps) - loss(pred - eps)) / (2.0 * eps);
        double analytic = pred - y;  // the g_i used by training
        worst = std::max(worst, std::abs(numeric - analytic));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("a longer run extends a shorter one tree for tree") {
    Matrix x = random_matrix(150, 3, 101);
    std::vector<double> y(150);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x.at(i, 0) + 0.5 * x.at(i, 2);
    ModelConfig short_cfg{5, 3, 0.3, 1.0, 0.0, 1, 42};
    ModelConfig long_cfg{12, 3, 0.3, 1.0, 0.0, 1, 42};
    Ensemble a = train(x, y, short_cfg);
    Ensemble b = train(x, y, long_cfg);
    REQUIRE(b.trees.size() == 12);
    for (std::size_t t = 0; t < a.trees.size(); ++t) {
        REQUIRE(a.trees[t].nodes.size() == b.trees[t].nodes.size());
        for (std::size_t i = 0; i < a.trees[t].nodes.size(); ++i) {
            CHECK(a.trees[t].nodes[i].feature == b.trees[t].nodes[i].feature);
            CHECK(a.trees[t].nodes[i].threshold == b.trees[t].nodes[i].threshold);
            CHECK(a.trees[t].nodes[i].leaf_value == b.trees[t].nodes[i].leaf_value);
        }
    }
}

TEST_CASE("equal gains resolve to the lowest feature index") {
    // Two identical columns: the split must land on feature 0.
    Matrix x(4, 2);
    x.data = {0, 0, 1, 1, 2, 2, 3, 3};
    std::vector<double> y{0, 0, 1, 1};
    Ensemble model = train(x, y, ModelConfig{1, 1, 1.0, 1.0, 0.0, 1, 42});
    REQUIRE(model.trees.size() == 1);
    CHECK(model.trees[0].nodes[0].feature == 0);
}

TEST_CASE("config factories carry the documented constants") {
    ModelConfig full = full_config();
    CHECK(full.n_trees == 100);
    CHECK(full.max_depth == 6);
    CHECK(full.learning_rate == doctest::Approx(0.3));
    CHECK(full.lambda == 1.0);
    CHECK(full.gamma == 0.0);
    CHECK(full.min_samples_leaf == 1);

    ModelConfig tiny = tiny_config();
    CHECK(tiny.n_trees == 25);
    CHECK(tiny.max_depth == 3);
    CHECK(tiny.learning_rate == doctest::Approx(0.3));
}

TEST_CASE("invalid configs and inputs are rejected") {
    const ModelConfig no_trees{0, 6, 0.3, 1.0, 0.0, 1, 42};
    const ModelConfig no_depth{10, 0, 0.3, 1.0, 0.0, 1, 42};
    const ModelConfig zero_lr{10, 6, 0.0, 1.0, 0.0, 1, 42};
    const ModelConfig bad_lambda{10, 6, 0.3, -1.0, 0.0, 1, 42};
    CHECK_THROWS_AS(no_trees.validate(), ValueError);
    CHECK_THROWS_AS(no_depth.validate(), ValueError);
    CHECK_THROWS_AS(zero_lr.validate(), ValueError);
    CHECK_THROWS_AS(bad_lambda.validate(), ValueError);

    Matrix empty;
    std::vector<double> no_y;
    CHECK_THROWS_AS(train(empty, no_y, full_config()), ValueError);

    Matrix x = column_matrix({0, 1, 2});
    std::vector<double> bad_y{0.0, std::nan(""), 1.0};
    CHECK_THROWS_AS(train(x, bad_y, full_config()), ValueError);
}

TEST_CASE("predict validates the matrix against the model") {
    Matrix x = column_matrix({0, 1, 2, 3});
    std::vector<double> y{0, 0, 1, 1};
    Ensemble model = train(x, y, ModelConfig{1, 1, 1.0, 1.0, 0.0, 1, 42});

    Matrix wrong(2, 2);
    CHECK_THROWS_AS(predict(model, wrong), ValueError);

    Matrix with_nan = column_matrix({0.5, std::nan("")});
    CHECK_THROWS_AS(predict(model, with_nan), ValueError);
}

}  // TEST_SUITE
