#include "edgeboost/metrics.hpp"

#include <cmath>
#include <vector>

#include "edgeboost/errors.hpp"

namespace edgeboost {

namespace {

constexpr std::size_t kPairwiseBlock = 4096;

void check_pair(std::span<const double> y, std::span<const double> yhat, const char* op) {
    if (y.size() != yhat.size()) {
        throw ValueError(std::string(op) + ": length mismatch (" + std::to_string(y.size()) +
                         " vs " + std::to_string(yhat.size()) + ")");
    }
    if (y.empty()) {
        throw ValueError(std::string(op) + ": empty input");
    }
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= kPairwiseBlock) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    std::size_t half = values.size() / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

double mae(std::span<const double> y, std::span<const double> yhat) {
    check_pair(y, yhat, "mae");
    std::vector<double> abs_diff(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) abs_diff[i] = std::abs(y[i] - yhat[i]);
    return pairwise_sum(abs_diff) / static_cast<double>(y.size());
}

double rmse(std::span<const double> y, std::span<const double> yhat) {
    check_pair(y, yhat, "rmse");
    std::vector<double> sq_diff(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        double d = y[i] - yhat[i];
        sq_diff[i] = d * d;
    }
    return std::sqrt(pairwise_sum(sq_diff) / static_cast<double>(y.size()));
}

double mbe(std::span<const double> y, std::span<const double> yhat) {
    check_pair(y, yhat, "mbe");
    std::vector<double> diff(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) diff[i] = yhat[i] - y[i];
    return pairwise_sum(diff) / static_cast<double>(y.size());
}

double r2(std::span<const double> y, std::span<const double> yhat) {
    check_pair(y, yhat, "r2");
    double y_mean = pairwise_sum(y) / static_cast<double>(y.size());

    std::vector<double> buf(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        double d = y[i] - yhat[i];
        buf[i] = d * d;
    }
    double ss_res = pairwise_sum(buf);
    for (std::size_t i = 0; i < y.size(); ++i) {
        double d = y[i] - y_mean;
        buf[i] = d * d;
    }
    double ss_tot = pairwise_sum(buf);

    if (ss_tot == 0.0) {
        throw ValueError("r2: undefined for a constant target (zero total sum of squares)");
    }
    return 1.0 - ss_res / ss_tot;
}

EvalReport make_eval_report(std::string target_name, std::string model_name,
                            std::span<const double> y, std::span<const double> yhat) {
    EvalReport report;
    report.target_name = std::move(target_name);
    report.model_name = std::move(model_name);
    report.mae = mae(y, yhat);
    report.rmse = rmse(y, yhat);
    report.mbe = mbe(y, yhat);
    report.r2 = r2(y, yhat);
    report.n = y.size();
    return report;
}

}  // namespace edgeboost
