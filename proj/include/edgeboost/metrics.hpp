#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace edgeboost {

/// Accuracy metrics for one (target, model) pair, in scaled target units.
struct EvalReport {
    std::string target_name;
    std::string model_name;
    double mae = 0.0;
    double rmse = 0.0;
    double mbe = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};

/// Sum with pairwise (cascade) accumulation above 4096 elements. Bounded
/// rounding error and a fixed evaluation order, so results are stable.
double pairwise_sum(std::span<const double> values);

/// (1/n) * sum |y_i - yhat_i|. Throws ValueError on empty or mismatched input.
double mae(std::span<const double> y, std::span<const double> yhat);

/// sqrt((1/n) * sum (y_i - yhat_i)^2). Errors as mae.
double rmse(std::span<const double> y, std::span<const double> yhat);

/// (1/n) * sum (yhat_i - y_i). Positive means systematic overestimation.
double mbe(std::span<const double> y, std::span<const double> yhat);

/// 1 - SS_res / SS_tot. Throws ValueError when y is constant (SS_tot = 0).
double r2(std::span<const double> y, std::span<const double> yhat);

EvalReport make_eval_report(std::string target_name, std::string model_name,
                            std::span<const double> y, std::span<const double> yhat);

}  // namespace edgeboost
