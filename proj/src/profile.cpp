#include "edgeboost/profile.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "edgeboost/errors.hpp"
#include "edgeboost/metrics.hpp"
#include "edgeboost/model_store.hpp"

namespace edgeboost {

namespace detail {

ActionTiming summarize_runs(std::vector<double> run_ms) {
    ActionTiming t;
    t.run_ms = std::move(run_ms);

    std::vector<double> sorted = t.run_ms;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    t.min_ms = sorted.front();
    t.median_ms = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    t.mean_ms = pairwise_sum(sorted) / static_cast<double>(n);
    return t;
}

}  // namespace detail

namespace {

std::uint64_t checksum_bits(std::span<const double> values) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the raw bits
    for (double v : values) {
        h = (h ^ std::bit_cast<std::uint64_t>(v)) * 1099511628211ull;
    }
    return h;
}

}  // namespace

TimingResult time_inference(const Ensemble& model, const Matrix& x_test, int repeats) {
    if (repeats < 3) {
        throw ValueError("time_inference: need at least 3 repeats, got " +
                         std::to_string(repeats));
    }
    if (x_test.n_rows == 0) {
        throw ValueError("time_inference: cannot time an empty predict call");
    }

    std::vector<double> out(x_test.n_rows);

    // Warm-up: one untimed call to exclude cold caches and lazy init.
    predict_into(model, x_test, out);
    const std::uint64_t expected = checksum_bits(out);

    ActionTiming timing = time_action(
        [&]() {
            predict_into(model, x_test, out);
            if (checksum_bits(out) != expected) {
                throw ValueError("time_inference: prediction checksum changed between runs");
            }
        },
        repeats);

    TimingResult result;
    result.median_ms = timing.median_ms;
    result.min_ms = timing.min_ms;
    result.mean_ms = timing.mean_ms;
    result.checksum = expected;
    result.run_ms = std::move(timing.run_ms);
    return result;
}

ResourceReport build_resource_report(const Ensemble& model,
                                     std::span<const std::uint8_t> model_bytes,
                                     const Matrix& x_test, int repeats,
                                     std::string target_name, std::string model_name) {
    TimingResult timing = time_inference(model, x_test, repeats);

    // The measured action is the allocating predict entry point, so the
    // model's own inference footprint (dominated by the output buffer) is
    // what lands in the high-water mark.
    std::size_t peak_bytes = peak_memory_during([&]() {
        std::vector<double> preds = predict(model, x_test);
        if (checksum_bits(preds) != timing.checksum) {
            throw ValueError("build_resource_report: prediction checksum mismatch");
        }
    });

    ResourceReport report;
    report.target_name = std::move(target_name);
    report.model_name = std::move(model_name);
    report.inference_ms = timing.median_ms;
    report.per_sample_us =
        timing.median_ms * 1000.0 / static_cast<double>(x_test.n_rows);
    report.model_size_kb = model_size_kb(model_bytes);
    report.peak_mem_mb = static_cast<double>(peak_bytes) / (1024.0 * 1024.0);
    report.repeats = repeats;
    return report;
}

}  // namespace edgeboost
