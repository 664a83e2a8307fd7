#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "edgeboost/gbrt.hpp"

namespace edgeboost {

/// Resource measurements for one (target, model) pair. inference_ms is the
/// median wall-clock time of one full-test-set predict call.
struct ResourceReport {
    std::string target_name;
    std::string model_name;
    double inference_ms = 0.0;
    double per_sample_us = 0.0;
    double model_size_kb = 0.0;
    double peak_mem_mb = 0.0;
    int repeats = 0;
};

struct ActionTiming {
    double median_ms = 0.0;
    double min_ms = 0.0;
    double mean_ms = 0.0;
    std::vector<double> run_ms;
};

struct TimingResult {
    double median_ms = 0.0;
    double min_ms = 0.0;
    double mean_ms = 0.0;
    std::uint64_t checksum = 0;  // bit-level hash of the predictions
    std::vector<double> run_ms;
};

namespace detail {

ActionTiming summarize_runs(std::vector<double> run_ms);

}  // namespace detail

/// Times `action` with a monotonic clock, `repeats` times. No warm-up here;
/// callers that need one run the action once first.
template <typename Action>
ActionTiming time_action(Action&& action, int repeats) {
    std::vector<double> run_ms;
    run_ms.reserve(static_cast<std::size_t>(repeats));
    for (int i = 0; i < repeats; ++i) {
        auto start = std::chrono::steady_clock::now();
        action();
        auto stop = std::chrono::steady_clock::now();
        run_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return detail::summarize_runs(std::move(run_ms));
}

/// Times predict(model, x_test) over `repeats` runs after one untimed
/// warm-up call. Each run's predictions are checksummed; a checksum change
/// between runs (or a compiler eliding the work) raises ValueError.
/// Throws ValueError for repeats < 3 or an empty test set.
TimingResult time_inference(const Ensemble& model, const Matrix& x_test, int repeats);

/// True when the counting allocator is linked into this binary.
bool allocation_tracking_available();

/// Live bytes currently allocated through the instrumented allocator.
std::size_t tracked_live_bytes();

namespace detail {

std::size_t peak_memory_run(void (*fn)(void*), void* ctx);

}  // namespace detail

/// High-water mark of bytes allocated while `action` runs, relative to the
/// allocation level at entry. Throws UnsupportedError when the instrumented
/// allocator is not installed — never a silent zero.
template <typename Action>
std::size_t peak_memory_during(Action&& action) {
    auto thunk = [](void* ctx) { (*static_cast<Action*>(ctx))(); };
    return detail::peak_memory_run(thunk, &action);
}

/// Composes inference timing, serialized size and inference peak memory
/// into one report row.
ResourceReport build_resource_report(const Ensemble& model,
                                     std::span<const std::uint8_t> model_bytes,
                                     const Matrix& x_test, int repeats,
                                     std::string target_name, std::string model_name);

}  // namespace edgeboost
