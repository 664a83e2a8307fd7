#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edgeboost/dataset.hpp"
#include "edgeboost/gbrt.hpp"
#include "edgeboost/metrics.hpp"
#include "edgeboost/preprocess.hpp"
#include "edgeboost/profile.hpp"

namespace edgeboost::cli {

enum class TargetKind { kCO, kNO2 };
enum class ModelKind { kFull, kTiny };

const char* target_name(TargetKind t);    // "CO" / "NO2"
const char* target_column(TargetKind t);  // "CO(GT)" / "NO2(GT)"
const char* model_name(ModelKind m);      // "full" / "tiny"

/// Everything a pipeline command needs. One struct serves all commands;
/// fields irrelevant to a given command are ignored by it.
struct RunConfig {
    std::filesystem::path input;         // CSV for ingest, .tgds elsewhere
    std::filesystem::path out_dir = "out";
    TargetKind target = TargetKind::kCO;
    ModelKind model = ModelKind::kFull;
    std::uint64_t seed = 42;
    SplitMode split_mode = SplitMode::kShuffled;
    double missing_sentinel = -200.0;
    int repeats = 31;
    std::vector<std::string> drop_columns{"NMHC(GT)"};
    bool scaler_fit_train_only = false;
    CsvOptions csv;

    // Hyperparameter overrides on top of the full/tiny defaults.
    std::optional<int> trees_override;
    std::optional<int> depth_override;
    std::optional<int> min_leaf_override;
    std::optional<double> lr_override;
    std::optional<double> lambda_override;
    std::optional<double> gamma_override;

    ModelConfig resolve_model_config() const;

    /// Throws ConfigError listing every invalid field before any work runs.
    void validate() const;

    std::filesystem::path dataset_path() const;
    std::filesystem::path model_path() const;
    std::filesystem::path train_log_path() const;
    std::filesystem::path evaluate_csv_path() const;
    std::filesystem::path evaluate_json_path() const;
    std::filesystem::path profile_csv_path() const;
    std::filesystem::path profile_json_path() const;
};

struct IngestSummary {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::pair<std::string, std::size_t>> missing_per_column;
    std::vector<std::string> warnings;
    std::filesystem::path artifact;
};

/// CSV -> .tgds artifact. Prints row/column counts and per-column missing
/// counts to `log`.
IngestSummary cmd_ingest(const RunConfig& cfg, std::ostream& log);

struct TrainSummary {
    std::filesystem::path model_file;
    std::filesystem::path log_file;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::size_t model_bytes = 0;
    std::vector<double> round_rmse;
};

/// preprocess -> train -> serialize. Writes the .tgbm model and a
/// round-by-round training RMSE log.
TrainSummary cmd_train(const RunConfig& cfg, std::ostream& log);

struct EvalRow {
    EvalReport report;                    // scaled units, mirrors the CSV row
    double mae_physical = 0.0;            // via the inverse target scaler
    double rmse_physical = 0.0;
    std::size_t out_of_range_cells = 0;   // scaled feature cells outside [0,1]
};

/// Scores the stored model on the held-out split and merges the row into
/// evaluate.csv / evaluate.json.
EvalRow cmd_evaluate(const RunConfig& cfg, std::ostream& log);

/// Resource measurements for the stored model; merges into profile.csv/json.
ResourceReport cmd_profile(const RunConfig& cfg, std::ostream& log);

/// Joins evaluate + profile outputs into trade-off CSVs and a Markdown
/// summary with the published baseline figures alongside ours.
void cmd_report(const RunConfig& cfg, std::ostream& log);

/// ingest -> {train, evaluate, profile} for the 2x2 target/model matrix ->
/// report, in a fixed order.
void cmd_run_all(const RunConfig& cfg, std::ostream& log);

}  // namespace edgeboost::cli
