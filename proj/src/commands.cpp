#include "edgeboost/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "edgeboost/errors.hpp"
#include "edgeboost/model_store.hpp"
#include "edgeboost/tgds.hpp"

namespace edgeboost::cli {

namespace fs = std::filesystem;
using nlohmann::json;

const char* target_name(TargetKind t) { return t == TargetKind::kCO ? "CO" : "NO2"; }
const char* target_column(TargetKind t) { return t == TargetKind::kCO ? "CO(GT)" : "NO2(GT)"; }
const char* model_name(ModelKind m) { return m == ModelKind::kFull ? "full" : "tiny"; }

namespace {

// Published desktop baseline for the same experiment, kept verbatim so the
// report can show our numbers next to the reference ones.
struct BaselineRow {
    const char* target;
    const char* model;
    const char* mae;
    const char* rmse;
    const char* mbe;
    const char* r2;
    const char* inference_ms;
    const char* size_kb;
    const char* peak_ram_mb;
};

constexpr BaselineRow kPublishedBaseline[] = {
    {"CO", "full", "0.0244", "0.0381", "-0.000062", "0.9064", "2.3902", "60.9629", "129.5625"},
    {"CO", "tiny", "0.0344", "0.0504", "-0.000698", "0.8356", "2.5173", "12.7383", "130.4766"},
    {"NO2", "full", "0.0400", "0.0546", "-0.002623", "0.8559", "2.0926", "60.8301", "130.5313"},
    {"NO2", "tiny", "0.0558", "0.0751", "-0.002572", "0.7266", "0.9725", "12.7383", "130.5703"},
};

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

int row_rank(const std::string& target, const std::string& model) {
    int t = target == "CO" ? 0 : target == "NO2" ? 1 : 2;
    int m = model == "full" ? 0 : model == "tiny" ? 1 : 2;
    return t * 4 + m;
}

// Minimal comma-CSV for our own report files (values never contain commas).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<int>(i);
        }
        return -1;
    }

    const std::vector<std::string>* find(const std::string& target,
                                         const std::string& model) const {
        int t = column("target");
        int m = column("model");
        if (t < 0 || m < 0) return nullptr;
        for (const auto& row : rows) {
            if (row[static_cast<std::size_t>(t)] == target &&
                row[static_cast<std::size_t>(m)] == model) {
                return &row;
            }
        }
        return nullptr;
    }
};

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

CsvTable read_csv_table(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            table.header = split_commas(line);
            first = false;
        } else {
            table.rows.push_back(split_commas(line));
        }
    }
    return table;
}

void write_csv_table(const fs::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i > 0) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// Replaces or inserts the (target, model) row and keeps the fixed ordering:
// CO/full, CO/tiny, NO2/full, NO2/tiny.
void upsert_row(const fs::path& path, const std::vector<std::string>& header,
                const std::vector<std::string>& row) {
    CsvTable table;
    if (fs::exists(path)) {
        table = read_csv_table(path);
        if (table.header != header) table = CsvTable{};  // schema changed: start over
    }
    if (table.header.empty()) table.header = header;

    table.rows.erase(std::remove_if(table.rows.begin(), table.rows.end(),
                                    [&](const std::vector<std::string>& r) {
                                        return r.size() >= 2 && r[0] == row[0] && r[1] == row[1];
                                    }),
                     table.rows.end());
    table.rows.push_back(row);
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const auto& a, const auto& b) {
                         return row_rank(a[0], a[1]) < row_rank(b[0], b[1]);
                     });
    write_csv_table(path, table);
}

void upsert_json(const fs::path& path, json entry) {
    json doc = json::array();
    if (fs::exists(path)) {
        std::ifstream in(path);
        try {
            in >> doc;
        } catch (const json::exception&) {
            doc = json::array();
        }
        if (!doc.is_array()) doc = json::array();
    }
    json next = json::array();
    for (auto& item : doc) {
        if (item.is_object() && item.value("target", "") == entry["target"] &&
            item.value("model", "") == entry["model"]) {
            continue;
        }
        next.push_back(item);
    }
    next.push_back(std::move(entry));
    std::sort(next.begin(), next.end(), [](const json& a, const json& b) {
        return row_rank(a.value("target", ""), a.value("model", "")) <
               row_rank(b.value("target", ""), b.value("model", ""));
    });
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << next.dump(2) << '\n';
}

std::string artifact_stem(const RunConfig& cfg) {
    return std::string("model_") + target_name(cfg.target) + "_" + model_name(cfg.model);
}

Dataset load_dataset_artifact(const RunConfig& cfg) {
    const fs::path& path = cfg.input.empty() ? cfg.dataset_path() : cfg.input;
    if (!fs::exists(path)) {
        throw IoError("dataset artifact '" + path.string() +
                      "' not found; run `edgeboost ingest` first");
    }
    return load_dataset(path.string());
}

struct Prepared {
    Matrix x_train;
    Matrix x_test;
    std::vector<double> y_train;
    std::vector<double> y_test;
    ScalerParams scaler;
    std::size_t n_clean = 0;
    std::size_t rows_dropped = 0;
    std::size_t cells_imputed = 0;
    std::size_t out_of_range_test_cells = 0;
    std::vector<std::string> feature_names;
};

// select_xy -> handle_missing -> split -> scale, with the scaler fitted on
// all clean rows by default (train-only fitting behind the flag).
Prepared prepare(const Dataset& ds, const RunConfig& cfg,
                 const ScalerParams* fixed_scaler = nullptr) {
    SelectedXY xy = select_xy(ds, target_column(cfg.target));
    CleanXY clean = handle_missing(xy.features, xy.target);

    Prepared prep;
    prep.n_clean = clean.features.n_rows;
    prep.rows_dropped = clean.rows_dropped;
    prep.cells_imputed = clean.cells_imputed;
    prep.feature_names = clean.features.column_names;

    Matrix x_raw = to_matrix(clean.features);
    SplitSpec split_spec{0.7, cfg.seed, cfg.split_mode};
    SplitIndices split = split_rows(x_raw.n_rows, split_spec);

    if (fixed_scaler != nullptr) {
        prep.scaler = *fixed_scaler;
    } else if (cfg.scaler_fit_train_only) {
        prep.scaler = fit_scaler_rows(x_raw, clean.target, split.train);
    } else {
        prep.scaler = fit_scaler(x_raw, clean.target);
    }

    Matrix x_scaled = apply_scaler(x_raw, prep.scaler);
    std::vector<double> y_scaled = apply_target_scaler(clean.target, prep.scaler);

    prep.x_train = x_scaled.take_rows(split.train);
    prep.x_test = x_scaled.take_rows(split.test);
    prep.y_train.reserve(split.train.size());
    for (std::uint32_t r : split.train) prep.y_train.push_back(y_scaled[r]);
    prep.y_test.reserve(split.test.size());
    for (std::uint32_t r : split.test) prep.y_test.push_back(y_scaled[r]);
    prep.out_of_range_test_cells = count_out_of_range(prep.x_test);
    return prep;
}

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
}

const std::vector<std::string> kEvalHeader = {"target", "model", "mae", "rmse",
                                              "mbe",    "r2",    "n"};
const std::vector<std::string> kProfileHeader = {
    "target", "model", "inference_ms", "per_sample_us", "model_size_kb", "peak_mem_mb",
    "repeats"};

}  // namespace

ModelConfig RunConfig::resolve_model_config() const {
    ModelConfig mc = model == ModelKind::kFull ? full_config() : tiny_config();
    if (trees_override) mc.n_trees = *trees_override;
    if (depth_override) mc.max_depth = *depth_override;
    if (min_leaf_override) mc.min_samples_leaf = *min_leaf_override;
    if (lr_override) mc.learning_rate = *lr_override;
    if (lambda_override) mc.lambda = *lambda_override;
    if (gamma_override) mc.gamma = *gamma_override;
    mc.seed = seed;
    return mc;
}

void RunConfig::validate() const {
    std::vector<std::string> problems;
    if (repeats < 3) problems.push_back("--repeats must be >= 3");
    if (csv.delimiter == csv.decimal_separator) {
        problems.push_back("CSV delimiter and decimal separator must differ");
    }
    try {
        resolve_model_config().validate();
    } catch (const ValueError& e) {
        problems.push_back(e.what());
    }
    if (!problems.empty()) {
        std::string joined;
        for (const std::string& p : problems) {
            if (!joined.empty()) joined += "\n";
            joined += "  - " + p;
        }
        throw ConfigError("invalid configuration:\n" + joined);
    }
}

fs::path RunConfig::dataset_path() const { return out_dir / "dataset.tgds"; }
fs::path RunConfig::model_path() const { return out_dir / (artifact_stem(*this) + ".tgbm"); }
fs::path RunConfig::train_log_path() const {
    return out_dir / (std::string("train_") + target_name(target) + "_" + model_name(model) +
                      ".csv");
}
fs::path RunConfig::evaluate_csv_path() const { return out_dir / "evaluate.csv"; }
fs::path RunConfig::evaluate_json_path() const { return out_dir / "evaluate.json"; }
fs::path RunConfig::profile_csv_path() const { return out_dir / "profile.csv"; }
fs::path RunConfig::profile_json_path() const { return out_dir / "profile.json"; }

IngestSummary cmd_ingest(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    if (cfg.input.empty() || !fs::exists(cfg.input)) {
        throw IoError("input file not found: '" + cfg.input.string() + "'");
    }

    std::ifstream in(cfg.input, std::ios::binary);
    if (!in) throw IoError("cannot open '" + cfg.input.string() + "'");

    RawTable table;
    try {
        table = parse_csv(in, cfg.csv);
    } catch (const ParseError& e) {
        throw ParseError(cfg.input.string() + ":" + std::to_string(e.row()) + ": " + e.what(),
                         e.row());
    }

    IngestSummary summary;
    Dataset ds;
    try {
        ds = to_dataset(table, cfg.missing_sentinel, cfg.drop_columns, &summary.warnings);
    } catch (const ParseError& e) {
        throw ParseError(cfg.input.string() + ":" + std::to_string(e.row()) + ": " + e.what(),
                         e.row());
    }

    fs::create_directories(cfg.out_dir);
    save_dataset(ds, cfg.dataset_path().string());

    summary.n_rows = ds.n_rows;
    summary.n_cols = ds.n_cols;
    summary.artifact = cfg.dataset_path();
    std::vector<std::size_t> counts = ds.missing_counts();
    for (std::size_t c = 0; c < ds.n_cols; ++c) {
        summary.missing_per_column.emplace_back(ds.column_names[c], counts[c]);
    }

    for (const std::string& w : summary.warnings) log << "warning: " << w << "\n";
    log << summary.n_rows << " rows, " << summary.n_cols << " columns -> "
        << summary.artifact.string() << "\n";
    log << "missing cells per column:\n";
    for (const auto& [name, count] : summary.missing_per_column) {
        log << "  " << name << ": " << count << "\n";
    }
    return summary;
}

TrainSummary cmd_train(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    Dataset ds = load_dataset_artifact(cfg);
    Prepared prep = prepare(ds, cfg);

    ModelConfig mc = cfg.resolve_model_config();
    TrainLog train_log;
    Ensemble model = train(prep.x_train, prep.y_train, mc, &train_log);
    model.scaler = prep.scaler;

    fs::create_directories(cfg.out_dir);
    std::vector<std::uint8_t> bytes = serialize(model);
    {
        std::ofstream out(cfg.model_path(), std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + cfg.model_path().string() + "' for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    }
    {
        std::ofstream out(cfg.train_log_path(), std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + cfg.train_log_path().string() + "' for writing");
        }
        out << "round,train_rmse\n";
        for (std::size_t i = 0; i < train_log.round_rmse.size(); ++i) {
            out << (i + 1) << ',' << fixed(train_log.round_rmse[i], 8) << '\n';
        }
    }

    TrainSummary summary;
    summary.model_file = cfg.model_path();
    summary.log_file = cfg.train_log_path();
    summary.n_train = prep.x_train.n_rows;
    summary.n_test = prep.x_test.n_rows;
    summary.model_bytes = bytes.size();
    summary.round_rmse = train_log.round_rmse;

    log << "trained " << target_name(cfg.target) << "/" << model_name(cfg.model) << ": "
        << mc.n_trees << " trees, depth " << mc.max_depth << ", " << summary.n_train
        << " train rows (" << prep.rows_dropped << " dropped, " << prep.cells_imputed
        << " cells imputed)\n";
    log << "train RMSE " << fixed(train_log.round_rmse.front(), 6) << " -> "
        << fixed(train_log.round_rmse.back(), 6) << " over " << train_log.round_rmse.size()
        << " rounds\n";
    log << "model: " << summary.model_file.string() << " (" << fixed(model_size_kb(bytes), 4)
        << " kB), log: " << summary.log_file.string() << "\n";
    return summary;
}

EvalRow cmd_evaluate(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    Dataset ds = load_dataset_artifact(cfg);
    if (!fs::exists(cfg.model_path())) {
        throw IoError("model file '" + cfg.model_path().string() +
                      "' not found; run `edgeboost train` first");
    }
    Ensemble model = load_model(cfg.model_path().string());

    // The embedded scaler is the contract between train and evaluate.
    Prepared prep = prepare(ds, cfg, &model.scaler);
    if (prep.x_test.n_cols != model.n_features) {
        throw ValueError("schema mismatch: dataset provides " +
                         std::to_string(prep.x_test.n_cols) + " feature columns, model expects " +
                         std::to_string(model.n_features));
    }

    std::vector<double> yhat = predict(model, prep.x_test);

    EvalRow row;
    row.report = make_eval_report(target_name(cfg.target), model_name(cfg.model), prep.y_test,
                                  yhat);
    row.out_of_range_cells = prep.out_of_range_test_cells;

    std::vector<double> y_phys = invert_target_scaler(prep.y_test, model.scaler);
    std::vector<double> yhat_phys = invert_target_scaler(yhat, model.scaler);
    row.mae_physical = mae(y_phys, yhat_phys);
    row.rmse_physical = rmse(y_phys, yhat_phys);

    fs::create_directories(cfg.out_dir);
    upsert_row(cfg.evaluate_csv_path(), kEvalHeader,
               {row.report.target_name, row.report.model_name, fixed(row.report.mae, 6),
                fixed(row.report.rmse, 6), fixed(row.report.mbe, 6), fixed(row.report.r2, 6),
                std::to_string(row.report.n)});
    upsert_json(cfg.evaluate_json_path(),
                json{{"target", row.report.target_name},
                     {"model", row.report.model_name},
                     {"mae", row.report.mae},
                     {"rmse", row.report.rmse},
                     {"mbe", row.report.mbe},
                     {"r2", row.report.r2},
                     {"n", row.report.n},
                     {"mae_physical", row.mae_physical},
                     {"rmse_physical", row.rmse_physical},
                     {"out_of_range_feature_cells", row.out_of_range_cells},
                     {"seed", cfg.seed},
                     {"split", cfg.split_mode == SplitMode::kShuffled ? "shuffled"
                                                                      : "chronological"}});

    log << row.report.target_name << "/" << row.report.model_name << ": MAE "
        << fixed(row.report.mae, 6) << ", RMSE " << fixed(row.report.rmse, 6) << ", MBE "
        << fixed(row.report.mbe, 6) << ", R2 " << fixed(row.report.r2, 6) << " (n "
        << row.report.n << ", " << row.out_of_range_cells
        << " out-of-range scaled feature cells)\n";
    return row;
}

ResourceReport cmd_profile(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    Dataset ds = load_dataset_artifact(cfg);
    if (!fs::exists(cfg.model_path())) {
        throw IoError("model file '" + cfg.model_path().string() +
                      "' not found; run `edgeboost train` first");
    }
    Ensemble model = load_model(cfg.model_path().string());
    std::vector<std::uint8_t> bytes = read_file_bytes(cfg.model_path());

    Prepared prep = prepare(ds, cfg, &model.scaler);
    if (prep.x_test.n_cols != model.n_features) {
        throw ValueError("schema mismatch: dataset provides " +
                         std::to_string(prep.x_test.n_cols) + " feature columns, model expects " +
                         std::to_string(model.n_features));
    }

    ResourceReport report = build_resource_report(model, bytes, prep.x_test, cfg.repeats,
                                                  target_name(cfg.target),
                                                  model_name(cfg.model));

    fs::create_directories(cfg.out_dir);
    upsert_row(cfg.profile_csv_path(), kProfileHeader,
               {report.target_name, report.model_name, fixed(report.inference_ms, 4),
                fixed(report.per_sample_us, 4), fixed(report.model_size_kb, 4),
                fixed(report.peak_mem_mb, 4), std::to_string(report.repeats)});
    upsert_json(cfg.profile_json_path(),
                json{{"target", report.target_name},
                     {"model", report.model_name},
                     {"inference_ms", report.inference_ms},
                     {"per_sample_us", report.per_sample_us},
                     {"model_size_kb", report.model_size_kb},
                     {"peak_mem_mb", report.peak_mem_mb},
                     {"repeats", report.repeats}});

    log << report.target_name << "/" << report.model_name << ": median inference "
        << fixed(report.inference_ms, 4) << " ms over " << report.repeats << " repeats, "
        << fixed(report.model_size_kb, 4) << " kB, peak " << fixed(report.peak_mem_mb, 4)
        << " MB\n";
    return report;
}

void cmd_report(const RunConfig& cfg, std::ostream& log) {
    if (!fs::exists(cfg.evaluate_csv_path())) {
        throw IoError("missing '" + cfg.evaluate_csv_path().string() +
                      "'; run `edgeboost evaluate` first");
    }
    if (!fs::exists(cfg.profile_csv_path())) {
        throw IoError("missing '" + cfg.profile_csv_path().string() +
                      "'; run `edgeboost profile` first");
    }
    CsvTable eval = read_csv_table(cfg.evaluate_csv_path());
    CsvTable prof = read_csv_table(cfg.profile_csv_path());

    // Trade-off files copy the upstream strings verbatim; nothing recomputed.
    CsvTable inference;
    inference.header = {"model", "target", "inference_ms", "r2"};
    CsvTable size;
    size.header = {"model", "target", "size_kb", "r2"};

    int e_r2 = eval.column("r2");
    int p_inf = prof.column("inference_ms");
    int p_size = prof.column("model_size_kb");
    if (e_r2 < 0 || p_inf < 0 || p_size < 0) {
        throw ValueError("report: unexpected column layout in upstream CSV files");
    }

    for (const BaselineRow& base : kPublishedBaseline) {
        const std::vector<std::string>* e = eval.find(base.target, base.model);
        const std::vector<std::string>* p = prof.find(base.target, base.model);
        if (e == nullptr || p == nullptr) continue;
        inference.rows.push_back({base.model, base.target,
                                  (*p)[static_cast<std::size_t>(p_inf)],
                                  (*e)[static_cast<std::size_t>(e_r2)]});
        size.rows.push_back({base.model, base.target, (*p)[static_cast<std::size_t>(p_size)],
                             (*e)[static_cast<std::size_t>(e_r2)]});
    }

    fs::create_directories(cfg.out_dir);
    write_csv_table(cfg.out_dir / "tradeoff_inference.csv", inference);
    write_csv_table(cfg.out_dir / "tradeoff_size.csv", size);

    std::ofstream md(cfg.out_dir / "summary.md", std::ios::trunc);
    if (!md) throw IoError("cannot open summary.md for writing");

    md << "# Full vs tiny model comparison\n\n";
    md << "Splits are computed per target (seed " << cfg.seed << ", "
       << (cfg.split_mode == SplitMode::kShuffled ? "shuffled" : "chronological")
       << " 70:30): each target drops its own missing rows before splitting.\n\n";
    md << "Reference columns are the published desktop-Python baseline for this\n"
          "experiment. Absolute sizes and peak-RAM figures are environment-bound\n"
          "(the baseline's ~130 MB peaks measure an interpreter baseline, ours an\n"
          "allocator high-water mark inside the inference call), so compare\n"
          "ratios and orderings rather than absolute values.\n\n";

    md << "## Accuracy (scaled units)\n\n";
    md << "| Target | Model | MAE | RMSE | MBE | R2 | ref MAE | ref RMSE | ref MBE | ref R2 |\n";
    md << "|---|---|---|---|---|---|---|---|---|---|\n";
    int e_mae = eval.column("mae"), e_rmse = eval.column("rmse"), e_mbe = eval.column("mbe");
    for (const BaselineRow& base : kPublishedBaseline) {
        const std::vector<std::string>* e = eval.find(base.target, base.model);
        if (e == nullptr) continue;
        md << "| " << base.target << " | " << base.model << " | "
           << (*e)[static_cast<std::size_t>(e_mae)] << " | "
           << (*e)[static_cast<std::size_t>(e_rmse)] << " | "
           << (*e)[static_cast<std::size_t>(e_mbe)] << " | "
           << (*e)[static_cast<std::size_t>(e_r2)] << " | " << base.mae << " | " << base.rmse
           << " | " << base.mbe << " | " << base.r2 << " |\n";
    }

    md << "\n## Resources\n\n";
    md << "| Target | Model | Inference (ms) | Size (kB) | Peak mem (MB) | ref ms | ref kB | "
          "ref MB |\n";
    md << "|---|---|---|---|---|---|---|---|\n";
    int p_peak = prof.column("peak_mem_mb");
    for (const BaselineRow& base : kPublishedBaseline) {
        const std::vector<std::string>* p = prof.find(base.target, base.model);
        if (p == nullptr) continue;
        md << "| " << base.target << " | " << base.model << " | "
           << (*p)[static_cast<std::size_t>(p_inf)] << " | "
           << (*p)[static_cast<std::size_t>(p_size)] << " | "
           << (*p)[static_cast<std::size_t>(p_peak)] << " | " << base.inference_ms << " | "
           << base.size_kb << " | " << base.peak_ram_mb << " |\n";
    }
    md << '\n';

    log << "report: " << (cfg.out_dir / "summary.md").string() << ", "
        << (cfg.out_dir / "tradeoff_inference.csv").string() << ", "
        << (cfg.out_dir / "tradeoff_size.csv").string() << "\n";
}

void cmd_run_all(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    cmd_ingest(cfg, log);

    RunConfig step = cfg;
    step.input.clear();  // downstream commands read the fresh artifact
    for (TargetKind target : {TargetKind::kCO, TargetKind::kNO2}) {
        for (ModelKind model : {ModelKind::kFull, ModelKind::kTiny}) {
            step.target = target;
            step.model = model;
            cmd_train(step, log);
            cmd_evaluate(step, log);
            cmd_profile(step, log);
        }
    }
    cmd_report(step, log);
}

}  // namespace edgeboost::cli
