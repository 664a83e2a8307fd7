#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "edgeboost/commands.hpp"
#include "edgeboost/datagen.hpp"
#include "edgeboost/dataset.hpp"
#include "edgeboost/errors.hpp"
#include "edgeboost/tgds.hpp"

using namespace edgeboost;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// A small but structurally complete sample: real dialect, missing bursts,
// trailing junk. Cached per test binary run.
const fs::path& sample_csv() {
    static fs::path path = [] {
        fs::path p = fs::temp_directory_path() / "edgeboost_test_sample.csv";
        SynthSpec spec;
        spec.n_rows = 700;
        spec.trailing_blank_rows = 9;
        write_airquality_csv(p.string(), spec);
        return p;
    }();
    return path;
}

cli::RunConfig base_config(const fs::path& out_dir) {
    cli::RunConfig cfg;
    cfg.input = sample_csv();
    cfg.out_dir = out_dir;
    cfg.trees_override = 8;  // keep the integration runs quick
    cfg.depth_override = 3;
    return cfg;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("generated sample has the declared shape and dialect") {
    RawTable t;
    {
        std::ifstream in(sample_csv());
        t = parse_csv(in);
    }
    CHECK(t.n_rows() == 700);
    CHECK(t.n_cols() == 15);
    CHECK(t.column_names.front() == "Date");
    CHECK(t.column_names.back() == "AH");

    Dataset ds = to_dataset(t, -200.0, {});
    // NMHC stops reporting early in the recording, like the original export.
    int nmhc = ds.column_index("NMHC(GT)");
    REQUIRE(nmhc >= 0);
    std::size_t missing = ds.missing_counts()[static_cast<std::size_t>(nmhc)];
    CHECK(missing > 600 * 0.8);
}

TEST_CASE("surviving rows equal total rows minus missing-target rows") {
    std::ifstream in(sample_csv());
    Dataset ds = to_dataset(parse_csv(in), -200.0, {});
    int co = ds.column_index("CO(GT)");
    REQUIRE(co >= 0);
    std::size_t co_missing = ds.missing_counts()[static_cast<std::size_t>(co)];
    CHECK(co_missing > 0);

    SelectedXY xy = select_xy(ds, "CO(GT)");
    CleanXY clean = handle_missing(xy.features, xy.target);
    CHECK(clean.features.n_rows == ds.n_rows - co_missing);
    CHECK(clean.rows_dropped == co_missing);
}

TEST_CASE("tgds round-trip preserves the dataset exactly") {
    std::ifstream in(sample_csv());
    Dataset ds = to_dataset(parse_csv(in), -200.0, {});

    std::stringstream buf;
    write_tgds(ds, buf);
    Dataset back = read_tgds(buf);

    CHECK(back.column_names == ds.column_names);
    CHECK(back.n_rows == ds.n_rows);
    CHECK(back.values == ds.values);
    CHECK(back.missing == ds.missing);
}

TEST_CASE("tgds rejects corrupt streams") {
    std::stringstream buf("nope");
    CHECK_THROWS_AS(read_tgds(buf), FormatError);
}

TEST_CASE("ingest is deterministic: identical artifact bytes on re-run") {
    TempDir dir("edgeboost_ingest_a");
    cli::RunConfig cfg = base_config(dir.path);
    std::ostringstream log;
    cli::IngestSummary s1 = cli::cmd_ingest(cfg, log);
    std::string first = read_file(s1.artifact);
    cli::IngestSummary s2 = cli::cmd_ingest(cfg, log);
    CHECK(read_file(s2.artifact) == first);
    CHECK(s1.n_rows == 700);
    CHECK(log.str().find("700 rows") != std::string::npos);
}

TEST_CASE("ingest drops the default noisy column and reports missing counts") {
    TempDir dir("edgeboost_ingest_b");
    cli::RunConfig cfg = base_config(dir.path);
    std::ostringstream log;
    cli::IngestSummary s = cli::cmd_ingest(cfg, log);
    for (const auto& [name, count] : s.missing_per_column) {
        CHECK(name != "NMHC(GT)");
    }
    CHECK(s.n_cols == 12);  // 15 named minus Date, Time, NMHC(GT)
}

TEST_CASE("missing input file is an I/O error") {
    TempDir dir("edgeboost_ingest_c");
    cli::RunConfig cfg = base_config(dir.path);
    cfg.input = dir.path / "absent.csv";
    std::ostringstream log;
    CHECK_THROWS_AS(cli::cmd_ingest(cfg, log), IoError);
}

TEST_CASE("training twice writes bit-identical model files") {
    TempDir dir("edgeboost_train");
    cli::RunConfig cfg = base_config(dir.path);
    std::ostringstream log;
    cli::cmd_ingest(cfg, log);
    cfg.input.clear();

    cli::TrainSummary t1 = cli::cmd_train(cfg, log);
    std::string first = read_file(t1.model_file);
    cli::TrainSummary t2 = cli::cmd_train(cfg, log);
    CHECK(read_file(t2.model_file) == first);
    CHECK(t1.n_train + t1.n_test > 0);
    REQUIRE_FALSE(t1.round_rmse.empty());
    for (std::size_t i = 1; i < t1.round_rmse.size(); ++i) {
        CHECK(t1.round_rmse[i] <= t1.round_rmse[i - 1] + 1e-12);
    }
}

TEST_CASE("training without an ingest artifact points at the missing command") {
    TempDir dir("edgeboost_train_noartifact");
    cli::RunConfig cfg = base_config(dir.path);
    cfg.input.clear();
    std::ostringstream log;
    try {
        cli::cmd_train(cfg, log);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("edgeboost ingest") != std::string::npos);
    }
}

TEST_CASE("evaluate writes the pinned CSV schema and merges rows in order") {
    TempDir dir("edgeboost_eval");
    cli::RunConfig cfg = base_config(dir.path);
    std::ostringstream log;
    cli::cmd_ingest(cfg, log);
    cfg.input.clear();

    cfg.model = cli::ModelKind::kTiny;
    cli::cmd_train(cfg, log);
    cli::EvalRow tiny = cli::cmd_evaluate(cfg, log);

    cfg.model = cli::ModelKind::kFull;
    cli::cmd_train(cfg, log);
    cli::EvalRow full = cli::cmd_evaluate(cfg, log);

    CHECK(tiny.report.r2 <= 1.0);
    CHECK(full.report.rmse >= full.report.mae);

    std::string csv = read_file(cfg.evaluate_csv_path());
    CHECK(csv.rfind("target,model,mae,rmse,mbe,r2,n\n", 0) == 0);
    std::size_t full_pos = csv.find("CO,full");
    std::size_t tiny_pos = csv.find("CO,tiny");
    REQUIRE(full_pos != std::string::npos);
    REQUIRE(tiny_pos != std::string::npos);
    CHECK(full_pos < tiny_pos);  // fixed order regardless of run order
}

TEST_CASE("evaluate without a model names the missing command") {
    TempDir dir("edgeboost_eval_nomodel");
    cli::RunConfig cfg = base_config(dir.path);
    std::ostringstream log;
    cli::cmd_ingest(cfg, log);
    cfg.input.clear();
    try {
        cli::cmd_evaluate(cfg, log);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("edgeboost train") != std::string::npos);
    }
}

TEST_CASE("profile echoes repeats and enforces the minimum") {
    TempDir dir("edgeboost_prof");
    cli::RunConfig cfg = base_config(dir.path);
    std::ostringstream log;
    cli::cmd_ingest(cfg, log);
    cfg.input.clear();
    cli::cmd_train(cfg, log);

    cfg.repeats = 7;
    ResourceReport rep = cli::cmd_profile(cfg, log);
    CHECK(rep.repeats == 7);
    CHECK(rep.inference_ms >= 0.0);

    cfg.repeats = 2;
    CHECK_THROWS_AS(cli::cmd_profile(cfg, log), ConfigError);
}

TEST_CASE("report joins evaluate and profile rows without recomputation") {
    TempDir dir("edgeboost_report");
    cli::RunConfig cfg = base_config(dir.path);
    cfg.repeats = 5;
    std::ostringstream log;
    cli::cmd_run_all(cfg, log);

    std::string evaluate_csv = read_file(cfg.evaluate_csv_path());
    std::string tradeoff = read_file(cfg.out_dir / "tradeoff_inference.csv");
    CHECK(tradeoff.rfind("model,target,inference_ms,r2\n", 0) == 0);
    // Four matrix points, r2 strings copied verbatim from evaluate.csv.
    CHECK(std::count(tradeoff.begin(), tradeoff.end(), '\n') == 5);
    std::istringstream lines(tradeoff);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        std::string r2_str = line.substr(line.rfind(',') + 1);
        CHECK(evaluate_csv.find(r2_str) != std::string::npos);
    }

    std::string size_csv = read_file(cfg.out_dir / "tradeoff_size.csv");
    CHECK(size_csv.rfind("model,target,size_kb,r2\n", 0) == 0);
    CHECK(std::count(size_csv.begin(), size_csv.end(), '\n') == 5);

    std::string summary = read_file(cfg.out_dir / "summary.md");
    // Published reference constants appear verbatim.
    for (const char* v : {"0.9064", "0.8356", "0.8559", "0.7266", "60.9629", "12.7383",
                          "2.3902", "0.9725", "129.5625"}) {
        CHECK(summary.find(v) != std::string::npos);
    }
}

TEST_CASE("report before evaluate/profile names the missing command") {
    TempDir dir("edgeboost_report_missing");
    cli::RunConfig cfg = base_config(dir.path);
    std::ostringstream log;
    try {
        cli::cmd_report(cfg, log);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("edgeboost evaluate") != std::string::npos);
    }
}

TEST_CASE("the full pipeline is deterministic apart from timings") {
    TempDir a("edgeboost_det_a");
    TempDir b("edgeboost_det_b");
    cli::RunConfig cfg_a = base_config(a.path);
    cli::RunConfig cfg_b = base_config(b.path);
    cfg_a.repeats = 3;
    cfg_b.repeats = 3;
    std::ostringstream log;
    cli::cmd_run_all(cfg_a, log);
    cli::cmd_run_all(cfg_b, log);

    CHECK(read_file(cfg_a.evaluate_csv_path()) == read_file(cfg_b.evaluate_csv_path()));
    CHECK(read_file(a.path / "tradeoff_size.csv") == read_file(b.path / "tradeoff_size.csv"));
    CHECK(read_file(a.path / "dataset.tgds") == read_file(b.path / "dataset.tgds"));
    CHECK(read_file(a.path / "model_CO_full.tgbm") == read_file(b.path / "model_CO_full.tgbm"));
}

TEST_CASE("config validation lists problems before any work") {
    TempDir dir("edgeboost_cfg");
    cli::RunConfig cfg = base_config(dir.path);
    cfg.trees_override = 0;
    cfg.repeats = 1;
    std::ostringstream log;
    try {
        cfg.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("repeats") != std::string::npos);
        CHECK(msg.find("n_trees") != std::string::npos);
    }
}

TEST_CASE("cli binary exit codes: 0 success, 2 usage and I/O errors") {
#ifdef EDGEBOOST_CLI_BIN
    TempDir dir("edgeboost_exit");
    const std::string bin = EDGEBOOST_CLI_BIN;
    const std::string out = " --out " + (dir.path / "o").string();

    int ok = std::system(
        (bin + " ingest --input " + sample_csv().string() + out + " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(ok) == 0);

    int missing = std::system(
        (bin + " ingest --input /nonexistent.csv" + out + " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(missing) == 2);

    int usage = std::system((bin + " ingest --target XYZ > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(usage) == 2);

    int no_artifact = std::system(
        (bin + " train --out " + (dir.path / "empty").string() + " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(no_artifact) == 2);
#endif
}

}  // TEST_SUITE
