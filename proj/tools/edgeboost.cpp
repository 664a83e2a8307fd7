// edgeboost: train and profile full vs tiny gradient-boosted regression
// trees on air-quality sensor data.
//
// Commands: ingest, train, evaluate, profile, report, run-all.
// Exit codes: 0 success, 1 computation error, 2 usage or I/O error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "edgeboost/commands.hpp"
#include "edgeboost/errors.hpp"

namespace {

using edgeboost::cli::ModelKind;
using edgeboost::cli::RunConfig;
using edgeboost::cli::TargetKind;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("EDGEBOOST_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw edgeboost::ConfigError(std::string("EDGEBOOST_SEED is not a number: '") + env +
                                         "'");
        }
    }
    return 42;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg, bool with_model_flags) {
    cmd->add_option("--input", cfg.input, "Input file (CSV for ingest, .tgds otherwise)");
    cmd->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Split seed (EDGEBOOST_SEED as fallback)")
        ->capture_default_str();

    std::map<std::string, TargetKind> targets{{"CO", TargetKind::kCO}, {"NO2", TargetKind::kNO2}};
    cmd->add_option("--target", cfg.target, "Prediction target")
        ->transform(CLI::CheckedTransformer(targets));

    std::map<std::string, edgeboost::SplitMode> splits{
        {"shuffled", edgeboost::SplitMode::kShuffled},
        {"chronological", edgeboost::SplitMode::kChronological}};
    cmd->add_option("--split", cfg.split_mode, "Train/test split mode")
        ->transform(CLI::CheckedTransformer(splits));

    if (with_model_flags) {
        std::map<std::string, ModelKind> models{{"full", ModelKind::kFull},
                                                {"tiny", ModelKind::kTiny}};
        cmd->add_option("--model", cfg.model, "Model variant")
            ->transform(CLI::CheckedTransformer(models));
        cmd->add_option("--trees", cfg.trees_override, "Override the number of trees");
        cmd->add_option("--depth", cfg.depth_override, "Override the maximum tree depth");
        cmd->add_option("--lr", cfg.lr_override, "Override the learning rate");
        cmd->add_option("--lambda", cfg.lambda_override, "Override the leaf L2 regularizer");
        cmd->add_option("--gamma", cfg.gamma_override, "Override the split gain threshold");
        cmd->add_option("--min-leaf", cfg.min_leaf_override,
                        "Override the minimum samples per leaf");
        cmd->add_flag("--scale-on-train", cfg.scaler_fit_train_only,
                      "Fit the min-max scaler on the training rows only");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resource-aware gradient-boosted regression for air-quality sensors"};
    app.require_subcommand(1);

    RunConfig cfg;
    try {
        cfg.seed = default_seed();
    } catch (const edgeboost::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App* ingest = app.add_subcommand("ingest", "Parse a CSV into a .tgds artifact");
    add_common_flags(ingest, cfg, false);
    ingest->add_option("--missing-sentinel", cfg.missing_sentinel,
                       "Numeric tag marking missing cells")
        ->capture_default_str();
    ingest->add_option("--drop-column", cfg.drop_columns,
                       "Columns to drop before modeling (repeatable)")
        ->capture_default_str();

    CLI::App* train = app.add_subcommand("train", "Train a model on the .tgds artifact");
    add_common_flags(train, cfg, true);

    CLI::App* evaluate = app.add_subcommand("evaluate", "Score a trained model on the test split");
    add_common_flags(evaluate, cfg, true);

    CLI::App* profile = app.add_subcommand("profile", "Measure inference cost of a trained model");
    add_common_flags(profile, cfg, true);
    profile->add_option("--repeats", cfg.repeats, "Timed repeats (median reported)")
        ->capture_default_str();

    CLI::App* report = app.add_subcommand("report", "Emit trade-off CSVs and a summary");
    add_common_flags(report, cfg, false);

    CLI::App* run_all = app.add_subcommand("run-all", "ingest + 2x2 train/evaluate/profile + report");
    add_common_flags(run_all, cfg, true);
    run_all->add_option("--missing-sentinel", cfg.missing_sentinel,
                        "Numeric tag marking missing cells")
        ->capture_default_str();
    run_all->add_option("--drop-column", cfg.drop_columns,
                        "Columns to drop before modeling (repeatable)")
        ->capture_default_str();
    run_all->add_option("--repeats", cfg.repeats, "Timed repeats (median reported)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ingest->parsed()) {
            edgeboost::cli::cmd_ingest(cfg, std::cout);
        } else if (train->parsed()) {
            edgeboost::cli::cmd_train(cfg, std::cout);
        } else if (evaluate->parsed()) {
            edgeboost::cli::cmd_evaluate(cfg, std::cout);
        } else if (profile->parsed()) {
            edgeboost::cli::cmd_profile(cfg, std::cout);
        } else if (report->parsed()) {
            edgeboost::cli::cmd_report(cfg, std::cout);
        } else if (run_all->parsed()) {
            edgeboost::cli::cmd_run_all(cfg, std::cout);
        }
    } catch (const edgeboost::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const edgeboost::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const edgeboost::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const edgeboost::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const edgeboost::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
