// edgeboost-datagen: regenerates the bundled AirQualityUCI-format sample
// CSV. Output is deterministic for a given seed.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "edgeboost/datagen.hpp"
#include "edgeboost/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Deterministic air-quality sample data generator"};

    edgeboost::SynthSpec spec;
    std::string out_path = "data/AirQualityUCI.csv";
    app.add_option("--out", out_path, "Output CSV path")->capture_default_str();
    app.add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
    app.add_option("--rows", spec.n_rows, "Number of data rows")->capture_default_str();
    app.add_option("--blank-rows", spec.trailing_blank_rows,
                   "Trailing empty rows, as in the original export")
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
        edgeboost::write_airquality_csv(out_path, spec);
    } catch (const edgeboost::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cout << "wrote " << spec.n_rows << " data rows to " << out_path << "\n";
    return 0;
}
