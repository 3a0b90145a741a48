#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "holdervar/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"holdervar — variable-exponent parabolic Hölder toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    std::string levels_csv;
    bool plots = false;

    const std::vector<std::string> commands = {"norms",    "kernel-check",  "potential",
                                               "solve",    "schauder",      "mollify-check",
                                               "interp-check", "example"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "key=value config file")->required();
        sub->add_option("--out", out_dir, "output directory (default: out)");
        sub->add_option("--seed", seed, "seed for randomized samples (default: 0)");
        sub->add_option("--levels", levels_csv, "comma-separated nx refinement levels");
        sub->add_flag("--plot", plots, "emit static SVG plots where applicable");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        holdervar::ExperimentConfig ec;
        ec.command = app.get_subcommands().front()->get_name();
        ec.cfg = holdervar::Config::from_file(config_path);
        ec.out_dir = out_dir;
        ec.seed = seed;
        ec.plots = plots;
        if (!levels_csv.empty()) {
            std::string tok;
            for (char c : levels_csv + ",") {
                if (c == ',') {
                    if (!tok.empty()) ec.levels.push_back(std::stoi(tok));
                    tok.clear();
                } else {
                    tok += c;
                }
            }
        }
        const std::string summary = holdervar::run_command(ec);
        std::printf("wrote %s\n", summary.c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
