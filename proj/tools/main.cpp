#include "catalog.hpp"

#include "tslab/errors.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

namespace {

int list_presets() {
    for (const auto& p : tslab::cli::catalog()) {
        std::cout << std::left << std::setw(18) << p.name << std::setw(28) << p.figure << p.summary << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thompson sampling experiment runner"};
    app.require_subcommand(1);

    app.add_subcommand("list", "List available presets");

    auto* describe = app.add_subcommand("describe", "Print a preset's parameters and defaults");
    std::string describe_name;
    describe->add_option("preset", describe_name, "Preset name")->required();

    auto* run = app.add_subcommand("run", "Run a preset and write its curves");
    std::string run_name;
    std::size_t sims = 0;
    std::size_t horizon = 0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::string out = "results";
    bool paper_scale = false;
    std::vector<std::string> agents;
    run->add_option("preset", run_name, "Preset name")->required();
    run->add_option("--sims", sims, "Number of simulations (default: the preset's desk scale)")
        ->check(CLI::PositiveNumber);
    run->add_option("--horizon", horizon, "Periods or episodes per simulation")->check(CLI::PositiveNumber);
    auto* seed_opt = run->add_option("--seed", seed, "Base seed");
    run->add_option("--out", out, "Output directory")->capture_default_str();
    run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    run->add_flag("--paper-scale", paper_scale, "Use the full simulation counts");
    run->add_option("--agents", agents, "Run only these agents")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand("list")) return list_presets();

        const std::string& name = app.got_subcommand("describe") ? describe_name : run_name;
        const auto* preset = tslab::cli::find_preset(name);
        if (!preset) {
            std::cerr << "error: unknown preset '" << name << "' (see `list`)\n";
            return 2;
        }
        if (app.got_subcommand("describe")) {
            std::cout << tslab::cli::describe(*preset);
            return 0;
        }
        const auto settings =
            tslab::cli::resolve(*preset, sims, horizon, seed, seed_opt->count() > 0, paper_scale, threads,
                                  agents);
        tslab::cli::run_to_directory(*preset, settings, paper_scale, out);
        std::cout << "wrote " << out << "/" << preset->name << "\n";
        return 0;
    } catch (const tslab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
