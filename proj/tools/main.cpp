#include "cli/commands.hpp"
#include "cli/run_config.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace asv::cli;

    CLI::App app{"Asymmetric stochastic volatility with calendar effects"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    int chains = 1;
    std::string out_dir;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Run configuration file")->required();
        cmd->add_option("--seed", seed, "Override [mcmc] seed");
        cmd->add_option("--out", out_dir, "Override [output] dir");
    };
    CLI::App* ingest = app.add_subcommand("ingest", "Read prices and holidays; write returns, design and statistics");
    CLI::App* estimate = app.add_subcommand("estimate", "Run the MCMC sampler and write draws and summaries");
    CLI::App* sim = app.add_subcommand("simulate", "Generate a synthetic dataset");
    for (CLI::App* cmd : {ingest, estimate, sim}) add_common(cmd);
    estimate->add_option("--chains", chains, "Number of independent chains (seeds seed, seed+1, ...)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        RunConfig config = load_run_config(config_path);
        if (seed) config.mcmc.seed = *seed;
        if (!out_dir.empty()) config.output_dir = out_dir;

        if (ingest->parsed()) {
            cmd_ingest(config, std::cout);
        } else if (estimate->parsed()) {
            cmd_estimate(config, chains, std::cout);
        } else {
            cmd_simulate(config, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "asv: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}
