#pragma once

#include "cli/run_config.hpp"

#include "asv/data.hpp"
#include "asv/diagnostics.hpp"
#include "asv/sampler.hpp"
#include "asv/simulate.hpp"

#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

namespace asv::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitData = 3,
    kExitSampler = 4,
};

/// Maps an exception thrown by a command to the process exit code.
int exit_code_for(const std::exception& e);

/// Dataset plus everything needed to report on it.
struct LoadedData {
    IngestedData ingested;
    PriceSeries prices;
    std::vector<HolidayCalendar> calendars;  ///< empty unless holiday files were configured
    std::optional<SimulatedData> truth;      ///< set in simulation mode
};

LoadedData load_data(const RunConfig& config);

/// Summaries in table order: all beta rows, then gamma[const], phi, sigma, rho, remaining gamma rows.
std::vector<ParamSummary> summarize_chain(const ChainOutput& chain);

void write_summary_csv(const std::filesystem::path& path, const std::vector<ParamSummary>& rows);
std::vector<ParamSummary> read_summary_csv(const std::filesystem::path& path);

void write_chain_csv(const std::filesystem::path& path, const ChainOutput& chain);

struct VolatilityBand {
    double mean;
    double ci_low;
    double ci_high;
};

/// Posterior mean and 95% band of exp(h_t / 2), computed per draw.
std::vector<VolatilityBand> volatility_bands(const MatrixXd& h_draws);

void cmd_ingest(const RunConfig& config, std::ostream& report);
void cmd_simulate(const RunConfig& config, std::ostream& report);
/// Runs `chains` independent chains (seeds seed, seed+1, ...) concurrently.
void cmd_estimate(const RunConfig& config, int chains, std::ostream& report);

}  // namespace asv::cli
