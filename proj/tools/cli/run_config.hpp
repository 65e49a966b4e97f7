#pragma once

#include "asv/calendar.hpp"
#include "asv/data.hpp"
#include "asv/model.hpp"
#include "asv/sampler.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace asv::cli {

enum class DesignKind { Calendar, Constant };

struct SimulationBlock {
    Index num_obs = 1000;
    Date start_date = parse_date("2013-01-01");
    std::uint64_t seed = 1;
    double initial_price = 100.0;
    double phi = 0.95;
    double rho = -0.4;
    double sigma = 0.3;
    std::vector<double> beta;   ///< padded with zeros to k
    std::vector<double> gamma;  ///< padded with zeros to k
};

/// Prior overrides; unset fields keep the defaults.
struct PriorOverrides {
    PriorConfig::Shapes shapes;
    double beta_mean = 0.0;
    double beta_var = 100.0;
    double gamma_mean = 0.0;
    double gamma_var = 100.0;

    PriorConfig build(Index k) const;
};

/**
 * A batch run, read from an INI-style file with sections
 * [data], [holidays], [model], [simulation], [prior], [mcmc] and [output].
 * Relative paths are resolved against the directory of the config file.
 */
struct RunConfig {
    std::optional<std::filesystem::path> prices;
    std::map<Country, std::filesystem::path> holidays;
    std::optional<SimulationBlock> simulation;
    DesignKind design = DesignKind::Calendar;
    bool weekend_rule = true;
    PriorOverrides prior;
    McmcConfig mcmc;
    std::filesystem::path output_dir = "asv_out";

    /// Throws ConfigError unless exactly one data source is configured and
    /// the calendar design has all four holiday files.
    void validate() const;
};

RunConfig load_run_config(const std::filesystem::path& path);

/// Writes `config` back out in the same format (absolute paths).
void save_run_config(const std::filesystem::path& path, const RunConfig& config);

}  // namespace asv::cli
