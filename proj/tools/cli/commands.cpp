#include "cli/commands.hpp"

#include "asv/csv.hpp"
#include "asv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace asv::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path.string());
    return out;
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw ConfigError("output directory not writable: " + dir.string());
    }
}

std::vector<HolidayCalendar> load_calendars(const RunConfig& config) {
    std::vector<HolidayCalendar> out;
    for (const auto& [country, file] : config.holidays) out.push_back(read_holiday_file(file, country));
    return out;
}

VectorXd padded(const std::vector<double>& values, Index k, const char* what) {
    if (static_cast<Index>(values.size()) > k) {
        throw ConfigError(std::string("[simulation] ") + what + " has " + std::to_string(values.size()) +
                          " entries but the design has " + std::to_string(k) + " columns");
    }
    VectorXd v = VectorXd::Zero(k);
    for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Index>(i)) = values[i];
    return v;
}

DesignMatrix make_design(const RunConfig& config, std::span<const Date> dates,
                         std::span<const HolidayCalendar> calendars) {
    if (config.design == DesignKind::Constant) return build_constant_design(dates);
    return build_design_matrix(dates, calendars, DesignOptions{config.weekend_rule});
}

std::string fixed(double v, int precision = 3) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

void print_stats_row(std::ostream& os, const std::string& name, std::span<const double> values) {
    char buf[256];
    if (values.size() < 2) {
        std::snprintf(buf, sizeof buf, "%-32s %6zu\n", name.c_str(), values.size());
        os << buf;
        return;
    }
    const DescriptiveStats s = descriptive_stats(values);
    std::snprintf(buf, sizeof buf, "%-32s %6zu %8s %8s %9s %9s %8s %8s\n", name.c_str(), s.obs, fixed(s.mean).c_str(),
                  fixed(s.sd).c_str(), fixed(s.min).c_str(), fixed(s.max).c_str(), fixed(s.skew).c_str(),
                  fixed(s.kurt).c_str());
    os << buf;
}

void write_stats_row(std::ostream& os, const std::string& name, std::span<const double> values) {
    using csv::format_double;
    if (values.size() < 2) {
        os << name << ',' << values.size() << ",nan,nan,nan,nan,nan,nan\n";
        return;
    }
    const DescriptiveStats s = descriptive_stats(values);
    os << name << ',' << s.obs << ',' << format_double(s.mean) << ',' << format_double(s.sd) << ','
       << format_double(s.min) << ',' << format_double(s.max) << ',' << format_double(s.skew) << ','
       << format_double(s.kurt) << '\n';
}

void print_summary(std::ostream& os, const std::vector<ParamSummary>& rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %9s %8s %22s %7s %9s\n", "Parameter", "Mean", "SD", "95%CI", "CD", "IF");
    os << buf;
    for (const auto& r : rows) {
        const std::string ci = "[" + fixed(r.ci_low) + ", " + fixed(r.ci_high) + "]";
        std::snprintf(buf, sizeof buf, "%-16s %8s%c %8s %22s %7s %9s\n", r.name.c_str(), fixed(r.mean).c_str(),
                      r.excludes_zero() ? '*' : ' ', fixed(r.sd).c_str(), ci.c_str(), fixed(r.cd).c_str(),
                      fixed(r.if_).c_str());
        os << buf;
    }
}

void write_estimate_outputs(const fs::path& dir, const ChainOutput& chain, const std::vector<Date>& dates,
                            std::vector<ParamSummary>& summary_out) {
    ensure_directory(dir);
    write_chain_csv(dir / "chain.csv", chain);
    summary_out = summarize_chain(chain);
    write_summary_csv(dir / "summary.csv", summary_out);

    auto acc = open_output(dir / "acceptance.csv");
    acc << "quantity,rate\n";
    acc << "phi," << csv::format_double(chain.acceptance.phi) << '\n';
    acc << "rho," << csv::format_double(chain.acceptance.rho) << '\n';
    acc << "sigma2," << csv::format_double(chain.acceptance.sigma2) << '\n';
    acc << "h_mean," << csv::format_double(chain.acceptance.h_mean()) << '\n';

    if (chain.h_draws.size() > 0) {
        const auto bands = volatility_bands(chain.h_draws);
        auto vol = open_output(dir / "volatility.csv");
        vol << "date,mean,ci_low,ci_high\n";
        for (std::size_t t = 0; t < bands.size(); ++t) {
            vol << format_date(dates[t]) << ',' << csv::format_double(bands[t].mean) << ','
                << csv::format_double(bands[t].ci_low) << ',' << csv::format_double(bands[t].ci_high) << '\n';
        }
    }
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
    if (dynamic_cast<const DataError*>(&e)) return kExitData;
    if (dynamic_cast<const SamplerError*>(&e) || dynamic_cast<const DensityError*>(&e)) return kExitSampler;
    return kExitFailure;
}

LoadedData load_data(const RunConfig& config) {
    config.validate();
    LoadedData out;
    out.calendars = load_calendars(config);
    if (config.prices) {
        out.prices = read_price_csv(*config.prices);
        out.ingested = config.design == DesignKind::Constant
                           ? assemble_constant_dataset(out.prices)
                           : assemble_dataset(out.prices, out.calendars, DesignOptions{config.weekend_rule});
        return out;
    }

    const SimulationBlock& sim = *config.simulation;
    std::vector<Date> dates;
    dates.reserve(static_cast<std::size_t>(sim.num_obs + 1));
    for (Index t = 1; t <= sim.num_obs + 1; ++t) dates.push_back(sim.start_date + std::chrono::days{t});
    const DesignMatrix design = make_design(config, dates, out.calendars);
    const Index k = design.values.cols();

    SimSpec spec;
    spec.truth.beta = padded(sim.beta, k, "beta");
    spec.truth.gamma = padded(sim.gamma, k, "gamma");
    spec.truth.phi = sim.phi;
    spec.truth.rho = sim.rho;
    spec.truth.sigma2 = sim.sigma * sim.sigma;
    spec.design = design.values;
    spec.seed = sim.seed;
    SimulatedData simulated = simulate(spec);

    out.prices = prices_from_returns(std::span<const double>(simulated.returns.data(), simulated.returns.size()),
                                     sim.start_date, sim.initial_price);
    out.ingested.dataset = to_dataset(simulated, design.values, design.labels);
    out.ingested.dates = dates;
    out.ingested.dataset.validate();
    out.truth = std::move(simulated);
    return out;
}

std::vector<ParamSummary> summarize_chain(const ChainOutput& chain) {
    const Index k = chain.num_covariates();
    const Index n = chain.draws.rows();
    const auto column = [&](Index c) {
        const VectorXd v = chain.draws.col(c);
        return std::vector<double>(v.data(), v.data() + n);
    };
    const auto row = [&](Index c) { return summarize(column(c), chain.column_names[static_cast<std::size_t>(c)]); };

    std::vector<ParamSummary> rows;
    for (Index j = 0; j < k; ++j) rows.push_back(row(j));
    rows.push_back(row(k));
    rows.push_back(row(chain.phi_column()));
    std::vector<double> sigma = column(chain.sigma2_column());
    for (double& s : sigma) s = std::sqrt(s);
    rows.push_back(summarize(sigma, "sigma"));
    rows.push_back(row(chain.rho_column()));
    for (Index j = 1; j < k; ++j) rows.push_back(row(k + j));
    return rows;
}

void write_summary_csv(const fs::path& path, const std::vector<ParamSummary>& rows) {
    using csv::format_double;
    auto out = open_output(path);
    out << "name,mean,sd,ci_low,ci_high,cd,if,excludes_zero\n";
    for (const auto& r : rows) {
        out << r.name << ',' << format_double(r.mean) << ',' << format_double(r.sd) << ','
            << format_double(r.ci_low) << ',' << format_double(r.ci_high) << ',' << format_double(r.cd) << ','
            << format_double(r.if_) << ',' << (r.excludes_zero() ? 1 : 0) << '\n';
    }
}

std::vector<ParamSummary> read_summary_csv(const fs::path& path) {
    const auto lines = csv::read_lines(path);
    if (lines.empty() || lines.front().text != "name,mean,sd,ci_low,ci_high,cd,if,excludes_zero") {
        throw DataError(path.string() + ": not a summary file");
    }
    std::vector<ParamSummary> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = path.string() + ":" + std::to_string(lines[i].number);
        const auto f = csv::split_line(lines[i].text);
        if (f.size() != 8) throw DataError(where + ": expected 8 fields");
        ParamSummary r;
        r.name = f[0];
        r.mean = csv::parse_double(f[1], where);
        r.sd = csv::parse_double(f[2], where);
        r.ci_low = csv::parse_double(f[3], where);
        r.ci_high = csv::parse_double(f[4], where);
        r.cd = csv::parse_double(f[5], where);
        r.if_ = csv::parse_double(f[6], where);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_chain_csv(const fs::path& path, const ChainOutput& chain) {
    auto out = open_output(path);
    out << "draw";
    for (const auto& name : chain.column_names) out << ',' << name;
    out << '\n';
    for (Index i = 0; i < chain.draws.rows(); ++i) {
        out << i;
        for (Index c = 0; c < chain.draws.cols(); ++c) out << ',' << csv::format_double(chain.draws(i, c));
        out << '\n';
    }
}

std::vector<VolatilityBand> volatility_bands(const MatrixXd& h_draws) {
    std::vector<VolatilityBand> out;
    out.reserve(static_cast<std::size_t>(h_draws.cols()));
    std::vector<double> vol(static_cast<std::size_t>(h_draws.rows()));
    for (Index t = 0; t < h_draws.cols(); ++t) {
        double sum = 0.0;
        for (Index i = 0; i < h_draws.rows(); ++i) {
            vol[static_cast<std::size_t>(i)] = std::exp(0.5 * h_draws(i, t));
            sum += vol[static_cast<std::size_t>(i)];
        }
        std::sort(vol.begin(), vol.end());
        out.push_back({sum / static_cast<double>(vol.size()), sorted_quantile(vol, 0.025), sorted_quantile(vol, 0.975)});
    }
    return out;
}

void cmd_ingest(const RunConfig& config, std::ostream& report) {
    const LoadedData data = load_data(config);
    ensure_directory(config.output_dir);
    const auto& ds = data.ingested.dataset;
    const auto& dates = data.ingested.dates;

    DesignMatrix design{ds.design, ds.labels, dates};
    write_design_csv(config.output_dir / "design.csv", design);

    const Index T = ds.num_obs();
    std::vector<double> y(ds.returns.data(), ds.returns.data() + T);
    const std::span<const Date> return_dates(dates.data(), static_cast<std::size_t>(T));
    {
        auto out = open_output(config.output_dir / "returns.csv");
        out << "date,return\n";
        for (Index t = 0; t < T; ++t) {
            out << format_date(dates[static_cast<std::size_t>(t)]) << ',' << csv::format_double(y[static_cast<std::size_t>(t)])
                << '\n';
        }
    }

    auto stats = open_output(config.output_dir / "stats.csv");
    stats << "group,obs,mean,sd,min,max,skew,kurt\n";
    char header[256];
    std::snprintf(header, sizeof header, "%-32s %6s %8s %8s %9s %9s %8s %8s\n", "", "Obs", "Mean", "SD", "Min", "Max",
                  "Skew", "Kurt");
    report << header;
    write_stats_row(stats, "All", y);
    print_stats_row(report, "All", y);
    for (const auto& g : slice_by_weekday(y, return_dates)) {
        write_stats_row(stats, g.name, g.values);
        print_stats_row(report, g.name, g.values);
    }
    if (data.calendars.size() == 4) {
        report << '\n';
        for (const auto& g : slice_by_holiday_class(y, return_dates, data.calendars, DesignOptions{config.weekend_rule})) {
            write_stats_row(stats, g.name, g.values);
            print_stats_row(report, g.name, g.values);
        }
    }
}

void cmd_simulate(const RunConfig& config, std::ostream& report) {
    if (!config.simulation) throw ConfigError("simulate needs a [simulation] block");
    const LoadedData data = load_data(config);
    const fs::path& dir = config.output_dir;
    ensure_directory(dir);

    write_price_csv(dir / "prices.csv", data.prices);
    const auto& ds = data.ingested.dataset;
    const auto& dates = data.ingested.dates;
    {
        auto out = open_output(dir / "returns.csv");
        out << "date,return\n";
        for (Index t = 0; t < ds.num_obs(); ++t) {
            out << format_date(dates[static_cast<std::size_t>(t)]) << ',' << csv::format_double(ds.returns(t)) << '\n';
        }
    }
    {
        auto out = open_output(dir / "latent.csv");
        out << "date,h\n";
        const VectorXd& h = data.truth->path.h;
        for (Index t = 0; t < h.size(); ++t) {
            out << format_date(dates[static_cast<std::size_t>(t)]) << ',' << csv::format_double(h(t)) << '\n';
        }
    }
    write_design_csv(dir / "design.csv", DesignMatrix{ds.design, ds.labels, dates});

    RunConfig next = config;
    next.simulation.reset();
    next.prices = dir / "prices.csv";
    next.output_dir = dir / "estimate";
    save_run_config(dir / "estimate.ini", next);

    report << "simulated " << ds.num_obs() << " returns with " << ds.num_covariates() << " covariates into "
           << dir.string() << '\n';
}

void cmd_estimate(const RunConfig& config, int chains, std::ostream& report) {
    if (chains < 1) throw ConfigError("--chains must be at least 1");
    const LoadedData data = load_data(config);
    const Dataset& ds = data.ingested.dataset;
    const PriorConfig prior = config.prior.build(ds.num_covariates());

    std::vector<ChainOutput> outputs(static_cast<std::size_t>(chains));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chains));
    {
        std::vector<std::jthread> workers;
        for (int c = 0; c < chains; ++c) {
            workers.emplace_back([&, c] {
                try {
                    McmcConfig mc = config.mcmc;
                    mc.seed = config.mcmc.seed + static_cast<std::uint64_t>(c);
                    outputs[static_cast<std::size_t>(c)] = run_chain(ds, prior, mc);
                } catch (...) {
                    errors[static_cast<std::size_t>(c)] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    for (int c = 0; c < chains; ++c) {
        const fs::path dir = chains == 1 ? config.output_dir : config.output_dir / ("chain_" + std::to_string(c));
        std::vector<ParamSummary> summary;
        const auto& chain = outputs[static_cast<std::size_t>(c)];
        write_estimate_outputs(dir, chain, data.ingested.dates, summary);
        report << "chain " << c << " (seed " << chain.seed_used << "): " << chain.draws.rows()
               << " stored draws -> " << dir.string() << '\n';
        print_summary(report, summary);
    }
}

}  // namespace asv::cli
