#include "cli/run_config.hpp"

#include "asv/csv.hpp"
#include "asv/diagnostics.hpp"
#include "asv/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <set>

namespace asv::cli {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"data", {"prices"}},
        {"holidays", {"JP", "CN", "DE", "US"}},
        {"model", {"design", "weekend_rule"}},
        {"simulation",
         {"num_obs", "start_date", "seed", "initial_price", "phi", "rho", "sigma", "beta", "gamma"}},
        {"prior",
         {"phi_a", "phi_b", "rho_a", "rho_b", "sigma_nu", "sigma_lambda", "beta_mean", "beta_var", "gamma_mean",
          "gamma_var"}},
        {"mcmc",
         {"iterations", "burn_in", "thin", "seed", "target_acceptance", "adapt_during_burn_in_only", "fix_rho",
          "store_latent"}},
        {"output", {"dir"}},
    };
    return keys;
}

class Section {
public:
    Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

    bool present() const { return tree_ != nullptr; }

    std::optional<std::string> raw(const std::string& key) const {
        if (!tree_) return std::nullopt;
        auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
        if (!v) return std::nullopt;
        return std::string(csv::trim(*v));
    }

    double number(const std::string& key, double fallback) const {
        const auto v = raw(key);
        if (!v) return fallback;
        try {
            return csv::parse_double(*v);
        } catch (const DataError&) {
            throw ConfigError(where(key) + ": expected a number, got '" + *v + "'");
        }
    }

    template <typename Int>
    Int integer(const std::string& key, Int fallback) const {
        const auto v = raw(key);
        if (!v) return fallback;
        Int out{};
        const auto res = std::from_chars(v->data(), v->data() + v->size(), out);
        if (res.ec != std::errc() || res.ptr != v->data() + v->size()) {
            throw ConfigError(where(key) + ": expected an integer, got '" + *v + "'");
        }
        return out;
    }

    bool boolean(const std::string& key, bool fallback) const {
        const auto v = raw(key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1" || *v == "yes") return true;
        if (*v == "false" || *v == "0" || *v == "no") return false;
        throw ConfigError(where(key) + ": expected true or false, got '" + *v + "'");
    }

    std::vector<double> list(const std::string& key) const {
        const auto v = raw(key);
        std::vector<double> out;
        if (!v || v->empty()) return out;
        for (const auto& field : csv::split_line(*v)) {
            try {
                out.push_back(csv::parse_double(field));
            } catch (const DataError&) {
                throw ConfigError(where(key) + ": bad list entry '" + field + "'");
            }
        }
        return out;
    }

    std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

private:
    const pt::ptree* tree_;
    std::string name_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
    std::filesystem::path p(value);
    return p.is_absolute() ? p : base / p;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += csv::format_double(values[i]);
    }
    return out;
}

}  // namespace

PriorConfig PriorOverrides::build(Index k) const {
    return PriorConfig(GaussianPrior(VectorXd::Constant(k, beta_mean), beta_var * MatrixXd::Identity(k, k)),
                       GaussianPrior(VectorXd::Constant(k, gamma_mean), gamma_var * MatrixXd::Identity(k, k)),
                       shapes);
}

void RunConfig::validate() const {
    if (prices.has_value() == simulation.has_value()) {
        throw ConfigError("configure exactly one of [data] prices or a [simulation] block");
    }
    if (design == DesignKind::Calendar) {
        for (Country c : kCountries) {
            if (!holidays.contains(c)) {
                throw ConfigError("calendar design needs [holidays] " + std::string(country_code(c)));
            }
        }
    }
    if (simulation) {
        const auto& s = *simulation;
        if (s.num_obs < 3) throw ConfigError("[simulation] num_obs must be at least 3");
        if (!(std::abs(s.phi) < 1.0)) throw ConfigError("[simulation] phi must lie in (-1, 1)");
        if (!(std::abs(s.rho) < 1.0)) throw ConfigError("[simulation] rho must lie in (-1, 1)");
        if (!(s.sigma > 0.0)) throw ConfigError("[simulation] sigma must be positive");
        if (!(s.initial_price > 0.0)) throw ConfigError("[simulation] initial_price must be positive");
    }
    if (!(prior.beta_var > 0.0) || !(prior.gamma_var > 0.0)) {
        throw ConfigError("[prior] variances must be positive");
    }
    mcmc.validate(static_cast<std::int64_t>(kMinDiagnosticLength));
}

RunConfig load_run_config(const std::filesystem::path& path) {
    pt::ptree tree;
    try {
        pt::ini_parser::read_ini(path.string(), tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(e.what());
    }
    for (const auto& [section, body] : tree) {
        const auto known = known_keys().find(section);
        if (known == known_keys().end() || !body.data().empty()) {
            throw ConfigError(path.string() + ": unknown section or top-level key '" + section + "'");
        }
        for (const auto& kv : body) {
            if (!known->second.contains(kv.first)) {
                throw ConfigError(path.string() + ": unknown key '" + kv.first + "' in [" + section + "]");
            }
        }
    }
    const auto section = [&](const std::string& name) {
        const auto child = tree.get_child_optional(name);
        return Section(child ? &*child : nullptr, name);
    };
    const std::filesystem::path base = path.parent_path();

    RunConfig cfg;
    if (const auto prices = section("data").raw("prices")) cfg.prices = resolve(base, *prices);
    const Section holidays = section("holidays");
    for (Country c : kCountries) {
        if (const auto file = holidays.raw(std::string(country_code(c)))) cfg.holidays[c] = resolve(base, *file);
    }

    const Section model = section("model");
    const std::string design = model.raw("design").value_or("calendar");
    if (design == "calendar") {
        cfg.design = DesignKind::Calendar;
    } else if (design == "constant") {
        cfg.design = DesignKind::Constant;
    } else {
        throw ConfigError("[model] design must be 'calendar' or 'constant', got '" + design + "'");
    }
    cfg.weekend_rule = model.boolean("weekend_rule", true);

    if (const Section sim = section("simulation"); sim.present()) {
        SimulationBlock s;
        s.num_obs = sim.integer<Index>("num_obs", s.num_obs);
        if (const auto start = sim.raw("start_date")) {
            try {
                s.start_date = parse_date(*start);
            } catch (const DataError& e) {
                throw ConfigError(sim.where("start_date") + ": " + e.what());
            }
        }
        s.seed = sim.integer<std::uint64_t>("seed", s.seed);
        s.initial_price = sim.number("initial_price", s.initial_price);
        s.phi = sim.number("phi", s.phi);
        s.rho = sim.number("rho", s.rho);
        s.sigma = sim.number("sigma", s.sigma);
        s.beta = sim.list("beta");
        s.gamma = sim.list("gamma");
        cfg.simulation = s;
    }

    const Section prior = section("prior");
    auto& sh = cfg.prior.shapes;
    sh.phi_a = prior.number("phi_a", sh.phi_a);
    sh.phi_b = prior.number("phi_b", sh.phi_b);
    sh.rho_a = prior.number("rho_a", sh.rho_a);
    sh.rho_b = prior.number("rho_b", sh.rho_b);
    sh.sigma_nu = prior.number("sigma_nu", sh.sigma_nu);
    sh.sigma_lambda = prior.number("sigma_lambda", sh.sigma_lambda);
    cfg.prior.beta_mean = prior.number("beta_mean", cfg.prior.beta_mean);
    cfg.prior.beta_var = prior.number("beta_var", cfg.prior.beta_var);
    cfg.prior.gamma_mean = prior.number("gamma_mean", cfg.prior.gamma_mean);
    cfg.prior.gamma_var = prior.number("gamma_var", cfg.prior.gamma_var);

    const Section mcmc = section("mcmc");
    auto& m = cfg.mcmc;
    m.n_iterations = mcmc.integer<std::int64_t>("iterations", m.n_iterations);
    m.burn_in = mcmc.integer<std::int64_t>("burn_in", m.burn_in);
    m.thin = mcmc.integer<std::int64_t>("thin", m.thin);
    m.seed = mcmc.integer<std::uint64_t>("seed", m.seed);
    m.target_acceptance = mcmc.number("target_acceptance", m.target_acceptance);
    m.adapt_during_burn_in_only = mcmc.boolean("adapt_during_burn_in_only", m.adapt_during_burn_in_only);
    m.store_latent = mcmc.boolean("store_latent", m.store_latent);
    if (mcmc.raw("fix_rho")) m.fixed_rho = mcmc.number("fix_rho", 0.0);

    if (const auto dir = section("output").raw("dir")) cfg.output_dir = resolve(base, *dir);
    cfg.validate();
    return cfg;
}

void save_run_config(const std::filesystem::path& path, const RunConfig& config) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path.string());
    const auto abs = [](const std::filesystem::path& p) { return std::filesystem::absolute(p).string(); };
    if (config.prices) out << "[data]\nprices = " << abs(*config.prices) << "\n\n";
    if (!config.holidays.empty()) {
        out << "[holidays]\n";
        for (const auto& [country, file] : config.holidays) out << country_code(country) << " = " << abs(file) << '\n';
        out << '\n';
    }
    out << "[model]\ndesign = " << (config.design == DesignKind::Calendar ? "calendar" : "constant")
        << "\nweekend_rule = " << (config.weekend_rule ? "true" : "false") << "\n\n";
    if (config.simulation) {
        const auto& s = *config.simulation;
        out << "[simulation]\nnum_obs = " << s.num_obs << "\nstart_date = " << format_date(s.start_date)
            << "\nseed = " << s.seed << "\ninitial_price = " << csv::format_double(s.initial_price)
            << "\nphi = " << csv::format_double(s.phi) << "\nrho = " << csv::format_double(s.rho)
            << "\nsigma = " << csv::format_double(s.sigma) << "\nbeta = " << join(s.beta)
            << "\ngamma = " << join(s.gamma) << "\n\n";
    }
    const auto& p = config.prior;
    out << "[prior]\nphi_a = " << csv::format_double(p.shapes.phi_a)
        << "\nphi_b = " << csv::format_double(p.shapes.phi_b) << "\nrho_a = " << csv::format_double(p.shapes.rho_a)
        << "\nrho_b = " << csv::format_double(p.shapes.rho_b)
        << "\nsigma_nu = " << csv::format_double(p.shapes.sigma_nu)
        << "\nsigma_lambda = " << csv::format_double(p.shapes.sigma_lambda)
        << "\nbeta_mean = " << csv::format_double(p.beta_mean) << "\nbeta_var = " << csv::format_double(p.beta_var)
        << "\ngamma_mean = " << csv::format_double(p.gamma_mean)
        << "\ngamma_var = " << csv::format_double(p.gamma_var) << "\n\n";
    const auto& m = config.mcmc;
    out << "[mcmc]\niterations = " << m.n_iterations << "\nburn_in = " << m.burn_in << "\nthin = " << m.thin
        << "\nseed = " << m.seed << "\ntarget_acceptance = " << csv::format_double(m.target_acceptance)
        << "\nadapt_during_burn_in_only = " << (m.adapt_during_burn_in_only ? "true" : "false")
        << "\nstore_latent = " << (m.store_latent ? "true" : "false") << '\n';
    if (m.fixed_rho) out << "fix_rho = " << csv::format_double(*m.fixed_rho) << '\n';
    out << "\n[output]\ndir = " << abs(config.output_dir) << '\n';
}

}  // namespace asv::cli
