#pragma once

#include <stdexcept>
#include <string>

namespace asv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (priors, MCMC settings, run files).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Invalid input data: bad prices, date gaps, unreadable files.
class DataError : public Error {
public:
    using Error::Error;
};

/// A log density evaluated to a non-finite value. `term()` names the piece that diverged.
class DensityError : public Error {
public:
    DensityError(std::string term, const std::string& what)
        : Error(what), term_(std::move(term)) {}

    const std::string& term() const noexcept { return term_; }

private:
    std::string term_;
};

/// Failure inside the MCMC driver (initialisation or mid-chain invariant violation).
class SamplerError : public Error {
public:
    using Error::Error;
};

}  // namespace asv
