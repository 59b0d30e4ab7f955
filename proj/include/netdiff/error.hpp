#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netdiff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
    explicit ParseError(const std::string& message) : Error(message) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

/// A numeric argument outside its admissible domain (generator or operation argument).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A model configuration that does not validate against the model's metadata.
/// `field()` names the offending entry, e.g. "model.beta".
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Runtime misuse of a simulation (uninitialized state, running past the topology end).
class SimulationError : public Error {
public:
    using Error::Error;
};

/// The requested model is registered but its dynamics are not provided.
class NotImplementedError : public Error {
public:
    using Error::Error;
};

}  // namespace netdiff
