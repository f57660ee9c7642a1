#pragma once

#include <stdexcept>
#include <string>

namespace outage {

// Base of every error raised by the library. The CLI maps each subclass to a
// distinct exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed configuration text. The message names the offending line.
class ConfigError : public Error {
public:
    ConfigError(int line, const std::string& what)
        : Error("config line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

// A value violates a domain invariant.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Numerical or physical impossibility (unreachable temperature, infeasible
// outage count, coarse time step, ...).
class NumericError : public Error {
public:
    using Error::Error;
};

// Target temperature lies on the wrong side of the steady state.
class UnreachableError : public NumericError {
public:
    UnreachableError(const std::string& what, double steady_state)
        : NumericError(what), steady_state_(steady_state) {}

    double steady_state() const noexcept { return steady_state_; }

private:
    double steady_state_;
};

class IoError : public Error {
public:
    IoError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace outage
