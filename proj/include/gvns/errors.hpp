#pragma once

#include <stdexcept>
#include <string>

namespace gvns {

/// Base of every error the library raises. `category()` is the short
/// machine-readable tag the CLI reports on failure.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* category() const noexcept { return "error"; }
};

/// Precondition or invariant violated by caller-supplied data.
class ValidationError : public Error {
public:
    using Error::Error;
    const char* category() const noexcept override { return "validation"; }
};

/// Exponential Gevrey weight left the double range.
class OverflowError : public Error {
public:
    OverflowError(const std::string& what, double shell)
        : Error(what), shell_(shell) {}
    double shell() const noexcept { return shell_; }
    const char* category() const noexcept override { return "overflow"; }

private:
    double shell_;
};

/// Non-finite values appeared during time stepping.
class BlowupError : public Error {
public:
    BlowupError(const std::string& what, double last_valid_time)
        : Error(what), last_valid_time_(last_valid_time) {}
    double last_valid_time() const noexcept { return last_valid_time_; }
    const char* category() const noexcept override { return "blowup"; }

private:
    double last_valid_time_;
};

class CheckpointError : public Error {
public:
    enum class Kind { bad_magic, bad_version, truncated, grid_mismatch, io };

    CheckpointError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }
    const char* category() const noexcept override { return "checkpoint"; }

private:
    Kind kind_;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string key, int line)
        : Error(what), key_(std::move(key)), line_(line) {}
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }
    const char* category() const noexcept override { return "config"; }

private:
    std::string key_;
    int line_;
};

}  // namespace gvns
