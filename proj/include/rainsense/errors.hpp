#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rainsense {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (non-finite value, out-of-range angle, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Satellite is at or below the local horizon.
class BelowHorizon : public Error {
public:
    using Error::Error;
};

/// Wet-link geometry has no extent (rain height at or below the station, L <= 0).
class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

class EmptyObservations : public Error {
public:
    using Error::Error;
};

/// Two grids compared box-by-box do not share nx, ny, box size and origin.
class GeometryMismatch : public Error {
public:
    using Error::Error;
};

class EmptyMask : public Error {
public:
    using Error::Error;
};

/// Malformed scenario or grid file. Carries the 1-based line and the offending key, if any.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string key, const std::string& message)
        : Error(format(line, key, message)), line_(line), key_(std::move(key)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    static std::string format(std::size_t line, const std::string& key, const std::string& message) {
        std::string out = "line " + std::to_string(line);
        if (!key.empty()) out += " (key '" + key + "')";
        return out + ": " + message;
    }

    std::size_t line_;
    std::string key_;
};

/// A parsed scenario breaks an invariant. The message names the invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// One or more sensors failed while producing observations.
class SensorError : public Error {
public:
    struct Failure {
        std::string sensor_id;
        std::string message;
    };

    explicit SensorError(std::vector<Failure> failures)
        : Error(format(failures)), failures_(std::move(failures)) {}

    const std::vector<Failure>& failures() const noexcept { return failures_; }

private:
    static std::string format(const std::vector<Failure>& failures) {
        std::string out = std::to_string(failures.size()) + " sensor(s) failed:";
        for (const auto& f : failures) out += " [" + f.sensor_id + ": " + f.message + "]";
        return out;
    }

    std::vector<Failure> failures_;
};

}  // namespace rainsense
