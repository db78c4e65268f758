#pragma once

#include <stdexcept>
#include <string>

namespace finsec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (s <= 1, mu not in [0,1], p <= 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A closed curve passes within tolerance of the origin, so its winding number is undefined.
class CurveThroughOrigin : public Error {
public:
    CurveThroughOrigin(double distance, const std::string& where)
        : Error("curve passes within " + std::to_string(distance) + " of the origin (" + where + ")"),
          distance_(distance) {}
    double distance() const noexcept { return distance_; }

private:
    double distance_;
};

class UnknownGenerator : public Error {
public:
    explicit UnknownGenerator(const std::string& id)
        : Error("unknown slowly oscillating generator '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

/// A fiber assignment is missing a generator, or assigns a value outside its cluster set.
class FiberError : public Error {
public:
    using Error::Error;
};

class MissingAssignment : public FiberError {
public:
    explicit MissingAssignment(const std::string& id)
        : FiberError("fiber assigns no value to generator '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class DiscretizationError : public Error {
public:
    using Error::Error;
};

/// Configuration/schema error; `path()` is a JSON-pointer-like location of the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& message)
        : Error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace finsec
