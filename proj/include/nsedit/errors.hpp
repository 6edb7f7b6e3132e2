#ifndef NSEDIT_ERRORS_HPP
#define NSEDIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nsedit {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Incompatible or invalid matrix dimensions.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// A matrix required to be symmetric deviates beyond tolerance.
class AsymmetryError : public Error {
public:
    AsymmetryError(const std::string& msg, double deviation)
        : Error(msg), deviation_(deviation) {}
    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

/// A linear system is numerically singular. Carries the offending pivot
/// magnitude so callers can report how close to singular the system was.
class SingularityError : public Error {
public:
    SingularityError(const std::string& msg, double pivot_magnitude)
        : Error(msg), pivot_(pivot_magnitude) {}
    double pivot_magnitude() const noexcept { return pivot_; }

private:
    double pivot_;
};

/// Invalid configuration value. Carries the offending field name.
class ConfigError : public Error {
public:
    ConfigError(const std::string& field, const std::string& msg)
        : Error("config field '" + field + "': " + msg), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Non-finite value encountered where finiteness is required.
class NonFiniteError : public Error {
public:
    explicit NonFiniteError(const std::string& msg) : Error(msg) {}
};

/// Iterative minimization produced a non-finite objective.
class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

} // namespace nsedit

#endif
