#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace netsync {

/// Root of every exception the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument to a numeric model (negative bandwidth, zero speed...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Bad configuration value (unknown medium, non-positive slew rate...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A router on an explicit path is inactive; its delay is unbounded.
class PathBlocked : public Error {
public:
    explicit PathBlocked(std::string router_id)
        : Error("path blocked at inactive router '" + router_id + "'"), router_(std::move(router_id)) {}

    const std::string& router_id() const noexcept { return router_; }

private:
    std::string router_;
};

/// No path of active routers connects source and destination.
class NoRoute : public Error {
public:
    NoRoute(std::string source, std::string destination, std::string leg = {})
        : Error(describe(source, destination, leg)),
          source_(std::move(source)),
          destination_(std::move(destination)),
          leg_(std::move(leg)) {}

    const std::string& source() const noexcept { return source_; }
    const std::string& destination() const noexcept { return destination_; }
    // "forward", "backward" or empty
    const std::string& leg() const noexcept { return leg_; }

private:
    static std::string describe(const std::string& s, const std::string& d, const std::string& leg) {
        std::string msg = "no route from '" + s + "' to '" + d + "'";
        if (!leg.empty()) msg += " (" + leg + " leg)";
        return msg;
    }

    std::string source_;
    std::string destination_;
    std::string leg_;
};

/// Event scheduled before the current simulation time.
class SchedulingError : public Error {
public:
    using Error::Error;
};

/// Scenario text is not well-formed. Carries a 1-based line and column.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Scenario is well-formed but fails a cross-reference or invariant check.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace netsync
