#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qbisect {

/// Precondition on a geometric or algebraic input was violated
/// (zero divisor, point outside the ball, non-similar pair, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by elimination routines when a matrix or frame is rank deficient.
class RankError : public std::runtime_error {
public:
    RankError(const std::string& what, std::size_t rank)
        : std::runtime_error(what + " (rank " + std::to_string(rank) + ")"), rank_(rank) {}

    std::size_t rank() const noexcept { return rank_; }

private:
    std::size_t rank_;
};

/// Invalid scenario / CLI configuration. `path` names the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& path, const std::string& what)
        : std::invalid_argument(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace qbisect
