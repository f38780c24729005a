// Error types shared by all modules. The CLI maps them onto exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace napds {

/// Malformed or semantically invalid user input (exit code 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured cap was exceeded (exit code 3).
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
    ResourceLimitError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

    /// Same error, prefixed with the pipeline stage it surfaced in.
    ResourceLimitError tagged(const std::string& stage) const {
        return ResourceLimitError(stage, what());
    }

private:
    std::string stage_;
};

/// A caller-asserted property turned out false (e.g. a grammar that is not
/// very degenerate handed to the spine-type construction).
class PreconditionViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// API misuse: an operation received an argument outside its contract.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A self-check failed. Always a bug, never a user error (exit code 1).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace napds
