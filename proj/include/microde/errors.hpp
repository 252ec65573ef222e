#pragma once

#include <stdexcept>
#include <string>

namespace microde {

/// Invalid configuration: bad strategy settings, unknown registry ids,
/// malformed config files. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke a documented precondition (mismatched dimensions,
/// unevaluated fitness where an evaluated one is required, ...).
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// An objective returned a non-finite value. Carries the offending
/// position in the message.
class EvaluationFault : public std::runtime_error {
public:
    explicit EvaluationFault(const std::string& what) : std::runtime_error(what) {}
};

} // namespace microde
