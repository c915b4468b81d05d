#pragma once

#include <stdexcept>
#include <string>

namespace oscsum {

// Error classes map one-to-one onto the CLI exit-code scheme:
// usage/parse = 2, budget = 3, precondition = 4, internal = 5.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& m) : std::runtime_error(m) {}
};

struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& m) : std::runtime_error(m) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace oscsum
