#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nmland {

// A statistic or closed form that is not defined for the given landscape:
// unknown minimum, tied global maxima, wrong alphabet, and the like.
class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive operation would exceed its evaluation budget. Carries the
// required size so callers can print an actionable message.
class BudgetError : public std::runtime_error {
public:
    BudgetError(std::uint64_t required, std::uint64_t budget, const std::string& msg)
        : std::runtime_error(msg), required_(required), budget_(budget) {}

    std::uint64_t required() const { return required_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

}  // namespace nmland
