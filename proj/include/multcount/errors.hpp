#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace multcount {

/// Malformed input text (polynomials, points, JSON documents).
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// An enumeration would visit more candidate tuples than the configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition of a mathematical operation does not hold for the given input.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace multcount
