#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zetadiv {

/// Argument outside the mathematical domain of an operation (e.g. s <= 1).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A configured resource cap (term count, Bernoulli index, ...) was exceeded.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative solver exhausted its bracket or iteration budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sample admits no maximum-likelihood solution (e.g. every observation is 1).
struct DegenerateSampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data; carries the 1-based line number of the offence.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line_no)
        : std::runtime_error(msg), line(line_no) {}
    std::size_t line;
};

}  // namespace zetadiv
