#pragma once

#include <stdexcept>
#include <string>

namespace sumsets {

/// Two sets (or elements) over different ambient groups were combined.
struct SpecMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A brute-force enumeration would exceed the configured cap.
struct CapExceededError : std::runtime_error {
    CapExceededError(const std::string& what, size_t needed, size_t cap)
        : std::runtime_error(what + " (need " + std::to_string(needed) + ", cap " +
                             std::to_string(cap) + "; raise with --cap or use the matching method)"),
          needed(needed),
          cap(cap) {}
    size_t needed, cap;
};

/// A generated instance would exceed the memory budget.
struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries 1-based line/column when known.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, size_t line = 0, size_t column = 0)
        : std::runtime_error(line ? what + " at line " + std::to_string(line) + ", column " +
                                        std::to_string(column)
                                  : what),
          line(line),
          column(column) {}
    size_t line, column;
};

/// Argument outside an operation's documented domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace sumsets
