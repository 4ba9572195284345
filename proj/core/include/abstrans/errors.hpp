#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace abstrans {

enum class ErrorKind {
    AlphabetMismatch,
    QuotientByBottom,
    SymbolNotInAlphabet,
    BottomInput,
    NonPositiveInput,
    UnknownState,
    UnknownTransition,
    ReservedState,
    OverlappingClasses,
    ShrinkingDirective,
    NotEpsilonFree,
    MultipleEnteringTransitions,
    EmptyTransducerList,
    InvalidTransducer,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Raised by library operations when a precondition fails.
class DomainError : public std::runtime_error {
public:
    DomainError(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Positioned error from the text parsers. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message,
               std::vector<std::string> expected = {});

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

} // namespace abstrans
