#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ontomatch {

// Malformed input data (ontology or alignment files). The CLI maps these to
// exit code 2.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public FormatError {
public:
    SyntaxError(const std::string& what, std::size_t line, std::size_t column)
        : FormatError(what + " (line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Well-formed JSON that does not follow the document schema (missing or
// unknown keys, wrong value types, bad enum tags).
class SchemaError : public FormatError {
public:
    using FormatError::FormatError;
};

class DuplicateIdentifierError : public FormatError {
public:
    using FormatError::FormatError;
};

class DanglingReferenceError : public FormatError {
public:
    using FormatError::FormatError;
};

class SubclassCycleError : public FormatError {
public:
    using FormatError::FormatError;
};

// Alignment-level invariants: one-to-one violations, sim out of range.
class AlignmentFormatError : public FormatError {
public:
    using FormatError::FormatError;
};

class IoError : public FormatError {
public:
    using FormatError::FormatError;
};

// Violated preconditions of library calls. The CLI maps these to exit code 3.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class UnknownEntityError : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

class WrongKindError : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

class ShapeMismatchError : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

}  // namespace ontomatch
