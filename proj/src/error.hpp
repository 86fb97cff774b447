#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace habitat {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input document. Carries the 1-based line/column of the offending
/// token when the format is line-oriented; both are 0 when the position is
/// unknown (e.g. structural errors found after parsing).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(format(msg, line, column)), line_(line), column_(column) {}

    explicit ParseError(const std::string& msg) : Error(msg), line_(0), column_(0) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
        return "parse error at line " + std::to_string(line) + ", column " +
               std::to_string(column) + ": " + msg;
    }

    std::size_t line_;
    std::size_t column_;
};

/// Filesystem failure (missing file, unwritable directory, short write).
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Caller violated a documented precondition.
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

/// Persisted file has an unsupported format version.
class VersionError : public Error {
public:
    explicit VersionError(const std::string& msg) : Error(msg) {}
};

}  // namespace habitat
