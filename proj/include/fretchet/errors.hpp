#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fretchet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A vector does not have the shape an operation expects.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Coordinate index or coordinate count out of range.
class DimError : public Error {
public:
    using Error::Error;
};

/// A primitive was evaluated outside its domain (e.g. ln of a non-positive number).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Ill-typed term. `path` locates the offending subterm, outermost first.
class TypeError : public Error {
public:
    TypeError(std::vector<std::string> path, std::string reason)
        : Error(format(path, reason)), path_(std::move(path)), reason_(std::move(reason)) {}

    explicit TypeError(std::string reason) : TypeError({}, std::move(reason)) {}

    const std::vector<std::string>& path() const noexcept { return path_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    static std::string format(const std::vector<std::string>& path, const std::string& reason) {
        std::string out = "type error";
        if (!path.empty()) {
            out += " at ";
            for (std::size_t i = 0; i < path.size(); ++i) {
                if (i) out += '/';
                out += path[i];
            }
        }
        return out + ": " + reason;
    }

    std::vector<std::string> path_;
    std::string reason_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t col, std::string expected)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
                ": expected " + expected),
          line_(line), col_(col), expected_(std::move(expected)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t col() const noexcept { return col_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t line_;
    std::size_t col_;
    std::string expected_;
};

}  // namespace fretchet
