#pragma once

#include <stdexcept>
#include <string>

namespace dyndist {

// Error hierarchy. Every throwing precondition in the library maps to one of
// these; tests match on the concrete type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct ZeroInverse : Error { using Error::Error; };
struct NonUnit : Error { using Error::Error; };
struct BadForm : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct DegreeNotTracked : Error { using Error::Error; };
struct ConstantTermUpdate : Error { using Error::Error; };
struct SingularPivot : Error { using Error::Error; };
struct DirectedInput : Error { using Error::Error; };
struct NotConnected : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// Parse failures carry a location so the CLI can point at the offending token.
struct ParseError : Error {
    ParseError(const std::string& msg, int line, int column)
        : Error(msg + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line(line),
          column(column) {}
    int line;
    int column;
};

}  // namespace dyndist
