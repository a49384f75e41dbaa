#pragma once
#include <stdexcept>
#include <string>

namespace rfi {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("field mismatch") {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0, int column = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ", column " +
                               std::to_string(column) + ": " + msg
                         : msg),
          line(line), column(column) {}
    int line;
    int column;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ConfigurationError : public Error {
public:
    using Error::Error;
};

class InconsistentSystem : public Error {
public:
    using Error::Error;
};

} // namespace rfi
