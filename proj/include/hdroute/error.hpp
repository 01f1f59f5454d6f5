#pragma once

#include <stdexcept>
#include <string>

namespace hdroute {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON graph, capacity literal, DIMACS).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally invalid graph, path or argument.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The destination cannot be reached from the source.
class NoPathError : public Error {
public:
    NoPathError() : Error("no path") {}
    using Error::Error;
};

/// A configured work bound (iterations, enumerated paths, SAT variables) was hit.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace hdroute
