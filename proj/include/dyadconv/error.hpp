#pragma once

#include <stdexcept>
#include <string>

namespace dyadconv {

/// Base class for data-dependent failures (as opposed to std::invalid_argument,
/// which signals a violated precondition on arguments).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed transcript or table input. The message names the record and field.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Constant, empty or otherwise uninformative series.
class DegenerateSeriesError : public Error {
public:
    using Error::Error;
};

/// Design matrix without full column rank.
class RankDeficientError : public Error {
public:
    using Error::Error;
};

}  // namespace dyadconv
