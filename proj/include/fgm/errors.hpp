#pragma once

#include <stdexcept>
#include <string>

namespace fgm {

/// Caller violated a documented precondition (bad order, zero horizon, bad flag).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data is empty, too short, malformed or out of domain.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The model cannot be evaluated: singular design or degenerate parameters.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fgm
