#pragma once

#include <stdexcept>
#include <string>

namespace skdv {

// Invalid user input: bad grid sizes, unknown config keys, incompatible data.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the domain where a routine is accurate.
class RangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A quadrature or truncation that failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite values appeared during time stepping.
class NumericalHalt : public std::runtime_error {
public:
    NumericalHalt(const std::string& what, double t) : std::runtime_error(what), time(t) {}
    double time;
};

}  // namespace skdv
