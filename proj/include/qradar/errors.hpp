#ifndef QRADAR_ERRORS_HPP
#define QRADAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qradar {

// Thrown when a numerical consistency check fails (propagator step-halving
// disagreement, imaginary residual in an assembled probability, ...).
// The CLI maps this to exit code 3; config validation errors map to 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qradar

#endif
