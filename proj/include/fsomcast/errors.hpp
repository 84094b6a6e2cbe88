#pragma once

#include <stdexcept>
#include <string>

namespace fsomcast {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A receiver position coincides with the transmitter at the origin.
class DegeneratePositionError : public Error {
public:
    using Error::Error;
};

// GPS error radius is not strictly smaller than a node distance, so the
// uncertainty half-angle is undefined.
class GpsErrorTooLargeError : public Error {
public:
    using Error::Error;
};

// A single candidate set needs a divergence angle above theta_max.
class InfeasibleSetError : public Error {
public:
    using Error::Error;
};

// No valid plan exists for the scenario under the given solver config.
class InfeasibleScenarioError : public Error {
public:
    using Error::Error;
};

class InvalidParamsError : public Error {
public:
    using Error::Error;
};

// Malformed config/scenario files or command-line usage.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace fsomcast
