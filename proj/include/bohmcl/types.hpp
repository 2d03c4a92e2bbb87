#pragma once

#include <stdexcept>
#include <string>

namespace bohmcl {

// Everything runs in the dimensionless scheme m = hbar = k_B = 1:
// positions in units of the initial packet width, time in units of
// m*sigma0^2/hbar, temperature in units of hbar^2/(m*sigma0^2*k_B).

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParameterError : Error {
    using Error::Error;
};
struct NumericalError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct DegenerateError : Error {
    using Error::Error;
};
struct NoPeakError : Error {
    using Error::Error;
};
struct WindowError : Error {
    using Error::Error;
};

enum class Scenario {
    Unitary,        // closed-system Schroedinger evolution
    DistinctBaths,  // each particle coupled to its own thermal bath
    CommonBath,     // both particles coupled to one shared bath
};

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

// Bath and initial-state parameters. `diffusion` is always the derived
// high-temperature value D = 2*gamma*temperature; construct through
// make_params so the relation cannot be broken.
struct PhysParams {
    double gamma = 0.0;        // relaxation rate
    double temperature = 0.0;  // bath temperature
    double mu = 1.0;           // squeezing decay factor, mu = exp(-2s)
    double diffusion = 0.0;    // D = 2*gamma*temperature
};

PhysParams make_params(double gamma, double temperature, double mu);

// Throws ParameterError when the scenario is inconsistent with the
// parameters (Unitary requires gamma = 0, baths require gamma > 0).
void validate_scenario(const PhysParams& params, Scenario scenario);

struct ConfigPoint {
    double x1 = 0.0;
    double x2 = 0.0;
    double t = 0.0;
};

struct PositionPair {
    double x1 = 0.0;
    double x2 = 0.0;
};

struct VelocityPair {
    double v1 = 0.0;
    double v2 = 0.0;
};

struct ForcePair {
    double f1 = 0.0;
    double f2 = 0.0;
};

}  // namespace bohmcl
