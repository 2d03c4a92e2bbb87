#include "bohmcl/types.hpp"

#include <cmath>

namespace bohmcl {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::Unitary:
            return "sch";
        case Scenario::DistinctBaths:
            return "distinct";
        case Scenario::CommonBath:
            return "common";
    }
    return "?";
}

Scenario scenario_from_string(const std::string& name) {
    if (name == "sch") return Scenario::Unitary;
    if (name == "distinct") return Scenario::DistinctBaths;
    if (name == "common") return Scenario::CommonBath;
    throw ParameterError("unknown scenario '" + name + "' (expected sch|distinct|common)");
}

PhysParams make_params(double gamma, double temperature, double mu) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw ParameterError("gamma must be finite and >= 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw ParameterError("temperature must be finite and >= 0");
    if (!(mu > 0.0 && mu <= 1.0))
        throw ParameterError("mu must lie in (0, 1]");
    PhysParams p;
    p.gamma = gamma;
    p.temperature = temperature;
    p.mu = mu;
    p.diffusion = 2.0 * gamma * temperature;
    return p;
}

void validate_scenario(const PhysParams& params, Scenario scenario) {
    if (scenario == Scenario::Unitary) {
        if (params.gamma != 0.0 || params.diffusion != 0.0)
            throw ParameterError("unitary evolution requires gamma = 0 and D = 0");
    } else {
        if (!(params.gamma > 0.0))
            throw ParameterError(to_string(scenario) + " scenario requires gamma > 0");
    }
}

}  // namespace bohmcl
