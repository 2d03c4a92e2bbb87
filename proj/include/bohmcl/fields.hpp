#pragma once

#include <memory>
#include <vector>

#include "bohmcl/gaussian_engine.hpp"
#include "bohmcl/types.hpp"

// Velocity and quantum-force providers. Trajectory integration and the
// nonlocality measure only ever see these interfaces, so the transcribed
// closed forms and the moment engine are interchangeable backends.

namespace bohmcl {

class VelocityField {
  public:
    virtual ~VelocityField() = default;

    virtual VelocityPair velocity(double x1, double x2, double t) const = 0;

    // Sensitivity of v1 to the partner position. The default is a central
    // difference with step 1e-5; backends with a closed form override it.
    virtual double dv1_dx2(double x1, double x2, double t) const;

    // Hint that the given times will be queried; table-backed fields
    // precompute, everything else ignores it.
    virtual void prime(const std::vector<double>& times) const;
};

class ForceField {
  public:
    virtual ~ForceField() = default;
    virtual ForcePair force(double x1, double x2, double t) const = 0;
    virtual void prime(const std::vector<double>& times) const;
};

// Incrementally propagated moment table shared by the engine-backed
// fields. Queries are served from the nearest cached earlier time, so
// ascending sweeps cost one short propagation per step. Thread-safe.
class MomentCache {
  public:
    MomentCache(const PhysParams& params, Scenario scenario);
    engine::WignerMoments at(double t) const;
    void prime(const std::vector<double>& times) const;

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// Scenario routing: closed forms where they exist, the engine for the
// general-mu distinct-bath case the closed forms do not cover.
std::unique_ptr<VelocityField> make_velocity_field(Scenario scenario, const PhysParams& params);

// Engine-backed field for any scenario (the brute-force oracle route).
std::unique_ptr<VelocityField> make_engine_velocity_field(Scenario scenario,
                                                          const PhysParams& params);

// Quantum force: closed form for unitary evolution, kernel-based engine
// force for the dissipative scenarios.
std::unique_ptr<ForceField> make_force_field(Scenario scenario, const PhysParams& params);
std::unique_ptr<ForceField> make_engine_force_field(Scenario scenario, const PhysParams& params);

}  // namespace bohmcl
