#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bohmcl/fields.hpp"
#include "bohmcl/types.hpp"

namespace bohmcl::traj {

struct Trajectory {
    std::vector<double> times;            // strictly increasing, starts at 0
    std::vector<PositionPair> points;     // (X1, X2) per time
    std::vector<VelocityPair> velocities; // field evaluated at each point
    double x10 = 0.0;
    double x20 = 0.0;
};

// Fixed-step RK4 integration of dX/dt = v(X, t) on the grid k*dt.
// `validate` additionally integrates at dt/2 and requires max-norm
// agreement below 1e-8.
Trajectory integrate(const VelocityField& field, double x10, double x20, double t_end, double dt,
                     bool validate = false);

struct InitialEnsemble {
    std::vector<PositionPair> pairs;
    std::uint64_t seed = 0;
    double mu = 1.0;
};

// Born-rule draw from |Psi0|^2: zero-mean Gaussian with the exact 2x2
// Cholesky factor of the initial position covariance. mt19937_64 with
// Box-Muller, so ensembles are identical across platforms and runs.
InitialEnsemble sample_initial(double mu, std::size_t n, std::uint64_t seed);

struct ResidualSeries {
    std::vector<double> times;  // interior grid points
    std::vector<double> r1;
    std::vector<double> r2;
    double max_abs = 0.0;
};

// Residual of the Newtonian-like equations of motion along a trajectory:
//   dv_i/dt - [F_qm,i - 2 gamma v_i - (common bath) 2 gamma v_j]
// with dv_i/dt taken as the central difference of the stored velocities
// (the material derivative along the moving configuration point).
ResidualSeries newton_residual(const Trajectory& trajectory, Scenario scenario,
                               const PhysParams& params, const ForceField& force);

struct CrossingReport {
    struct Violation {
        std::size_t i = 0;
        std::size_t j = 0;
        double t = 0.0;
        double distance = 0.0;
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Pairwise minimum configuration-space distance over the shared grid;
// pairs starting from the same configuration point are exempt. A
// single-coordinate coincidence is not a crossing: the distance is taken
// in the full (X1, X2) plane.
CrossingReport non_crossing_check(std::span<const Trajectory> trajectories,
                                  double threshold = 1e-9);

// Deterministic index-ordered parallel map helper used for ensembles and
// parameter sweeps.
void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bohmcl::traj
