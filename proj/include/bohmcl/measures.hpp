#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bohmcl/fields.hpp"
#include "bohmcl/types.hpp"

// The trajectory-based nonlocality measure |d v1 / d x2| and its curve
// analytics: peak, full width at half maximum of the first peak, and
// post-peak revivals.

namespace bohmcl::measures {

struct EtaCurve {
    std::vector<double> times;
    std::vector<double> values;
    std::function<double(double)> eval;  // callable behind the samples
};

// Sample eta(t) on the grid k*dt, keeping the callable for refinement.
EtaCurve sample_eta_curve(std::function<double(double)> eta, double t_end, double dt);

// Closed-form eta callable for a scenario, and the engine-derived one
// (|V12| from the propagated moments) used to cross-validate it.
std::function<double(double)> eta_callable(Scenario scenario, const PhysParams& params);
std::function<double(double)> eta_callable_engine(Scenario scenario, const PhysParams& params);

// Sensitivity along the trajectory started at (x10, x20): integrate to t,
// then |d v1/d x2| at the endpoint (analytic when the field provides it).
double eta_traj(const VelocityField& field, double t, double x10, double x20, double dt = 1e-3);

struct EnsembleStats {
    double mean = 0.0;
    double std_error = 0.0;
};

// Born-weighted Monte Carlo average of eta_traj. The integrand is
// position-independent for linear fields, so the spread is pure roundoff.
EnsembleStats eta_ensemble(const VelocityField& field, double mu, double t, std::size_t n,
                           std::uint64_t seed, double dt = 1e-3);

struct Peak {
    double t = 0.0;
    double value = 0.0;
};

// Grid argmax refined by golden-section search (1e-8 in t). Throws
// NoPeakError when the maximum sits on the grid boundary.
Peak find_peak(const EtaCurve& curve);

struct FwhmResult {
    double width = 0.0;
    double t_left = 0.0;
    double t_right = 0.0;
};

// Full width at half maximum of the first/global peak: the half-max
// crossings nearest the peak on each side, each located by bisection to
// 1e-8. Throws WindowError naming the side that never drops below
// half maximum inside the sampled window.
FwhmResult fwhm(const EtaCurve& curve);

struct Revival {
    double t = 0.0;
    double value = 0.0;
    double prominence = 0.0;  // rise above the valley separating it from the previous peak
};

// Local maxima after the global peak with prominence above the threshold,
// refined by golden-section. An empty result is a valid outcome.
std::vector<Revival> find_revivals(const EtaCurve& curve, double prominence_threshold);

// Convenience overload: threshold = 2% of the global peak value, which
// clears the ~1% fold-back the absolute value produces where the signed
// sensitivity crosses zero.
std::vector<Revival> find_revivals(const EtaCurve& curve);

}  // namespace bohmcl::measures
