#pragma once

#include <complex>
#include <utility>

#include "bohmcl/types.hpp"

// Closed-form expressions for the bipartite squeezed Gaussian state
//
//   Psi0(x1,x2) = pi^{-1/2} exp[-mu (x1+x2)^2/4 - (x1-x2)^2/(4 mu)]
//
// evolving freely (Schroedinger) or under the double Caldeira-Leggett
// master equation with distinct or common thermal baths. All fields are
// linear in the positions; the exponential-in-(gamma t) expressions are
// evaluated in a factored form that stays accurate down to gamma -> 0
// and does not overflow for large gamma*t.

namespace bohmcl::closed_form {

// Time-evolved free wavefunction of the squeezed pair.
std::complex<double> psi_sch(const ConfigPoint& p, double mu);

// Bohmian velocity field (v2(x1,x2) = v1(x2,x1)).
VelocityPair v_sch(const ConfigPoint& p, double mu);

// Trajectories from initial configuration (x10, x20).
PositionPair traj_sch(double t, double x10, double x20, double mu);

// Velocities evaluated along the trajectory started at (x10, x20).
VelocityPair v_sch_along(double t, double x10, double x20, double mu);

// Quantum potential and the quantum force -grad Q.
double q_sch(const ConfigPoint& p, double mu);
ForcePair f_qm_sch(const ConfigPoint& p, double mu);
ForcePair f_qm_sch_along(double t, double x10, double x20, double mu);

// Velocity sensitivity |d v1 / d x2| (position-independent for this
// state family) and its closed-form peak.
double eta_sch(double t, double mu);

struct EtaPeak {
    double t_max = 0.0;
    double eta_max = 0.0;
};
// Throws DegenerateError for mu = 1 (eta vanishes identically).
EtaPeak eta_sch_peak(double mu);

// Common-bath velocity field; requires gamma > 0 (use v_sch for the
// unitary limit). Throws NumericalError if the denominator underflows.
VelocityPair v_common(const ConfigPoint& p, const PhysParams& params);

// Quantum force for the common bath expanded to first order in gamma.
ForcePair f_qm_common_first_order(const ConfigPoint& p, const PhysParams& params);

// Distinct-bath velocity of either particle at mu = 1, where the pair
// decouples and the field depends on that particle's position alone.
// Throws DomainError when params.mu != 1.
double v_distinct_mu1(double x, double t, const PhysParams& params);

// Signed sensitivity d v1/d x2 for the common bath; eta_common is its
// absolute value.
double dv1_dx2_common(double t, const PhysParams& params);

double eta_common(double t, const PhysParams& params);
double eta_distinct(double t, const PhysParams& params);

namespace detail {

// w(u) = 2u e^{2u} - 3 e^{2u} + 4 e^u - 1 = (2/3) u^3 + O(u^4),
// evaluated without cancellation for small u.
double w_cancel(double u);

// sinh(u) - u without cancellation for small u.
double sinh_minus(double u);

// Shared denominator bracket of the common-bath field,
//   B = 16 g^3 e^{8gt} + g mu^2 (e^{4gt}-1)^2 + D mu w(4gt),
// algebraically equal to the expanded form
//   mu(g mu - D) + e^{8gt}(16 g^3 - 3 D mu + g mu (8 D t + mu))
//   - 2 mu e^{4gt}(g mu - 2D).
double common_bracket(double gamma, double diffusion, double mu, double t);

// Coefficient of (x1 + x2) in v1 for the common bath; the coefficient
// of (x1 - x2) is t / (2 (mu^2 + t^2)).
double common_sum_coeff(double gamma, double diffusion, double mu, double t);

}  // namespace detail

}  // namespace bohmcl::closed_form
