#pragma once

#include <Eigen/Dense>
#include <complex>

#include "bohmcl/types.hpp"

// Exact Gaussian phase-space propagator for the double Caldeira-Leggett
// dynamics. The master equation maps to a linear drift/diffusion flow of
// the Wigner distribution, so the state is fully described by its first
// and second moments in z = (x1, p1, x2, p2). From the moments we
// reconstruct the position-space kernel rho(x1,y1;x2,y2), the Bohmian
// velocity coefficients and the quantum force -- a code path independent
// of the transcribed closed forms, valid for every scenario and mu.

namespace bohmcl::engine {

struct WignerMoments {
    Eigen::Vector4d mean = Eigen::Vector4d::Zero();  // (x1, p1, x2, p2)
    Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();   // symmetric, same ordering
    double t = 0.0;
};

struct DriftDiffusion {
    Eigen::Matrix4d drift = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d diffusion = Eigen::Matrix4d::Zero();  // momentum block only
};

// rho(z) = exp(-z^T quad z / 2 + log_norm), z = (x1, y1, x2, y2).
struct GaussianKernel {
    Eigen::Matrix4cd quad = Eigen::Matrix4cd::Zero();
    std::complex<double> log_norm{0.0, 0.0};
};

// Linear velocity field (v1, v2) = coeffs * (x1, x2).
struct VelocityCoeffs {
    Eigen::Matrix2d coeffs = Eigen::Matrix2d::Zero();
};

// Moments of the squeezed pair at t = 0 (pure state, zero mean).
WignerMoments initial_moments(double mu);

// Drift matrix F and diffusion matrix Dmat of the moment flow
//   mean' = F mean,   cov' = F cov + cov F^T + 2 Dmat.
// Distinct baths damp each momentum at 2*gamma and diffuse them
// independently; a common bath damps via the total momentum and carries
// cross diffusion; the unitary case has neither.
DriftDiffusion drift_diffusion(const PhysParams& params, Scenario scenario);

// Fixed-step RK4 on the moment ODE, halving the step until two sweeps
// agree to 1e-10 in max norm. Throws NumericalError if the position
// covariance block loses positive definiteness.
WignerMoments propagate(const WignerMoments& m0, const DriftDiffusion& dd, double t);

// V = Sigma_px Sigma_xx^{-1}; throws NumericalError when Sigma_xx is not
// positive definite or its condition number exceeds 1e12.
VelocityCoeffs velocity_coeffs(const WignerMoments& m);

GaussianKernel kernel_from_moments(const WignerMoments& m);

std::complex<double> kernel_value(const GaussianKernel& k, double x1, double y1, double x2,
                                  double y2);

// Amplitude A = |rho| and phase S = arg(rho) (continuous, from the
// quadratic form rather than atan2).
double kernel_amplitude(const GaussianKernel& k, double x1, double y1, double x2, double y2);
double kernel_phase(const GaussianKernel& k, double x1, double y1, double x2, double y2);

// Quantum force -dQ/dx_i restricted to the diagonal y_n = x_n, where Q is
// the quantum potential of the amplitude A. Quadratic A makes the force
// linear in the positions; this evaluates the exact linear form.
double quantum_force(const GaussianKernel& k, int particle, double x1, double x2);

}  // namespace bohmcl::engine
