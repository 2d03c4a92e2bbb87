#include "bohmcl/gaussian_engine.hpp"

#include <cmath>

namespace bohmcl::engine {

namespace {

constexpr double kStepTol = 1e-10;
constexpr double kCondLimit = 1e12;
constexpr double kPi = 3.14159265358979323846;

Eigen::Matrix2d position_block(const Eigen::Matrix4d& cov) {
    Eigen::Matrix2d b;
    b << cov(0, 0), cov(0, 2), cov(2, 0), cov(2, 2);
    return b;
}

Eigen::Matrix2d momentum_position_block(const Eigen::Matrix4d& cov) {
    Eigen::Matrix2d b;
    b << cov(1, 0), cov(1, 2), cov(3, 0), cov(3, 2);
    return b;
}

bool positive_definite_2x2(const Eigen::Matrix2d& m) {
    return m(0, 0) > 0.0 && m.determinant() > 0.0;
}

// One RK4 sweep over [0, t] with n equal steps for mean' = F mean and
// cov' = F cov + cov F^T + 2 Dmat.
WignerMoments rk4_sweep(const WignerMoments& m0, const DriftDiffusion& dd, double t, int n) {
    const double h = t / n;
    const Eigen::Matrix4d& F = dd.drift;
    const Eigen::Matrix4d twoD = 2.0 * dd.diffusion;
    Eigen::Vector4d mean = m0.mean;
    Eigen::Matrix4d cov = m0.cov;
    const auto rhs = [&](const Eigen::Matrix4d& c) -> Eigen::Matrix4d {
        return F * c + c * F.transpose() + twoD;
    };
    for (int i = 0; i < n; ++i) {
        const Eigen::Matrix4d k1 = rhs(cov);
        const Eigen::Matrix4d k2 = rhs(cov + 0.5 * h * k1);
        const Eigen::Matrix4d k3 = rhs(cov + 0.5 * h * k2);
        const Eigen::Matrix4d k4 = rhs(cov + h * k3);
        cov += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const Eigen::Vector4d l1 = F * mean;
        const Eigen::Vector4d l2 = F * (mean + 0.5 * h * l1);
        const Eigen::Vector4d l3 = F * (mean + 0.5 * h * l2);
        const Eigen::Vector4d l4 = F * (mean + h * l3);
        mean += h / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
    }
    WignerMoments out;
    out.mean = mean;
    out.cov = 0.5 * (cov + cov.transpose());
    out.t = m0.t + t;
    return out;
}

}  // namespace

WignerMoments initial_moments(double mu) {
    if (!(mu > 0.0 && mu <= 1.0)) throw ParameterError("mu must lie in (0, 1]");
    const double plus = 0.25 * (1.0 / mu + mu);
    const double minus = 0.25 * (1.0 / mu - mu);
    WignerMoments m;
    m.cov(0, 0) = m.cov(2, 2) = plus;   // Var(x1), Var(x2)
    m.cov(1, 1) = m.cov(3, 3) = plus;   // Var(p1), Var(p2)
    m.cov(0, 2) = m.cov(2, 0) = minus;  // Cov(x1, x2)
    m.cov(1, 3) = m.cov(3, 1) = -minus; // Cov(p1, p2)
    return m;
}

DriftDiffusion drift_diffusion(const PhysParams& params, Scenario scenario) {
    validate_scenario(params, scenario);
    DriftDiffusion dd;
    dd.drift(0, 1) = 1.0;
    dd.drift(2, 3) = 1.0;
    const double g2 = 2.0 * params.gamma;
    const double D = params.diffusion;
    switch (scenario) {
        case Scenario::Unitary:
            break;
        case Scenario::DistinctBaths:
            dd.drift(1, 1) = -g2;
            dd.drift(3, 3) = -g2;
            dd.diffusion(1, 1) = D;
            dd.diffusion(3, 3) = D;
            break;
        case Scenario::CommonBath:
            dd.drift(1, 1) = dd.drift(1, 3) = -g2;
            dd.drift(3, 1) = dd.drift(3, 3) = -g2;
            dd.diffusion(1, 1) = dd.diffusion(3, 3) = D;
            dd.diffusion(1, 3) = dd.diffusion(3, 1) = D;
            break;
    }
    return dd;
}

WignerMoments propagate(const WignerMoments& m0, const DriftDiffusion& dd, double t) {
    if (t < 0.0) throw ParameterError("propagation time must be >= 0");
    if (t == 0.0) return m0;
    int n = std::max(1, int(std::ceil(t / 0.1)));
    WignerMoments prev = rk4_sweep(m0, dd, t, n);
    for (int iter = 0; iter < 40; ++iter) {
        n *= 2;
        const WignerMoments cur = rk4_sweep(m0, dd, t, n);
        const double diff = (cur.cov - prev.cov).cwiseAbs().maxCoeff();
        if (!positive_definite_2x2(position_block(cur.cov)))
            throw NumericalError("position covariance block lost positive definiteness");
        if (diff < kStepTol) return cur;
        prev = cur;
    }
    throw NumericalError("moment propagation failed to converge under step halving");
}

VelocityCoeffs velocity_coeffs(const WignerMoments& m) {
    const Eigen::Matrix2d sxx = position_block(m.cov);
    if (!positive_definite_2x2(sxx))
        throw NumericalError("position covariance block is not positive definite");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(sxx);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(1);
    if (!(lo > 0.0) || hi / lo > kCondLimit)
        throw NumericalError("position covariance block is ill-conditioned");
    VelocityCoeffs vc;
    vc.coeffs = momentum_position_block(m.cov) * sxx.inverse();
    return vc;
}

GaussianKernel kernel_from_moments(const WignerMoments& m) {
    // Work in the grouped ordering (x1, x2, p1, p2).
    Eigen::Matrix4d perm = Eigen::Matrix4d::Zero();
    perm(0, 0) = perm(1, 2) = perm(2, 1) = perm(3, 3) = 1.0;
    const Eigen::Matrix4d cov_g = perm * m.cov * perm.transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cov_g);
    if (es.eigenvalues()(0) <= 0.0)
        throw NumericalError("covariance is not positive definite; no Gaussian kernel exists");

    const Eigen::Matrix4d lambda = cov_g.inverse();
    const Eigen::Matrix2d lam_xp = lambda.topRightCorner<2, 2>();
    const Eigen::Matrix2d lam_pp = lambda.bottomRightCorner<2, 2>();
    const Eigen::Matrix2d sxx = cov_g.topLeftCorner<2, 2>();
    if (!positive_definite_2x2(sxx))
        throw NumericalError("position covariance block is not positive definite");

    // Integrating the Wigner function over momentum at fixed midpoint
    // R = ((x1+y1)/2, (x2+y2)/2) and separation r = (x1-y1, x2-y2) gives
    //   rho = C exp[-R^T Sxx^{-1} R / 2 - r^T K r / 2 - i r^T K lam_px R]
    // with K = lam_pp^{-1}.
    const Eigen::Matrix2d P = sxx.inverse();
    const Eigen::Matrix2d K = lam_pp.inverse();
    const Eigen::Matrix2d Q = K * lam_xp.transpose();

    Eigen::Matrix<double, 2, 4> GR = Eigen::Matrix<double, 2, 4>::Zero();
    GR(0, 0) = GR(0, 1) = 0.5;
    GR(1, 2) = GR(1, 3) = 0.5;
    Eigen::Matrix<double, 2, 4> Gr = Eigen::Matrix<double, 2, 4>::Zero();
    Gr(0, 0) = 1.0;
    Gr(0, 1) = -1.0;
    Gr(1, 2) = 1.0;
    Gr(1, 3) = -1.0;

    const Eigen::Matrix4d amp = GR.transpose() * P * GR + Gr.transpose() * K * Gr;
    const Eigen::Matrix4d phase = Gr.transpose() * Q * GR + GR.transpose() * Q.transpose() * Gr;

    GaussianKernel kernel;
    kernel.quad = amp.cast<std::complex<double>>() +
                  std::complex<double>(0.0, 1.0) * phase.cast<std::complex<double>>();
    // Normalization fixed by unit trace of the diagonal restriction.
    kernel.log_norm = std::complex<double>(-std::log(2.0 * kPi) - 0.5 * std::log(sxx.determinant()), 0.0);
    return kernel;
}

std::complex<double> kernel_value(const GaussianKernel& k, double x1, double y1, double x2,
                                  double y2) {
    Eigen::Vector4cd z(x1, y1, x2, y2);
    const std::complex<double> quad = z.transpose() * k.quad * z;
    return std::exp(-0.5 * quad + k.log_norm);
}

double kernel_amplitude(const GaussianKernel& k, double x1, double y1, double x2, double y2) {
    Eigen::Vector4d z(x1, y1, x2, y2);
    const double quad = z.transpose() * k.quad.real() * z;
    return std::exp(-0.5 * quad + k.log_norm.real());
}

double kernel_phase(const GaussianKernel& k, double x1, double y1, double x2, double y2) {
    Eigen::Vector4d z(x1, y1, x2, y2);
    const double quad = z.transpose() * k.quad.imag() * z;
    return -0.5 * quad + k.log_norm.imag();
}

double quantum_force(const GaussianKernel& k, int particle, double x1, double x2) {
    if (particle != 1 && particle != 2) throw ParameterError("particle index must be 1 or 2");
    // With A = exp(-z^T M z / 2 + c), M = Re(quad), the quantum potential
    //   Q = -(1/2) sum_n (d^2_{x_n} - d^2_{y_n}) A / A
    // is quadratic: the constant parts cancel by the x<->y symmetry of M,
    // leaving Q = -(1/2) sum_n [(Mz)_{x_n}^2 - (Mz)_{y_n}^2]. The force
    // -dQ/dx_i on the diagonal y_n = x_n is then linear in (x1, x2).
    const Eigen::Matrix4d M = k.quad.real();
    const Eigen::Vector4d zd(x1, x1, x2, x2);
    const Eigen::Vector4d Mz = M * zd;
    const int xi = particle == 1 ? 0 : 2;
    double force = 0.0;
    for (int xn : {0, 2}) {
        const int yn = xn + 1;
        force += Mz(xn) * (M(xn, xi) - M(yn, xi));
    }
    return force;
}

}  // namespace bohmcl::engine
