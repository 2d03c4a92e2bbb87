#include "bohmcl/closed_form.hpp"

#include <cmath>

namespace bohmcl::closed_form {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUnderflowGuard = 1e-300;

void require_mu(double mu) {
    if (!(mu > 0.0 && mu <= 1.0)) throw ParameterError("mu must lie in (0, 1]");
}

void require_time(double t) {
    if (!(t >= 0.0)) throw ParameterError("t must be >= 0");
}

}  // namespace

namespace detail {

double w_cancel(double u) {
    if (std::abs(u) < 0.25) {
        // series coefficients c_j = (2^j (j-3) + 4) / j!
        double sum = 0.0;
        double factorial = 6.0;
        double power = u * u * u;
        for (int j = 3; j <= 14; ++j) {
            if (j > 3) {
                factorial *= j;
                power *= u;
            }
            const double c = (std::ldexp(double(j - 3), j) + 4.0) / factorial;
            sum += c * power;
        }
        return sum;
    }
    const double e1 = std::exp(u);
    const double e2 = std::exp(2.0 * u);
    return (2.0 * u - 3.0) * e2 + 4.0 * e1 - 1.0;
}

double sinh_minus(double u) {
    if (std::abs(u) < 0.1) {
        const double u2 = u * u;
        return u * u2 * (1.0 / 6.0 + u2 * (1.0 / 120.0 + u2 * (1.0 / 5040.0 + u2 / 362880.0)));
    }
    return std::sinh(u) - u;
}

double common_bracket(double gamma, double diffusion, double mu, double t) {
    const double u = 4.0 * gamma * t;
    const double em1 = std::expm1(u);
    return 16.0 * gamma * gamma * gamma * std::exp(2.0 * u) + gamma * mu * mu * em1 * em1 +
           diffusion * mu * w_cancel(u);
}

double common_sum_coeff(double gamma, double diffusion, double mu, double t) {
    const double u = 4.0 * gamma * t;
    const double em1 = std::expm1(u);
    const double bracket = common_bracket(gamma, diffusion, mu, t);
    if (std::abs(bracket) < kUnderflowGuard)
        throw NumericalError("common-bath velocity denominator underflow");
    return 2.0 * gamma * mu * em1 * (diffusion * em1 + gamma * mu) / bracket;
}

}  // namespace detail

std::complex<double> psi_sch(const ConfigPoint& p, double mu) {
    require_mu(mu);
    require_time(p.t);
    using C = std::complex<double>;
    const double t = p.t;
    const C denom = 4.0 * (C(t, -mu)) * (C(mu * t, -1.0));
    const C arg = (C(0.0, 2.0 * mu * t) * (p.x1 * p.x1 + p.x2 * p.x2) +
                   mu * mu * (p.x1 + p.x2) * (p.x1 + p.x2) + (p.x1 - p.x2) * (p.x1 - p.x2)) /
                  denom;
    const C prefactor = std::sqrt(mu / (kPi * C(mu - mu * t * t, (mu * mu + 1.0) * t)));
    return prefactor * std::exp(arg);
}

VelocityPair v_sch(const ConfigPoint& p, double mu) {
    require_mu(mu);
    const double t = p.t;
    const double denom = 2.0 * (t * t + mu * mu) * (mu * mu * t * t + 1.0);
    const double mu4 = mu * mu * mu * mu;
    VelocityPair v;
    v.v1 = t * (2.0 * mu * mu * t * t * p.x1 + mu4 * (p.x1 + p.x2) + p.x1 - p.x2) / denom;
    v.v2 = t * (2.0 * mu * mu * t * t * p.x2 + mu4 * (p.x2 + p.x1) + p.x2 - p.x1) / denom;
    return v;
}

PositionPair traj_sch(double t, double x10, double x20, double mu) {
    require_mu(mu);
    require_time(t);
    const double rel = std::sqrt(t * t + mu * mu);
    const double com = mu * std::sqrt(mu * mu * t * t + 1.0);
    PositionPair X;
    X.x1 = (rel * (x10 - x20) + com * (x10 + x20)) / (2.0 * mu);
    X.x2 = (rel * (x20 - x10) + com * (x20 + x10)) / (2.0 * mu);
    return X;
}

VelocityPair v_sch_along(double t, double x10, double x20, double mu) {
    require_mu(mu);
    require_time(t);
    const double rel = (x10 - x20) / std::sqrt(t * t + mu * mu);
    const double com = mu * mu * mu * (x10 + x20) / std::sqrt(1.0 + mu * mu * t * t);
    VelocityPair v;
    v.v1 = t / (2.0 * mu) * (rel + com);
    v.v2 = t / (2.0 * mu) * (-rel + com);
    return v;
}

double q_sch(const ConfigPoint& p, double mu) {
    require_mu(mu);
    const double t = p.t;
    const double a = mu * mu * t * t + 1.0;
    const double b = mu * mu + t * t;
    const double sum = p.x1 + p.x2;
    const double diff = p.x1 - p.x2;
    return 0.25 * (2.0 * mu * (1.0 / a + 1.0 / b) -
                   mu * mu * (sum * sum / (a * a) + diff * diff / (b * b)));
}

ForcePair f_qm_sch(const ConfigPoint& p, double mu) {
    require_mu(mu);
    const double t = p.t;
    const double a = mu * mu * t * t + 1.0;
    const double b = mu * mu + t * t;
    const double sum = (p.x1 + p.x2) / (a * a);
    const double diff = (p.x1 - p.x2) / (b * b);
    ForcePair f;
    f.f1 = 0.5 * mu * mu * (diff + sum);
    f.f2 = 0.5 * mu * mu * (-diff + sum);
    return f;
}

ForcePair f_qm_sch_along(double t, double x10, double x20, double mu) {
    require_mu(mu);
    require_time(t);
    const double rel = (x10 - x20) / std::pow(t * t + mu * mu, 1.5);
    const double com = mu * (x10 + x20) / std::pow(1.0 + mu * mu * t * t, 1.5);
    ForcePair f;
    f.f1 = 0.5 * mu * (rel + com);
    f.f2 = 0.5 * mu * (-rel + com);
    return f;
}

double eta_sch(double t, double mu) {
    require_mu(mu);
    require_time(t);
    const double mu4 = mu * mu * mu * mu;
    return (1.0 - mu4) * t / (2.0 * (1.0 + mu * mu * t * t) * (t * t + mu * mu));
}

EtaPeak eta_sch_peak(double mu) {
    require_mu(mu);
    if (mu == 1.0) throw DegenerateError("eta vanishes identically at mu = 1; no peak exists");
    const double mu4 = mu * mu * mu * mu;
    const double root = std::sqrt(mu4 * mu4 + 14.0 * mu4 + 1.0);
    // root - (1 + mu^4) rationalized to 12 mu^4 / (root + 1 + mu^4) so the
    // strong-squeezing limit mu -> 0 keeps full precision.
    const double shifted = root + 1.0 + mu4;
    EtaPeak peak;
    peak.t_max = mu * std::sqrt(2.0 / shifted);
    peak.eta_max = 18.0 * std::sqrt(2.0) * (1.0 - mu4) /
                   (mu * std::sqrt(shifted) * (root + 5.0 - mu4) *
                    ((mu4 + 14.0) / (root + 1.0) + 5.0));
    return peak;
}

VelocityPair v_common(const ConfigPoint& p, const PhysParams& params) {
    require_mu(params.mu);
    if (!(params.gamma > 0.0))
        throw ParameterError("v_common requires gamma > 0; use v_sch for the unitary limit");
    const double t = p.t;
    const double mu = params.mu;
    const double sum_coeff = detail::common_sum_coeff(params.gamma, params.diffusion, mu, t);
    const double rel_coeff = t / (2.0 * (mu * mu + t * t));
    VelocityPair v;
    v.v1 = sum_coeff * (p.x1 + p.x2) + rel_coeff * (p.x1 - p.x2);
    v.v2 = sum_coeff * (p.x2 + p.x1) + rel_coeff * (p.x2 - p.x1);
    return v;
}

ForcePair f_qm_common_first_order(const ConfigPoint& p, const PhysParams& params) {
    require_mu(params.mu);
    if (params.gamma < 0.0) throw ParameterError("gamma must be >= 0");
    const double t = p.t;
    const double mu = params.mu;
    const double T = params.temperature;
    const double a = mu * mu * t * t + 1.0;
    const double correction = 4.0 * mu * (p.x1 + p.x2) * t / (a * a * a) *
                              (-mu + 2.0 * (a * a + 2.0) / 3.0 * T) * params.gamma;
    ForcePair f = f_qm_sch(p, mu);
    f.f1 += correction;
    f.f2 += correction;
    return f;
}

double v_distinct_mu1(double x, double t, const PhysParams& params) {
    if (params.mu != 1.0)
        throw DomainError("closed-form distinct-bath velocity applies only to mu = 1");
    if (!(params.gamma > 0.0)) throw ParameterError("v_distinct_mu1 requires gamma > 0");
    const double gamma = params.gamma;
    const double D = params.diffusion;
    const double u = 2.0 * gamma * t;
    const double em1 = std::expm1(u);
    const double num = 2.0 * gamma * em1 * (D * em1 + gamma);
    const double den = D * detail::w_cancel(u) + gamma * em1 * em1 +
                       4.0 * gamma * gamma * gamma * std::exp(2.0 * u);
    if (std::abs(den) < kUnderflowGuard)
        throw NumericalError("distinct-bath velocity denominator underflow");
    return num / den * x;
}

double dv1_dx2_common(double t, const PhysParams& params) {
    require_mu(params.mu);
    require_time(t);
    if (!(params.gamma > 0.0)) throw ParameterError("eta_common requires gamma > 0");
    const double mu = params.mu;
    return detail::common_sum_coeff(params.gamma, params.diffusion, mu, t) -
           t / (2.0 * (mu * mu + t * t));
}

double eta_common(double t, const PhysParams& params) {
    return std::abs(dv1_dx2_common(t, params));
}

double eta_distinct(double t, const PhysParams& params) {
    require_mu(params.mu);
    require_time(t);
    if (!(params.gamma > 0.0)) throw ParameterError("eta_distinct requires gamma > 0");
    const double gamma = params.gamma;
    const double D = params.diffusion;
    const double mu = params.mu;
    const double u = 2.0 * gamma * t;
    const double em1 = std::expm1(u);
    const double g2 = gamma * gamma;
    const double bracket =
        2.0 * g2 * gamma * (mu * mu + 1.0) + 2.0 * g2 * D * mu * em1 - D * mu * detail::sinh_minus(u);
    const double num =
        4.0 * g2 * (mu * mu - 1.0) * std::exp(5.0 * gamma * t) * std::sinh(gamma * t) * bracket;
    const double e2u = std::exp(2.0 * u);
    const double w = detail::w_cancel(u);
    const double factor1 = gamma * em1 * em1 + 4.0 * g2 * gamma * mu * mu * e2u + D * mu * w;
    const double factor2 = gamma * mu * mu * em1 * em1 + 4.0 * g2 * gamma * e2u + D * mu * w;
    const double den = factor1 * factor2;
    if (std::abs(den) < kUnderflowGuard)
        throw NumericalError("distinct-bath eta denominator underflow");
    return std::abs(num) / std::abs(den);
}

}  // namespace bohmcl::closed_form
