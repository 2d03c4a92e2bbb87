#include "bohmcl/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "bohmcl/gaussian_engine.hpp"

namespace bohmcl::traj {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kValidateTol = 1e-8;

std::vector<double> time_grid(double t_end, double dt) {
    if (!(dt > 0.0)) throw ParameterError("dt must be > 0");
    if (t_end < 0.0) throw ParameterError("t_end must be >= 0");
    std::vector<double> times{0.0};
    const auto n_whole = std::size_t(std::floor(t_end / dt + 1e-9));
    for (std::size_t k = 1; k <= n_whole; ++k) times.push_back(double(k) * dt);
    if (times.back() < t_end - 1e-9 * std::max(1.0, t_end)) times.push_back(t_end);
    return times;
}

Trajectory integrate_on_grid(const VelocityField& field, double x10, double x20,
                             const std::vector<double>& times) {
    std::vector<double> prime_times;
    prime_times.reserve(2 * times.size());
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        prime_times.push_back(times[k]);
        prime_times.push_back(0.5 * (times[k] + times[k + 1]));
    }
    prime_times.push_back(times.back());
    field.prime(prime_times);

    Trajectory out;
    out.x10 = x10;
    out.x20 = x20;
    out.times = times;
    out.points.reserve(times.size());
    out.velocities.reserve(times.size());

    PositionPair x{x10, x20};
    out.points.push_back(x);
    out.velocities.push_back(field.velocity(x.x1, x.x2, times.front()));
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double t = times[k];
        const double h = times[k + 1] - t;
        const VelocityPair k1 = field.velocity(x.x1, x.x2, t);
        const VelocityPair k2 =
            field.velocity(x.x1 + 0.5 * h * k1.v1, x.x2 + 0.5 * h * k1.v2, t + 0.5 * h);
        const VelocityPair k3 =
            field.velocity(x.x1 + 0.5 * h * k2.v1, x.x2 + 0.5 * h * k2.v2, t + 0.5 * h);
        const VelocityPair k4 = field.velocity(x.x1 + h * k3.v1, x.x2 + h * k3.v2, t + h);
        x.x1 += h / 6.0 * (k1.v1 + 2.0 * k2.v1 + 2.0 * k3.v1 + k4.v1);
        x.x2 += h / 6.0 * (k1.v2 + 2.0 * k2.v2 + 2.0 * k3.v2 + k4.v2);
        if (!std::isfinite(x.x1) || !std::isfinite(x.x2))
            throw NumericalError("trajectory integration produced a non-finite position");
        out.points.push_back(x);
        out.velocities.push_back(field.velocity(x.x1, x.x2, times[k + 1]));
    }
    return out;
}

}  // namespace

Trajectory integrate(const VelocityField& field, double x10, double x20, double t_end, double dt,
                     bool validate) {
    const std::vector<double> times = time_grid(t_end, dt);
    Trajectory coarse = integrate_on_grid(field, x10, x20, times);
    if (validate && times.size() > 1) {
        std::vector<double> fine_times;
        for (std::size_t k = 0; k + 1 < times.size(); ++k) {
            fine_times.push_back(times[k]);
            fine_times.push_back(0.5 * (times[k] + times[k + 1]));
        }
        fine_times.push_back(times.back());
        const Trajectory fine = integrate_on_grid(field, x10, x20, fine_times);
        double worst = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            worst = std::max(worst, std::abs(coarse.points[k].x1 - fine.points[2 * k].x1));
            worst = std::max(worst, std::abs(coarse.points[k].x2 - fine.points[2 * k].x2));
        }
        if (worst > kValidateTol)
            throw NumericalError("step-halving disagreement " + std::to_string(worst) +
                                 " exceeds 1e-8; reduce dt");
    }
    return coarse;
}

InitialEnsemble sample_initial(double mu, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw ParameterError("ensemble size must be >= 1");
    const engine::WignerMoments m0 = engine::initial_moments(mu);
    const double a = m0.cov(0, 0);
    const double b = m0.cov(0, 2);
    // Cholesky factor of [[a, b], [b, a]].
    const double l11 = std::sqrt(a);
    const double l21 = b / l11;
    const double l22 = std::sqrt(a - l21 * l21);

    std::mt19937_64 rng(seed);
    const auto uniform = [&rng]() {
        // 53-bit mantissa in (0, 1]; avoids log(0) below.
        return (double(rng() >> 11) + 1.0) * 0x1.0p-53;
    };

    InitialEnsemble ensemble;
    ensemble.seed = seed;
    ensemble.mu = mu;
    ensemble.pairs.reserve(n);
    while (ensemble.pairs.size() < n) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double z0 = radius * std::cos(2.0 * kPi * u2);
        const double z1 = radius * std::sin(2.0 * kPi * u2);
        ensemble.pairs.push_back({l11 * z0, l21 * z0 + l22 * z1});
    }
    return ensemble;
}

ResidualSeries newton_residual(const Trajectory& trajectory, Scenario scenario,
                               const PhysParams& params, const ForceField& force) {
    validate_scenario(params, scenario);
    const std::size_t n = trajectory.times.size();
    if (n < 3) throw ParameterError("trajectory too short for central differencing");

    force.prime(trajectory.times);
    ResidualSeries res;
    res.times.reserve(n - 2);
    res.r1.reserve(n - 2);
    res.r2.reserve(n - 2);
    const double g2 = 2.0 * params.gamma;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double h_prev = trajectory.times[k] - trajectory.times[k - 1];
        const double h_next = trajectory.times[k + 1] - trajectory.times[k];
        const double dv1 =
            (trajectory.velocities[k + 1].v1 - trajectory.velocities[k - 1].v1) / (h_prev + h_next);
        const double dv2 =
            (trajectory.velocities[k + 1].v2 - trajectory.velocities[k - 1].v2) / (h_prev + h_next);
        const PositionPair& x = trajectory.points[k];
        const ForcePair f = force.force(x.x1, x.x2, trajectory.times[k]);
        const VelocityPair& v = trajectory.velocities[k];
        double rhs1 = f.f1;
        double rhs2 = f.f2;
        if (scenario != Scenario::Unitary) {
            rhs1 -= g2 * v.v1;
            rhs2 -= g2 * v.v2;
            if (scenario == Scenario::CommonBath) {
                rhs1 -= g2 * v.v2;
                rhs2 -= g2 * v.v1;
            }
        }
        res.times.push_back(trajectory.times[k]);
        res.r1.push_back(dv1 - rhs1);
        res.r2.push_back(dv2 - rhs2);
        res.max_abs = std::max({res.max_abs, std::abs(res.r1.back()), std::abs(res.r2.back())});
    }
    return res;
}

CrossingReport non_crossing_check(std::span<const Trajectory> trajectories, double threshold) {
    CrossingReport report;
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        for (std::size_t j = i + 1; j < trajectories.size(); ++j) {
            const Trajectory& a = trajectories[i];
            const Trajectory& b = trajectories[j];
            if (a.times.size() != b.times.size())
                throw ParameterError("non-crossing check requires a shared time grid");
            if (a.x10 == b.x10 && a.x20 == b.x20) continue;  // same configuration point
            double best = std::numeric_limits<double>::infinity();
            double best_t = 0.0;
            for (std::size_t k = 0; k < a.times.size(); ++k) {
                const double d = std::hypot(a.points[k].x1 - b.points[k].x1,
                                            a.points[k].x2 - b.points[k].x2);
                if (d < best) {
                    best = d;
                    best_t = a.times[k];
                }
            }
            if (best <= threshold) report.violations.push_back({i, j, best_t, best});
        }
    }
    return report;
}

void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace bohmcl::traj
