#include <doctest.h>

#include <cmath>

#include "bohmcl/closed_form.hpp"
#include "bohmcl/trajectories.hpp"

using namespace bohmcl;
using namespace bohmcl::traj;

TEST_CASE("integrated unitary trajectories match the closed form") {
    const PhysParams p = make_params(0.0, 0.0, 0.4);
    const auto field = make_velocity_field(Scenario::Unitary, p);
    const Trajectory t = integrate(*field, 1.5, 0.0, 6.0, 1e-3);
    REQUIRE(t.times.size() == 6001);
    double worst = 0.0;
    for (std::size_t k = 0; k < t.times.size(); ++k) {
        const PositionPair exact = closed_form::traj_sch(t.times[k], 1.5, 0.0, 0.4);
        worst = std::max(worst, std::abs(t.points[k].x1 - exact.x1));
        worst = std::max(worst, std::abs(t.points[k].x2 - exact.x2));
    }
    CHECK(worst < 1e-6);

    // stored velocities are the field evaluated at the stored points
    for (std::size_t k = 0; k < t.times.size(); k += 509) {
        const VelocityPair v = field->velocity(t.points[k].x1, t.points[k].x2, t.times[k]);
        CHECK(t.velocities[k].v1 == v.v1);
        CHECK(t.velocities[k].v2 == v.v2);
    }
}

TEST_CASE("closed-form agreement across mu values and initial grid") {
    for (double mu : {0.2, 0.5, 0.9}) {
        const auto field = make_velocity_field(Scenario::Unitary, make_params(0.0, 0.0, mu));
        double worst = 0.0;
        for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0})
            for (double b : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
                const Trajectory t = integrate(*field, a, b, 4.0, 1e-3);
                for (std::size_t k = 0; k < t.times.size(); k += 37) {
                    const PositionPair exact = closed_form::traj_sch(t.times[k], a, b, mu);
                    worst = std::max(worst, std::abs(t.points[k].x1 - exact.x1));
                    worst = std::max(worst, std::abs(t.points[k].x2 - exact.x2));
                }
            }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("origin is a fixed point and equal coordinates stay equal") {
    for (Scenario s : {Scenario::Unitary, Scenario::DistinctBaths, Scenario::CommonBath}) {
        const PhysParams p =
            s == Scenario::Unitary ? make_params(0.0, 0.0, 0.5) : make_params(0.1, 10.0, 0.5);
        const auto field = make_velocity_field(s, p);
        const Trajectory t = integrate(*field, 0.0, 0.0, 2.0, 0.01);
        for (const PositionPair& x : t.points) {
            CHECK(x.x1 == 0.0);
            CHECK(x.x2 == 0.0);
        }
    }

    const auto field = make_velocity_field(Scenario::Unitary, make_params(0.0, 0.0, 0.4));
    const Trajectory t = integrate(*field, 0.8, 0.8, 3.0, 0.01);
    for (const PositionPair& x : t.points) CHECK(x.x1 == doctest::Approx(x.x2).epsilon(1e-12));
}

TEST_CASE("swap covariance: (a,b) read through X2 equals (b,a) read through X1") {
    for (Scenario s : {Scenario::Unitary, Scenario::CommonBath}) {
        const PhysParams p =
            s == Scenario::Unitary ? make_params(0.0, 0.0, 0.6) : make_params(0.1, 10.0, 0.6);
        const auto field = make_velocity_field(s, p);
        const Trajectory ab = integrate(*field, 1.1, -0.4, 3.0, 0.01);
        const Trajectory ba = integrate(*field, -0.4, 1.1, 3.0, 0.01);
        for (std::size_t k = 0; k < ab.times.size(); k += 17) {
            CHECK(ab.points[k].x2 == doctest::Approx(ba.points[k].x1).epsilon(1e-13));
            CHECK(ab.points[k].x1 == doctest::Approx(ba.points[k].x2).epsilon(1e-13));
        }
    }
}

TEST_CASE("step-halving convergence order is fourth order") {
    const auto field = make_velocity_field(Scenario::Unitary, make_params(0.0, 0.0, 0.4));
    const auto max_err = [&](double dt) {
        const Trajectory t = integrate(*field, 1.3, -0.7, 6.0, dt);
        double err = 0.0;
        for (std::size_t k = 0; k < t.times.size(); ++k) {
            const PositionPair exact = closed_form::traj_sch(t.times[k], 1.3, -0.7, 0.4);
            err = std::max(err, std::abs(t.points[k].x1 - exact.x1));
        }
        return err;
    };
    const double order = std::log2(max_err(0.1) / max_err(0.05));
    CHECK(order > 3.5);
    CHECK(order < 4.5);
}

TEST_CASE("validation mode accepts a sane step and flags a coarse one") {
    const auto field = make_velocity_field(Scenario::Unitary, make_params(0.0, 0.0, 0.4));
    CHECK_NOTHROW(integrate(*field, 1.0, 0.0, 2.0, 1e-2, true));
    CHECK_THROWS_AS(integrate(*field, 1.0, 0.0, 2.0, 0.0), ParameterError);
    CHECK_THROWS_AS(integrate(*field, 1.0, 0.0, -1.0, 0.01), ParameterError);

    // strongly squeezed field varies on the scale mu near t = 0; a huge
    // step cannot reach step-halving agreement at 1e-8
    const auto sharp = make_velocity_field(Scenario::Unitary, make_params(0.0, 0.0, 0.1));
    CHECK_THROWS_AS(integrate(*sharp, 1.5, 0.0, 6.0, 0.75, true), NumericalError);
}

TEST_CASE("Born-rule sampling is deterministic and converges to the state moments") {
    const InitialEnsemble a = sample_initial(0.4, 1000, 99u);
    const InitialEnsemble b = sample_initial(0.4, 1000, 99u);
    REQUIRE(a.pairs.size() == 1000);
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        CHECK(a.pairs[i].x1 == b.pairs[i].x1);
        CHECK(a.pairs[i].x2 == b.pairs[i].x2);
    }

    const std::size_t n = 100000;
    const InitialEnsemble big = sample_initial(0.4, n, 7u);
    double var1 = 0.0, cov12 = 0.0, mean1 = 0.0, mean2 = 0.0;
    for (const PositionPair& x : big.pairs) {
        mean1 += x.x1;
        mean2 += x.x2;
    }
    mean1 /= double(n);
    mean2 /= double(n);
    for (const PositionPair& x : big.pairs) {
        var1 += (x.x1 - mean1) * (x.x1 - mean1);
        cov12 += (x.x1 - mean1) * (x.x2 - mean2);
    }
    var1 /= double(n - 1);
    cov12 /= double(n - 1);
    // Var(x1) = 0.725, Cov(x1,x2) = 0.525; allow 3 standard errors
    const double se_var = 0.725 * std::sqrt(2.0 / double(n - 1));
    CHECK(std::abs(var1 - 0.725) < 3.0 * se_var);
    CHECK(std::abs(cov12 - 0.525) < 4.0 * 0.725 / std::sqrt(double(n)));

    // mu = 1: uncorrelated coordinates
    const InitialEnsemble sep = sample_initial(1.0, n, 11u);
    double corr = 0.0;
    for (const PositionPair& x : sep.pairs) corr += x.x1 * x.x2;
    corr /= double(n) * 0.5;  // Var = 1/2 each
    CHECK(std::abs(corr) < 0.02);

    CHECK_THROWS_AS(sample_initial(0.4, 0, 1u), ParameterError);
}

TEST_CASE("Newtonian residual along trajectories") {
    // unitary: dv/dt = F_qm
    {
        const PhysParams p = make_params(0.0, 0.0, 0.5);
        const auto field = make_velocity_field(Scenario::Unitary, p);
        const auto force = make_force_field(Scenario::Unitary, p);
        const Trajectory t = integrate(*field, 1.0, -1.0, 2.0, 1e-3);
        const ResidualSeries res = newton_residual(t, Scenario::Unitary, p, *force);
        CHECK(res.max_abs < 1e-5);
    }
    // common bath: dv/dt = F_qm - 2 gamma (v1 + v2), engine force
    {
        const PhysParams p = make_params(0.1, 10.0, 0.5);
        const auto field = make_velocity_field(Scenario::CommonBath, p);
        const auto force = make_force_field(Scenario::CommonBath, p);
        const Trajectory t = integrate(*field, 0.7, -0.3, 2.0, 1e-3);
        const ResidualSeries res = newton_residual(t, Scenario::CommonBath, p, *force);
        CHECK(res.max_abs < 1e-4);
    }
    // the resting trajectory has exactly zero residual
    {
        const PhysParams p = make_params(0.1, 10.0, 0.5);
        const auto field = make_velocity_field(Scenario::CommonBath, p);
        const auto force = make_force_field(Scenario::CommonBath, p);
        const Trajectory t = integrate(*field, 0.0, 0.0, 1.0, 1e-2);
        const ResidualSeries res = newton_residual(t, Scenario::CommonBath, p, *force);
        CHECK(res.max_abs == 0.0);
    }
}

TEST_CASE("non-crossing check on a unitary fan") {
    const PhysParams p = make_params(0.0, 0.0, 0.4);
    const auto field = make_velocity_field(Scenario::Unitary, p);
    std::vector<Trajectory> fan;
    for (double a : {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5})
        fan.push_back(integrate(*field, a, 0.0, 6.0, 0.01));
    const CrossingReport report = non_crossing_check(fan);
    CHECK(report.ok());

    // identical starting configurations are exempt
    std::vector<Trajectory> twins;
    twins.push_back(integrate(*field, 0.5, 0.0, 1.0, 0.01));
    twins.push_back(integrate(*field, 0.5, 0.0, 1.0, 0.01));
    CHECK(non_crossing_check(twins).ok());
}

TEST_CASE("a single-coordinate coincidence is not a configuration-space crossing") {
    // distinct baths at mu = 0.5: trajectories of particle 2 launched from
    // x20 = 0 cross in the (t, x2) plane for different x10, yet stay apart
    // in configuration space.
    const PhysParams p = make_params(0.1, 15.0, 0.5);
    const auto field = make_velocity_field(Scenario::DistinctBaths, p);
    std::vector<Trajectory> bundle;
    for (double a : {-1.0, 1.0}) bundle.push_back(integrate(*field, a, 0.0, 4.0, 0.01));
    CHECK(non_crossing_check(bundle).ok());
}

TEST_CASE("distinct baths at mu = 1 decouple particle 2 from x10") {
    const PhysParams p = make_params(0.1, 10.0, 1.0);
    const auto field = make_engine_velocity_field(Scenario::DistinctBaths, p);
    const Trajectory a = integrate(*field, -1.5, 0.7, 3.0, 0.01);
    const Trajectory b = integrate(*field, 1.5, 0.7, 3.0, 0.01);
    for (std::size_t k = 0; k < a.times.size(); ++k)
        CHECK(std::abs(a.points[k].x2 - b.points[k].x2) < 1e-9);
}
