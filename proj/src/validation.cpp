#include "bohmcl/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "bohmcl/closed_form.hpp"
#include "bohmcl/fields.hpp"
#include "bohmcl/gaussian_engine.hpp"
#include "bohmcl/io.hpp"
#include "bohmcl/measures.hpp"
#include "bohmcl/quadrature.hpp"
#include "bohmcl/trajectories.hpp"

namespace bohmcl::validation {

namespace {

using measures::EtaCurve;

std::string fmt(double v) { return io::format_number(v); }

struct Collector {
    std::vector<CheckResult> results;
    std::ostream* progress = nullptr;

    void add(const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
        if (progress)
            (*progress) << (pass ? "PASS" : "FAIL") << "  " << name << ": " << detail << "\n";
    }
};

// --- 1, 2: reference FWHM values for the distinct-bath measure ---------

void check_fwhm_reference(Collector& out) {
    struct Case {
        double temperature;
        double mu;
        double expected;
    };
    const double tol = 2e-3;

    const Case vs_temperature[] = {{10.0, 0.5, 0.6737}, {15.0, 0.5, 0.6072}, {20.0, 0.5, 0.5612}};
    bool pass = true;
    std::ostringstream detail;
    for (const Case& c : vs_temperature) {
        const PhysParams p = make_params(0.1, c.temperature, c.mu);
        const EtaCurve curve =
            measures::sample_eta_curve(measures::eta_callable(Scenario::DistinctBaths, p), 6.0, 0.002);
        const double width = measures::fwhm(curve).width;
        pass = pass && std::abs(width - c.expected) <= tol;
        detail << "T=" << fmt(c.temperature) << " width=" << fmt(width) << " expected "
               << fmt(c.expected) << "; ";
    }
    out.add("fwhm-vs-temperature (distinct, gamma=0.1, mu=0.5, tol 2e-3)", pass, detail.str());

    const Case vs_mu[] = {
        {10.0, 0.2, 0.5727}, {10.0, 0.4, 0.6721}, {10.0, 0.7, 0.6680}, {10.0, 0.9, 0.6644}};
    pass = true;
    detail.str("");
    for (const Case& c : vs_mu) {
        const PhysParams p = make_params(0.1, c.temperature, c.mu);
        const EtaCurve curve =
            measures::sample_eta_curve(measures::eta_callable(Scenario::DistinctBaths, p), 6.0, 0.002);
        const double width = measures::fwhm(curve).width;
        pass = pass && std::abs(width - c.expected) <= tol;
        detail << "mu=" << fmt(c.mu) << " width=" << fmt(width) << " expected " << fmt(c.expected)
               << "; ";
    }
    out.add("fwhm-vs-mu (distinct, gamma=0.1, T=10, tol 2e-3)", pass, detail.str());
}

// --- 3: separable state carries no sensitivity -------------------------

void check_separable_null(Collector& out) {
    const PhysParams p = make_params(0.1, 10.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k)
        worst = std::max(worst, closed_form::eta_distinct(0.01 * k, p));
    out.add("separable-null (distinct, mu=1, t in [0,10])", worst < 1e-12,
            "max eta=" + fmt(worst) + " expected < 1e-12");
}

// --- 4: engine reproduces the closed-form fields ------------------------

void check_oracle_equivalence(Collector& out) {
    const double xs[] = {-3.0, -1.5, 0.0, 1.5, 3.0};
    const double ts[] = {0.1, 0.5, 1.0, 2.0, 5.0};
    const double tol_v = 1e-8;
    double worst = 0.0;
    std::string worst_at;

    const auto compare = [&](Scenario scenario, const PhysParams& p,
                             const std::function<VelocityPair(double, double, double)>& closed,
                             const std::string& label) {
        const auto field = make_engine_velocity_field(scenario, p);
        for (double t : ts)
            for (double x1 : xs)
                for (double x2 : xs) {
                    const VelocityPair ve = field->velocity(x1, x2, t);
                    const VelocityPair vc = closed(x1, x2, t);
                    const double dev = std::max(std::abs(ve.v1 - vc.v1), std::abs(ve.v2 - vc.v2));
                    if (dev > worst) {
                        worst = dev;
                        worst_at = label + " t=" + fmt(t);
                    }
                }
    };

    for (double mu : {0.2, 0.5, 0.9}) {
        const PhysParams p = make_params(0.0, 0.0, mu);
        compare(
            Scenario::Unitary, p,
            [mu](double x1, double x2, double t) { return closed_form::v_sch({x1, x2, t}, mu); },
            "unitary mu=" + fmt(mu));
    }
    for (double mu : {0.2, 0.5, 0.9})
        for (double T : {10.0, 20.0}) {
            const PhysParams p = make_params(0.1, T, mu);
            compare(
                Scenario::CommonBath, p,
                [p](double x1, double x2, double t) {
                    return closed_form::v_common({x1, x2, t}, p);
                },
                "common mu=" + fmt(mu) + " T=" + fmt(T));
        }
    {
        const PhysParams p = make_params(0.1, 10.0, 1.0);
        compare(
            Scenario::DistinctBaths, p,
            [p](double x1, double x2, double t) {
                return VelocityPair{closed_form::v_distinct_mu1(x1, t, p),
                                    closed_form::v_distinct_mu1(x2, t, p)};
            },
            "distinct mu=1");
    }
    out.add("oracle-equivalence velocities (tol 1e-8)", worst <= tol_v,
            "max |engine - closed| = " + fmt(worst) + " at " + worst_at);

    const double tol_eta = 1e-7;
    double worst_eta = 0.0;
    for (double mu : {0.2, 0.5}) {
        const PhysParams p = make_params(0.1, 10.0, mu);
        const auto engine_eta = measures::eta_callable_engine(Scenario::DistinctBaths, p);
        for (int k = 0; k <= 200; ++k) {
            const double t = 0.05 * k;
            worst_eta =
                std::max(worst_eta, std::abs(engine_eta(t) - closed_form::eta_distinct(t, p)));
        }
    }
    out.add("oracle-equivalence eta (distinct, general mu, tol 1e-7)", worst_eta <= tol_eta,
            "max |engine eta - closed eta| = " + fmt(worst_eta));
}

// --- 5: peak closed forms ----------------------------------------------

void check_peak_closed_forms(Collector& out) {
    bool pass = true;
    double worst_t = 0.0, worst_v = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (int i = 1; i <= 9; ++i) {
        const double mu = 0.1 * i;
        const closed_form::EtaPeak peak = closed_form::eta_sch_peak(mu);
        const EtaCurve curve = measures::sample_eta_curve(
            [mu](double t) { return closed_form::eta_sch(t, mu); }, 5.0, 0.001);
        const measures::Peak numeric = measures::find_peak(curve);
        worst_t = std::max(worst_t, std::abs(numeric.t - peak.t_max));
        worst_v = std::max(worst_v, std::abs(numeric.value - peak.eta_max));
        decreasing = decreasing && peak.eta_max < previous;
        previous = peak.eta_max;
    }
    pass = worst_t <= 1e-6 && worst_v <= 1e-6 && decreasing;
    out.add("peak-closed-forms (mu grid 0.1..0.9, tol 1e-6)", pass,
            "max |t - t_max| = " + fmt(worst_t) + ", max |value - eta_max| = " + fmt(worst_v) +
                ", eta_max strictly decreasing = " + (decreasing ? "yes" : "no"));
}

// --- 6: Newtonian-residual consistency ----------------------------------

void check_newton_residual(Collector& out) {
    const double tol = 1e-4;
    const traj::InitialEnsemble ensemble = traj::sample_initial(0.5, 5, 20250810u);
    double worst = 0.0;
    std::string worst_scenario;
    for (Scenario scenario :
         {Scenario::Unitary, Scenario::DistinctBaths, Scenario::CommonBath}) {
        const PhysParams p = scenario == Scenario::Unitary ? make_params(0.0, 0.0, 0.5)
                                                           : make_params(0.1, 10.0, 0.5);
        const auto velocity = make_velocity_field(scenario, p);
        const auto force = make_force_field(scenario, p);
        for (const PositionPair& x0 : ensemble.pairs) {
            const traj::Trajectory trajectory =
                traj::integrate(*velocity, x0.x1, x0.x2, 2.0, 1e-3);
            const traj::ResidualSeries res = traj::newton_residual(trajectory, scenario, p, *force);
            if (res.max_abs > worst) {
                worst = res.max_abs;
                worst_scenario = to_string(scenario);
            }
        }
    }
    out.add("newton-residual (5 Born-sampled trajectories per scenario, tol 1e-4)", worst <= tol,
            "max residual = " + fmt(worst) + " (worst scenario: " + worst_scenario + ")");
}

// --- 7: unitary trajectories against the closed form ---------------------

void check_trajectory_closed_form(Collector& out) {
    const double mu = 0.4;
    const PhysParams p = make_params(0.0, 0.0, mu);
    const auto field = make_velocity_field(Scenario::Unitary, p);
    double worst = 0.0;
    for (double a : {-1.5, -0.75, 0.0, 0.75, 1.5})
        for (double b : {-1.5, -0.75, 0.0, 0.75, 1.5}) {
            const traj::Trajectory trajectory = traj::integrate(*field, a, b, 6.0, 1e-3);
            for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
                const PositionPair exact = closed_form::traj_sch(trajectory.times[k], a, b, mu);
                worst = std::max(worst, std::abs(trajectory.points[k].x1 - exact.x1));
                worst = std::max(worst, std::abs(trajectory.points[k].x2 - exact.x2));
            }
        }

    // Convergence order from two coarse runs against the exact solution.
    const auto max_err = [&](double dt) {
        const traj::Trajectory t = traj::integrate(*field, 1.3, -0.7, 6.0, dt);
        double err = 0.0;
        for (std::size_t k = 0; k < t.times.size(); ++k) {
            const PositionPair exact = closed_form::traj_sch(t.times[k], 1.3, -0.7, mu);
            err = std::max(err, std::abs(t.points[k].x1 - exact.x1));
            err = std::max(err, std::abs(t.points[k].x2 - exact.x2));
        }
        return err;
    };
    const double e_coarse = max_err(0.1);
    const double e_fine = max_err(0.05);
    const double order = std::log2(e_coarse / e_fine);

    const bool pass = worst <= 1e-6 && order >= 3.5 && order <= 4.5;
    out.add("trajectory-closed-form (unitary mu=0.4, 5x5 grid, tol 1e-6)", pass,
            "max deviation = " + fmt(worst) + ", convergence order = " + fmt(order) +
                " expected in [3.5, 4.5]");
}

// --- 8: revival structure and temperature orderings ----------------------

void check_revival_structure(Collector& out) {
    struct Analytics {
        double peak;
        double width;
        std::vector<measures::Revival> revivals;
    };
    const auto analyze = [](Scenario scenario, double T) {
        const PhysParams p = make_params(0.1, T, 0.5);
        const EtaCurve curve =
            measures::sample_eta_curve(measures::eta_callable(scenario, p), 6.0, 0.002);
        Analytics a;
        a.peak = measures::find_peak(curve).value;
        a.width = measures::fwhm(curve).width;
        a.revivals = measures::find_revivals(curve);
        return a;
    };

    std::vector<Analytics> common, distinct;
    for (double T : {10.0, 15.0, 20.0}) {
        common.push_back(analyze(Scenario::CommonBath, T));
        distinct.push_back(analyze(Scenario::DistinctBaths, T));
    }

    bool pass = true;
    std::ostringstream detail;
    for (std::size_t i = 0; i < 3; ++i) {
        pass = pass && !common[i].revivals.empty();
        pass = pass && distinct[i].revivals.empty();
    }
    detail << "common revivals={" << common[0].revivals.size() << "," << common[1].revivals.size()
           << "," << common[2].revivals.size() << "} (expected >=1 each), distinct revivals={"
           << distinct[0].revivals.size() << "," << distinct[1].revivals.size() << ","
           << distinct[2].revivals.size() << "} (expected 0); ";

    pass = pass && distinct[0].peak < distinct[1].peak && distinct[1].peak < distinct[2].peak;
    pass = pass && distinct[0].width > distinct[1].width && distinct[1].width > distinct[2].width;
    detail << "distinct peaks " << fmt(distinct[0].peak) << "<" << fmt(distinct[1].peak) << "<"
           << fmt(distinct[2].peak) << ", widths " << fmt(distinct[0].width) << ">"
           << fmt(distinct[1].width) << ">" << fmt(distinct[2].width) << "; ";

    pass = pass && common[0].peak > common[1].peak && common[1].peak > common[2].peak;
    pass = pass && common[0].width > common[1].width && common[1].width > common[2].width;
    const double rev0 = common[0].revivals.empty() ? 0.0 : common[0].revivals.front().value;
    const double rev1 = common[1].revivals.empty() ? 0.0 : common[1].revivals.front().value;
    const double rev2 = common[2].revivals.empty() ? 0.0 : common[2].revivals.front().value;
    pass = pass && rev0 < rev1 && rev1 < rev2;
    detail << "common peaks " << fmt(common[0].peak) << ">" << fmt(common[1].peak) << ">"
           << fmt(common[2].peak) << ", widths " << fmt(common[0].width) << ">"
           << fmt(common[1].width) << ">" << fmt(common[2].width) << ", first revivals "
           << fmt(rev0) << "<" << fmt(rev1) << "<" << fmt(rev2);

    out.add("revival-structure (gamma=0.1, mu=0.5, T in {10,15,20})", pass, detail.str());
}

// --- 9: Born-weighted average degenerates to the single-trajectory value --

void check_ensemble_degeneracy(Collector& out) {
    const double probes[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    const double dt = 5e-3;
    double worst = 0.0;
    for (Scenario scenario :
         {Scenario::Unitary, Scenario::DistinctBaths, Scenario::CommonBath}) {
        const PhysParams p = scenario == Scenario::Unitary ? make_params(0.0, 0.0, 0.5)
                                                           : make_params(0.1, 10.0, 0.5);
        const auto field = make_velocity_field(scenario, p);
        for (double t : probes) {
            const measures::EnsembleStats stats =
                measures::eta_ensemble(*field, p.mu, t, 1000, 4242u, dt);
            const double single = measures::eta_traj(*field, t, 0.3, -0.2, dt);
            worst = std::max(worst, std::abs(stats.mean - single));
        }
    }
    out.add("ensemble-degeneracy (n=1000, 5 probe times per scenario, tol 1e-10)", worst <= 1e-10,
            "max |ensemble mean - single trajectory| = " + fmt(worst));
}

// --- 10: conservation and structure of the kernel ------------------------

void check_conservation_structure(Collector& out) {
    bool pass = true;
    std::ostringstream detail;

    double worst_trace = 0.0;
    for (Scenario scenario :
         {Scenario::Unitary, Scenario::DistinctBaths, Scenario::CommonBath}) {
        const PhysParams p = scenario == Scenario::Unitary ? make_params(0.0, 0.0, 0.5)
                                                           : make_params(0.1, 10.0, 0.5);
        const engine::DriftDiffusion dd = engine::drift_diffusion(p, scenario);
        for (double t : {0.0, 1.0, 5.0}) {
            const engine::WignerMoments m =
                engine::propagate(engine::initial_moments(p.mu), dd, t);
            const engine::GaussianKernel kernel = engine::kernel_from_moments(m);
            const double span =
                10.0 * std::sqrt(std::max(m.cov(0, 0), m.cov(2, 2)));
            const double trace = quadrature::integrate_square(
                [&](double x1, double x2) {
                    return engine::kernel_value(kernel, x1, x1, x2, x2).real();
                },
                -span, span, 96);
            worst_trace = std::max(worst_trace, std::abs(trace - 1.0));
        }
    }
    pass = pass && worst_trace <= 1e-8;
    detail << "max |trace - 1| = " << fmt(worst_trace) << " (tol 1e-8); ";

    std::mt19937_64 rng(99u);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    double worst_sym = 0.0;
    {
        const PhysParams p = make_params(0.1, 10.0, 0.5);
        const engine::DriftDiffusion dd = engine::drift_diffusion(p, Scenario::CommonBath);
        const engine::WignerMoments m = engine::propagate(engine::initial_moments(p.mu), dd, 1.5);
        const engine::GaussianKernel kernel = engine::kernel_from_moments(m);
        for (int i = 0; i < 50; ++i) {
            const double x1 = unif(rng), y1 = unif(rng), x2 = unif(rng), y2 = unif(rng);
            const double da = engine::kernel_amplitude(kernel, x1, y1, x2, y2) -
                              engine::kernel_amplitude(kernel, y1, x1, y2, x2);
            const double ds = engine::kernel_phase(kernel, x1, y1, x2, y2) +
                              engine::kernel_phase(kernel, y1, x1, y2, x2);
            worst_sym = std::max({worst_sym, std::abs(da), std::abs(ds)});
        }
    }
    pass = pass && worst_sym <= 1e-10;
    detail << "max amplitude-symmetry / phase-antisymmetry defect = " << fmt(worst_sym)
           << " (tol 1e-10); ";

    double worst_purity = 0.0;
    for (double mu : {0.2, 0.5, 1.0}) {
        const engine::WignerMoments m = engine::initial_moments(mu);
        worst_purity = std::max(worst_purity,
                                std::abs((2.0 * m.cov).determinant() - 1.0));
    }
    pass = pass && worst_purity <= 1e-10;
    detail << "max |det(2 cov) - 1| = " << fmt(worst_purity) << " (tol 1e-10)";

    out.add("conservation-structure (trace, symmetry, purity)", pass, detail.str());
}

}  // namespace

std::vector<CheckResult> run_all(std::ostream* progress) {
    Collector out;
    out.progress = progress;
    check_fwhm_reference(out);
    check_separable_null(out);
    check_oracle_equivalence(out);
    check_peak_closed_forms(out);
    check_newton_residual(out);
    check_trajectory_closed_form(out);
    check_revival_structure(out);
    check_ensemble_degeneracy(out);
    check_conservation_structure(out);
    return out.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

}  // namespace bohmcl::validation
