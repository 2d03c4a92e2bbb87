#include "bohmcl/measures.hpp"

#include <algorithm>
#include <cmath>

#include "bohmcl/closed_form.hpp"
#include "bohmcl/trajectories.hpp"

namespace bohmcl::measures {

namespace {

constexpr double kGoldenTol = 1e-8;
constexpr double kBisectTol = 1e-8;

// Golden-section maximization on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Bisection for f(t) = level, f assumed monotone across [lo, hi].
double bisect_crossing(const std::function<double(double)>& f, double level, double lo, double hi,
                       double tol) {
    double flo = f(lo) - level;
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid) - level;
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::size_t grid_argmax(const std::vector<double>& values) {
    return std::size_t(std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace

EtaCurve sample_eta_curve(std::function<double(double)> eta, double t_end, double dt) {
    if (!(dt > 0.0) || t_end < 0.0) throw ParameterError("sampling requires dt > 0 and t_end >= 0");
    EtaCurve curve;
    const auto n = std::size_t(std::floor(t_end / dt + 1e-9));
    curve.times.reserve(n + 1);
    curve.values.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = double(k) * dt;
        curve.times.push_back(t);
        curve.values.push_back(eta(t));
    }
    curve.eval = std::move(eta);
    return curve;
}

std::function<double(double)> eta_callable(Scenario scenario, const PhysParams& params) {
    validate_scenario(params, scenario);
    switch (scenario) {
        case Scenario::Unitary:
            return [mu = params.mu](double t) { return closed_form::eta_sch(t, mu); };
        case Scenario::CommonBath:
            return [params](double t) { return closed_form::eta_common(t, params); };
        case Scenario::DistinctBaths:
            return [params](double t) { return closed_form::eta_distinct(t, params); };
    }
    throw ParameterError("unknown scenario");
}

std::function<double(double)> eta_callable_engine(Scenario scenario, const PhysParams& params) {
    MomentCache cache(params, scenario);
    return [cache](double t) {
        return std::abs(engine::velocity_coeffs(cache.at(t)).coeffs(0, 1));
    };
}

double eta_traj(const VelocityField& field, double t, double x10, double x20, double dt) {
    if (t < 0.0) throw ParameterError("eta_traj requires t >= 0");
    PositionPair x{x10, x20};
    if (t > 0.0) {
        const traj::Trajectory trajectory = traj::integrate(field, x10, x20, t, dt);
        x = trajectory.points.back();
    }
    return std::abs(field.dv1_dx2(x.x1, x.x2, t));
}

EnsembleStats eta_ensemble(const VelocityField& field, double mu, double t, std::size_t n,
                           std::uint64_t seed, double dt) {
    if (n < 2) throw ParameterError("ensemble average requires n >= 2");
    const traj::InitialEnsemble ensemble = traj::sample_initial(mu, n, seed);
    std::vector<double> values(n);
    traj::parallel_for_indexed(n, [&](std::size_t i) {
        values[i] = eta_traj(field, t, ensemble.pairs[i].x1, ensemble.pairs[i].x2, dt);
    });
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= double(n);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= double(n - 1);
    return {mean, std::sqrt(var / double(n))};
}

Peak find_peak(const EtaCurve& curve) {
    if (curve.times.size() < 3) throw NoPeakError("curve has fewer than 3 samples");
    const std::size_t i = grid_argmax(curve.values);
    if (i == 0 || i + 1 == curve.values.size())
        throw NoPeakError("maximum sits on the grid boundary; no interior peak");
    if (!curve.eval) throw ParameterError("curve carries no callable for refinement");
    const double t = golden_max(curve.eval, curve.times[i - 1], curve.times[i + 1], kGoldenTol);
    return {t, curve.eval(t)};
}

FwhmResult fwhm(const EtaCurve& curve) {
    const Peak peak = find_peak(curve);
    const double half = 0.5 * peak.value;
    const std::size_t i = grid_argmax(curve.values);
    const std::size_t n = curve.values.size();

    // Nearest half-max crossings on each side of the peak. A later revival
    // may rise above half maximum again; the width concerns the first peak
    // only, so scan outward from the peak for the first drop below half.
    std::size_t l = i;
    while (l > 0 && curve.values[l - 1] > half) --l;
    if (l == 0 && curve.values[0] > half)
        throw WindowError("left half-max crossing not bracketed in the sampled window");
    const double left_lo = l > 0 ? curve.times[l - 1] : curve.times[0];
    const double left_hi = std::min(curve.times[l], peak.t);

    std::size_t r = i;
    while (r + 1 < n && curve.values[r + 1] > half) ++r;
    if (r + 1 == n)
        throw WindowError("right half-max crossing not bracketed in the sampled window");
    const double right_lo = std::max(curve.times[r], peak.t);
    const double right_hi = curve.times[r + 1];

    FwhmResult result;
    result.t_left = bisect_crossing(curve.eval, half, left_lo, left_hi, kBisectTol);
    result.t_right = bisect_crossing(curve.eval, half, right_lo, right_hi, kBisectTol);
    result.width = result.t_right - result.t_left;
    return result;
}

std::vector<Revival> find_revivals(const EtaCurve& curve, double prominence_threshold) {
    std::vector<Revival> revivals;
    const std::size_t n = curve.values.size();
    if (n < 3) return revivals;
    std::size_t i = grid_argmax(curve.values);
    while (true) {
        // Walk down to the next valley, then up to the next local maximum.
        std::size_t v = i;
        while (v + 1 < n && curve.values[v + 1] <= curve.values[v]) ++v;
        if (v + 1 >= n) break;
        std::size_t m = v;
        while (m + 1 < n && curve.values[m + 1] >= curve.values[m]) ++m;
        if (m + 1 >= n) break;  // still rising at the window edge; not a confirmed maximum
        Revival rev;
        rev.t = curve.eval ? golden_max(curve.eval, curve.times[m - 1], curve.times[m + 1], kGoldenTol)
                           : curve.times[m];
        rev.value = curve.eval ? curve.eval(rev.t) : curve.values[m];
        rev.prominence = rev.value - curve.values[v];
        if (rev.prominence > prominence_threshold) revivals.push_back(rev);
        i = m;
    }
    return revivals;
}

std::vector<Revival> find_revivals(const EtaCurve& curve) {
    if (curve.values.empty()) return {};
    // 2% of the global peak: the signed sensitivity of the distinct-bath
    // case crosses zero once and folds back to about 1% of the peak, a
    // micro-feature of the absolute value rather than a revival. Genuine
    // common-bath revivals sit at 25% of the peak and above.
    const double peak = *std::max_element(curve.values.begin(), curve.values.end());
    return find_revivals(curve, 0.02 * peak);
}

}  // namespace bohmcl::measures
