#include "bohmcl/fields.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "bohmcl/closed_form.hpp"

namespace bohmcl {

namespace {
constexpr double kDiffStep = 1e-5;
}

double VelocityField::dv1_dx2(double x1, double x2, double t) const {
    const double up = velocity(x1, x2 + kDiffStep, t).v1;
    const double down = velocity(x1, x2 - kDiffStep, t).v1;
    return (up - down) / (2.0 * kDiffStep);
}

void VelocityField::prime(const std::vector<double>&) const {}
void ForceField::prime(const std::vector<double>&) const {}

// ---------------------------------------------------------------------
// Closed-form backends

namespace {

class SchroedingerField final : public VelocityField {
  public:
    explicit SchroedingerField(double mu) : mu_(mu) {}
    VelocityPair velocity(double x1, double x2, double t) const override {
        return closed_form::v_sch({x1, x2, t}, mu_);
    }
    double dv1_dx2(double, double, double t) const override {
        const double mu4 = mu_ * mu_ * mu_ * mu_;
        return t * (mu4 - 1.0) / (2.0 * (t * t + mu_ * mu_) * (mu_ * mu_ * t * t + 1.0));
    }

  private:
    double mu_;
};

class CommonBathField final : public VelocityField {
  public:
    explicit CommonBathField(const PhysParams& params) : params_(params) {}
    VelocityPair velocity(double x1, double x2, double t) const override {
        return closed_form::v_common({x1, x2, t}, params_);
    }
    double dv1_dx2(double, double, double t) const override {
        return closed_form::dv1_dx2_common(t, params_);
    }

  private:
    PhysParams params_;
};

class DistinctMu1Field final : public VelocityField {
  public:
    explicit DistinctMu1Field(const PhysParams& params) : params_(params) {}
    VelocityPair velocity(double x1, double x2, double t) const override {
        return {closed_form::v_distinct_mu1(x1, t, params_),
                closed_form::v_distinct_mu1(x2, t, params_)};
    }
    double dv1_dx2(double, double, double) const override { return 0.0; }

  private:
    PhysParams params_;
};

class SchroedingerForce final : public ForceField {
  public:
    explicit SchroedingerForce(double mu) : mu_(mu) {}
    ForcePair force(double x1, double x2, double t) const override {
        return closed_form::f_qm_sch({x1, x2, t}, mu_);
    }

  private:
    double mu_;
};

}  // namespace

// ---------------------------------------------------------------------
// Engine backends

struct MomentCache::Impl {
    engine::DriftDiffusion dd;
    mutable std::map<double, engine::WignerMoments> table;
    mutable std::mutex mutex;

    engine::WignerMoments at_locked(double t) const {
        auto it = table.find(t);
        if (it != table.end()) return it->second;
        // Continue from the nearest cached earlier time.
        auto base = table.upper_bound(t);
        --base;  // table always holds t = 0
        const engine::WignerMoments m = engine::propagate(base->second, dd, t - base->first);
        table.emplace(t, m);
        return m;
    }
};

MomentCache::MomentCache(const PhysParams& params, Scenario scenario)
    : impl_(std::make_shared<Impl>()) {
    impl_->dd = engine::drift_diffusion(params, scenario);
    impl_->table.emplace(0.0, engine::initial_moments(params.mu));
}

engine::WignerMoments MomentCache::at(double t) const {
    if (t < 0.0) throw ParameterError("moment query requires t >= 0");
    std::lock_guard<std::mutex> lock(impl_->mutex);
    return impl_->at_locked(t);
}

void MomentCache::prime(const std::vector<double>& times) const {
    std::vector<double> sorted(times);
    std::sort(sorted.begin(), sorted.end());
    std::lock_guard<std::mutex> lock(impl_->mutex);
    for (double t : sorted)
        if (t >= 0.0) impl_->at_locked(t);
}

namespace {

class EngineVelocityField final : public VelocityField {
  public:
    EngineVelocityField(Scenario scenario, const PhysParams& params) : cache_(params, scenario) {}
    VelocityPair velocity(double x1, double x2, double t) const override {
        const Eigen::Matrix2d V = engine::velocity_coeffs(cache_.at(t)).coeffs;
        return {V(0, 0) * x1 + V(0, 1) * x2, V(1, 0) * x1 + V(1, 1) * x2};
    }
    double dv1_dx2(double, double, double t) const override {
        return engine::velocity_coeffs(cache_.at(t)).coeffs(0, 1);
    }
    void prime(const std::vector<double>& times) const override { cache_.prime(times); }

  private:
    MomentCache cache_;
};

class EngineForceField final : public ForceField {
  public:
    EngineForceField(Scenario scenario, const PhysParams& params) : cache_(params, scenario) {}
    ForcePair force(double x1, double x2, double t) const override {
        const engine::GaussianKernel k = engine::kernel_from_moments(cache_.at(t));
        return {engine::quantum_force(k, 1, x1, x2), engine::quantum_force(k, 2, x1, x2)};
    }
    void prime(const std::vector<double>& times) const override { cache_.prime(times); }

  private:
    MomentCache cache_;
};

}  // namespace

std::unique_ptr<VelocityField> make_velocity_field(Scenario scenario, const PhysParams& params) {
    validate_scenario(params, scenario);
    switch (scenario) {
        case Scenario::Unitary:
            return std::make_unique<SchroedingerField>(params.mu);
        case Scenario::CommonBath:
            return std::make_unique<CommonBathField>(params);
        case Scenario::DistinctBaths:
            if (params.mu == 1.0) return std::make_unique<DistinctMu1Field>(params);
            return std::make_unique<EngineVelocityField>(scenario, params);
    }
    throw ParameterError("unknown scenario");
}

std::unique_ptr<VelocityField> make_engine_velocity_field(Scenario scenario,
                                                          const PhysParams& params) {
    return std::make_unique<EngineVelocityField>(scenario, params);
}

std::unique_ptr<ForceField> make_force_field(Scenario scenario, const PhysParams& params) {
    validate_scenario(params, scenario);
    if (scenario == Scenario::Unitary) return std::make_unique<SchroedingerForce>(params.mu);
    return std::make_unique<EngineForceField>(scenario, params);
}

std::unique_ptr<ForceField> make_engine_force_field(Scenario scenario, const PhysParams& params) {
    return std::make_unique<EngineForceField>(scenario, params);
}

}  // namespace bohmcl
