#pragma once

#include "rrb/config.hpp"
#include "rrb/matrix.hpp"
#include "rrb/vec3.hpp"

namespace rrb {

enum class FieldKind { HamiltonPoisson, EpsilonRevised };

/// Conservative right-hand side: xdot = x cross m(x).
Vec3 rhs_hp(const SystemConfig& cfg, const State& x);

/// Revised right-hand side: xdot = x cross m + epsilon (x cross m) cross m.
/// With epsilon == 0 this takes the exact HamiltonPoisson code path.
Vec3 rhs_revised(const SystemConfig& cfg, const State& x);

/// One of the two vector fields bound to a configuration; the unit the
/// integrator and Jacobian operate on. Selector and configuration are fixed
/// at construction.
class VectorField {
  public:
    VectorField(FieldKind kind, const SystemConfig& cfg) : kind_{kind}, cfg_{cfg} {}

    FieldKind kind() const { return kind_; }
    const SystemConfig& cfg() const { return cfg_; }

    Vec3 operator()(const State& x) const {
        return kind_ == FieldKind::HamiltonPoisson ? rhs_hp(cfg_, x) : rhs_revised(cfg_, x);
    }

  private:
    FieldKind kind_;
    SystemConfig cfg_;
};

struct IntegralRates {
    double dH_dt;  // m(x) . xdot  -- vanishes identically along the revised flow
    double dC_dt;  // x . xdot     -- equals -epsilon |x cross m|^2
};

/// Analytic instantaneous rates of the two first integrals along the revised
/// field (xdot evaluated as rhs_revised at x).
IntegralRates integral_rates(const SystemConfig& cfg, const State& x);

/// Central finite-difference Jacobian of the selected field,
/// step h = 1e-6 (1 + |x|) per coordinate.
Matrix3 jacobian(const VectorField& field, const State& x);

}  // namespace rrb
