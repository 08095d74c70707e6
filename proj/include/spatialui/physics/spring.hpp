#pragma once

#include <cmath>

#include "spatialui/error.hpp"

namespace spatialui {

template <typename Scalar>
struct SpringParamsT {
    Scalar stiffness = Scalar(300);  // N/m
    Scalar damping = Scalar(0);      // N*s/m
    Scalar mass = Scalar(0.1);       // kg

    bool valid() const {
        return std::isfinite(stiffness) && std::isfinite(damping) && std::isfinite(mass) &&
               stiffness > 0 && mass > 0 && damping >= 0;
    }

    Scalar critical_damping() const { return Scalar(2) * std::sqrt(stiffness * mass); }
};

/// Displacement from the anchor (x = 0) and its rate.
template <typename Scalar>
struct SpringStateT {
    Scalar displacement = Scalar(0);
    Scalar velocity = Scalar(0);

    bool operator==(const SpringStateT&) const = default;
};

inline constexpr double kMaxSpringStep = 0.1;

/// Damping ratio 0.9 gives a quick return with a single small overshoot.
template <typename Scalar = double>
SpringParamsT<Scalar> default_button_spring() {
    SpringParamsT<Scalar> p;
    p.stiffness = Scalar(300);
    p.mass = Scalar(0.1);
    p.damping = p.critical_damping() * Scalar(0.9);
    return p;
}

template <typename Scalar = double>
SpringParamsT<Scalar> default_slider_spring() {
    SpringParamsT<Scalar> p;
    p.stiffness = Scalar(200);
    p.mass = Scalar(0.1);
    p.damping = p.critical_damping();
    return p;
}

/// One implicit-Euler step of m x'' = -k x - c v + F.
///
/// Both the spring and damper forces are evaluated at the end of the step:
///   v' = (v + (F - k x) dt / m) / (1 + c dt / m + k dt^2 / m)
///   x' = x + v' dt
/// which never adds mechanical energy when F = 0, for any c >= 0 and dt > 0.
template <typename Scalar>
SpringStateT<Scalar> spring_step(const SpringStateT<Scalar>& state, const SpringParamsT<Scalar>& params,
                                 Scalar external_force, Scalar dt) {
    if (!(dt > Scalar(0)) || dt > Scalar(kMaxSpringStep)) {
        throw Error(ErrorCode::InvalidArgument, "spring step dt must lie in (0, 0.1] s");
    }
    if (!params.valid()) {
        throw Error(ErrorCode::InvalidArgument, "spring params need k > 0, m > 0, c >= 0");
    }
    const Scalar k = params.stiffness;
    const Scalar c = params.damping;
    const Scalar m = params.mass;
    const Scalar v = (state.velocity + (external_force - k * state.displacement) * dt / m) /
                     (Scalar(1) + c * dt / m + k * dt * dt / m);
    return {state.displacement + v * dt, v};
}

template <typename Scalar>
Scalar spring_energy(const SpringStateT<Scalar>& state, const SpringParamsT<Scalar>& params) {
    return Scalar(0.5) * params.stiffness * state.displacement * state.displacement +
           Scalar(0.5) * params.mass * state.velocity * state.velocity;
}

template <typename Scalar>
bool is_settled(const SpringStateT<Scalar>& state, Scalar position_eps, Scalar velocity_eps) {
    if (!(position_eps > 0) || !(velocity_eps > 0)) {
        throw Error(ErrorCode::InvalidArgument, "settle tolerances must be positive");
    }
    return std::abs(state.displacement) < position_eps && std::abs(state.velocity) < velocity_eps;
}

using SpringParams = SpringParamsT<double>;
using SpringState = SpringStateT<double>;

}  // namespace spatialui
