#pragma once

#include "mrsusp/damper.hpp"
#include "mrsusp/road.hpp"

namespace mrsusp {

struct SuspensionParams {
    double m_b = 375.0;     // sprung (body) mass [kg]
    double m_w = 29.5;      // unsprung (wheel) mass [kg]
    double k_s = 20580.0;   // suspension stiffness [N/m]
    double k_t = 200000.0;  // tire stiffness [N/m]
    double c_s = 772.0;     // passive damping coefficient [N s/m]

    void validate() const;
};

/// Body/wheel displacements [m] and velocities [m/s].
struct VehicleState {
    double x_b = 0.0;
    double x_w = 0.0;
    double v_b = 0.0;
    double v_w = 0.0;

    bool finite() const;
};

struct StateDerivative {
    double x_b_dot;
    double x_w_dot;
    double v_b_dot;
    double v_w_dot;
};

/// Quarter-car equations of motion. f is the suspension force between body
/// and wheel (positive f decelerates the body), x_r the road elevation.
StateDerivative vehicle_derivatives(const VehicleState& s, double f, double x_r,
                                    const SuspensionParams& p);

/// Vertical body acceleration -(k_s*(x_b - x_w) + f)/m_b. Identical to the
/// v_b_dot component of vehicle_derivatives.
double body_acceleration(const VehicleState& s, double f, const SuspensionParams& p);

/// Vehicle + damper state advanced together by the integrator.
struct CoupledState {
    VehicleState vehicle;
    DamperState damper;

    bool finite() const;
};

enum class ForceMode {
    mr_damper,       // hysteretic damper force, voltage controlled
    passive_linear,  // c_s * relative velocity; damper states frozen
};

/// Force currently transmitted through the suspension for the given mode.
double suspension_force(const CoupledState& s, const SuspensionParams& sp,
                        const BoucWenParams& bp, ForceMode mode);

/// Classical fourth-order Runge-Kutta advance of the coupled 7-state system.
/// Road elevation is evaluated at the stage times; the commanded voltage is
/// held constant across the step. Throws std::invalid_argument for dt <= 0
/// or a non-finite state.
CoupledState rk4_step(const CoupledState& s, double voltage, const RoadProfile& road,
                      double t, double dt, const SuspensionParams& sp,
                      const BoucWenParams& bp, ForceMode mode = ForceMode::mr_damper);

}  // namespace mrsusp
