#include "mrsusp/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace mrsusp {

void SuspensionParams::validate() const {
    if (!(m_b > 0.0 && m_w > 0.0 && k_s > 0.0 && k_t > 0.0 && c_s > 0.0))
        throw std::invalid_argument("SuspensionParams: all fields must be positive");
}

bool VehicleState::finite() const {
    return std::isfinite(x_b) && std::isfinite(x_w) && std::isfinite(v_b) && std::isfinite(v_w);
}

StateDerivative vehicle_derivatives(const VehicleState& s, double f, double x_r,
                                    const SuspensionParams& p) {
    const double spring = p.k_s * (s.x_b - s.x_w);
    return {
        s.v_b,
        s.v_w,
        -(spring + f) / p.m_b,
        (spring + f - p.k_t * (s.x_w - x_r)) / p.m_w,
    };
}

double body_acceleration(const VehicleState& s, double f, const SuspensionParams& p) {
    return -(p.k_s * (s.x_b - s.x_w) + f) / p.m_b;
}

bool CoupledState::finite() const {
    return vehicle.finite() && damper.finite();
}

double suspension_force(const CoupledState& s, const SuspensionParams& sp,
                        const BoucWenParams& bp, ForceMode mode) {
    const double x = s.vehicle.x_b - s.vehicle.x_w;
    const double x_dot = s.vehicle.v_b - s.vehicle.v_w;
    if (mode == ForceMode::passive_linear) return passive_force(x_dot, sp);
    return mr_force(x, x_dot, s.damper, bp);
}

namespace {

struct CoupledDerivative {
    StateDerivative vehicle;
    DamperRates damper;
};

CoupledDerivative coupled_derivatives(const CoupledState& s, double voltage, double x_r,
                                      const SuspensionParams& sp, const BoucWenParams& bp,
                                      ForceMode mode) {
    const double x = s.vehicle.x_b - s.vehicle.x_w;
    const double x_dot = s.vehicle.v_b - s.vehicle.v_w;
    if (mode == ForceMode::passive_linear) {
        const double f = passive_force(x_dot, sp);
        return {vehicle_derivatives(s.vehicle, f, x_r, sp), {0.0, 0.0, 0.0}};
    }
    const DamperRates dr = damper_rates(x, x_dot, s.damper, voltage, bp);
    const double f = damper_force(x, s.damper, bp, dr.y_dot);
    return {vehicle_derivatives(s.vehicle, f, x_r, sp), dr};
}

CoupledState axpy(const CoupledState& s, double h, const CoupledDerivative& d) {
    return {{s.vehicle.x_b + h * d.vehicle.x_b_dot, s.vehicle.x_w + h * d.vehicle.x_w_dot,
             s.vehicle.v_b + h * d.vehicle.v_b_dot, s.vehicle.v_w + h * d.vehicle.v_w_dot},
            {s.damper.y + h * d.damper.y_dot, s.damper.z + h * d.damper.z_dot,
             s.damper.u + h * d.damper.u_dot}};
}

}  // namespace

CoupledState rk4_step(const CoupledState& s, double voltage, const RoadProfile& road,
                      double t, double dt, const SuspensionParams& sp,
                      const BoucWenParams& bp, ForceMode mode) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
    if (!s.finite()) throw std::invalid_argument("rk4_step: non-finite state");

    const CoupledDerivative k1 = coupled_derivatives(s, voltage, road.elevation(t), sp, bp, mode);
    const double x_r_mid = road.elevation(t + 0.5 * dt);
    const CoupledDerivative k2 =
        coupled_derivatives(axpy(s, 0.5 * dt, k1), voltage, x_r_mid, sp, bp, mode);
    const CoupledDerivative k3 =
        coupled_derivatives(axpy(s, 0.5 * dt, k2), voltage, x_r_mid, sp, bp, mode);
    const CoupledDerivative k4 =
        coupled_derivatives(axpy(s, dt, k3), voltage, road.elevation(t + dt), sp, bp, mode);

    const double w = dt / 6.0;
    CoupledState out = s;
    out.vehicle.x_b += w * (k1.vehicle.x_b_dot + 2.0 * k2.vehicle.x_b_dot +
                            2.0 * k3.vehicle.x_b_dot + k4.vehicle.x_b_dot);
    out.vehicle.x_w += w * (k1.vehicle.x_w_dot + 2.0 * k2.vehicle.x_w_dot +
                            2.0 * k3.vehicle.x_w_dot + k4.vehicle.x_w_dot);
    out.vehicle.v_b += w * (k1.vehicle.v_b_dot + 2.0 * k2.vehicle.v_b_dot +
                            2.0 * k3.vehicle.v_b_dot + k4.vehicle.v_b_dot);
    out.vehicle.v_w += w * (k1.vehicle.v_w_dot + 2.0 * k2.vehicle.v_w_dot +
                            2.0 * k3.vehicle.v_w_dot + k4.vehicle.v_w_dot);
    out.damper.y +=
        w * (k1.damper.y_dot + 2.0 * k2.damper.y_dot + 2.0 * k3.damper.y_dot + k4.damper.y_dot);
    out.damper.z +=
        w * (k1.damper.z_dot + 2.0 * k2.damper.z_dot + 2.0 * k3.damper.z_dot + k4.damper.z_dot);
    out.damper.u +=
        w * (k1.damper.u_dot + 2.0 * k2.damper.u_dot + 2.0 * k3.damper.u_dot + k4.damper.u_dot);
    return out;
}

}  // namespace mrsusp
