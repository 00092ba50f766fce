#pragma once

#include <algorithm>

namespace mrsusp {

struct SuspensionParams;

// Actuator coil voltage range. Commands are clamped here before they reach
// the first-order coil filter, so the filtered voltage u can never leave
// [0, v] when started inside it.
inline constexpr double kVoltageMin = 0.0;
inline constexpr double kVoltageMax = 3.0;

inline double clamp_voltage(double v) {
    return std::clamp(v, kVoltageMin, kVoltageMax);
}

/// Hysteretic MR damper parameters. Defaults are the identified values used
/// throughout this lab.
struct BoucWenParams {
    double c0a = 784.0;        // viscous damping at high velocity, zero field [N s/m]
    double c0b = 1803.0;       // field dependence of c0 [N s/(V m)]
    double c1a = 14649.0;      // viscous damping at low velocity, zero field [N s/m]
    double c1b = 34622.0;      // field dependence of c1 [N s/(V m)]
    double k0 = 3610.0;        // stiffness at high velocity [N/m]
    double k1 = 840.0;         // accumulator stiffness [N/m]
    double alpha_a = 12441.0;  // hysteresis scale, zero field [N/m]
    double alpha_b = 38430.0;  // field dependence of alpha [N/(V m)]
    double beta = 2059020.0;   // hysteresis shape [1/m^2]
    double gamma = 136320.0;   // hysteresis shape [1/m^2]
    double eta = 190.0;        // coil filter rate [1/s]
    double a_bw = 58.0;        // hysteresis amplitude (dimensionless)
    double n = 2.0;            // hysteresis exponent, >= 1
    double x0 = 0.245;         // accumulator offset displacement [m]

    void validate() const;

    // Ultimate bound of |z| for excitation from z(0)=0: (a_bw/(beta+gamma))^(1/n).
    double z_bound() const;
};

/// Internal damper state: internal displacement y, hysteresis variable z,
/// filtered coil voltage u.
struct DamperState {
    double y = 0.0;
    double z = 0.0;
    double u = 0.0;

    bool finite() const;
};

struct EffectiveCoeffs {
    double alpha;  // [N/m]
    double c1;     // [N s/m]
    double c0;     // [N s/m]
};

struct DamperRates {
    double y_dot;
    double z_dot;
    double u_dot;
};

/// Field-dependent coefficients, affine in the filtered voltage u.
EffectiveCoeffs effective_coeffs(double u, const BoucWenParams& p);

/// Time derivatives of the damper state for suspension deflection x (= x_b - x_w),
/// deflection rate x_dot, and commanded coil voltage.
/// Throws std::invalid_argument when c1 + c0 <= 0 (degenerate parameters).
DamperRates damper_rates(double x, double x_dot, const DamperState& ds, double voltage,
                         const BoucWenParams& p);

/// Damper force for a given deflection and internal-displacement rate:
/// c1(u) * y_dot + k1 * (x - x0).
double damper_force(double x, const DamperState& ds, const BoucWenParams& p, double y_dot);

/// Convenience: force at the current state (computes y_dot internally).
double mr_force(double x, double x_dot, const DamperState& ds, const BoucWenParams& p);

/// Linear passive-branch force c_s * relative velocity.
double passive_force(double rel_velocity, const SuspensionParams& p);

}  // namespace mrsusp
