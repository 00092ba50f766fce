#pragma once

namespace mrsusp {

struct PidGains {
    double kp = 0.0;  // [V per m/s^2]
    double ki = 0.0;  // [V/s per m/s^2]
    double kd = 0.0;  // [V*s per m/s^2]

    void validate() const;
};

struct PidState {
    double integral = 0.0;  // accumulated error, clamped by anti-windup
    double prev_q = 0.0;    // previous measurement, for derivative-on-measurement
    bool primed = false;    // prev_q valid
    double period = 0.01;   // control period [s]
};

/// Discrete PID on body acceleration with setpoint zero: e = -q, derivative
/// on the measurement, output clamped to the actuator range. The integral is
/// clamped so that ki * |integral| alone can never exceed a saturated output.
double pid_step(const PidGains& gains, PidState& state, double q);

}  // namespace mrsusp
