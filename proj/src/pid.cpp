#include "mrsusp/pid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mrsusp/damper.hpp"

namespace mrsusp {

void PidGains::validate() const {
    if (!(std::isfinite(kp) && std::isfinite(ki) && std::isfinite(kd)))
        throw std::invalid_argument("PidGains: gains must be finite");
    if (kp < 0.0 || ki < 0.0 || kd < 0.0)
        throw std::invalid_argument("PidGains: gains must be >= 0");
}

double pid_step(const PidGains& gains, PidState& state, double q) {
    const double e = -q;
    state.integral += e * state.period;
    if (gains.ki > 0.0) {
        const double limit = kVoltageMax / gains.ki;
        state.integral = std::clamp(state.integral, -limit, limit);
    }
    const double derivative = state.primed ? -(q - state.prev_q) / state.period : 0.0;
    state.prev_q = q;
    state.primed = true;
    return clamp_voltage(gains.kp * e + gains.ki * state.integral + gains.kd * derivative);
}

}  // namespace mrsusp
