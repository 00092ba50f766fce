#include "mrsusp/damper.hpp"

#include <cmath>
#include <stdexcept>

#include "mrsusp/dynamics.hpp"

namespace mrsusp {

void BoucWenParams::validate() const {
    if (!(c0a > 0.0 && c1a > 0.0 && k0 > 0.0 && k1 > 0.0 && eta > 0.0))
        throw std::invalid_argument("BoucWenParams: c0a, c1a, k0, k1, eta must be positive");
    if (!(beta + gamma > 0.0))
        throw std::invalid_argument("BoucWenParams: beta + gamma must be positive");
    if (!(a_bw > 0.0))
        throw std::invalid_argument("BoucWenParams: a_bw must be positive");
    if (!(n >= 1.0))
        throw std::invalid_argument("BoucWenParams: n must be >= 1");
}

double BoucWenParams::z_bound() const {
    return std::pow(a_bw / (beta + gamma), 1.0 / n);
}

bool DamperState::finite() const {
    return std::isfinite(y) && std::isfinite(z) && std::isfinite(u);
}

EffectiveCoeffs effective_coeffs(double u, const BoucWenParams& p) {
    return {p.alpha_a + p.alpha_b * u, p.c1a + p.c1b * u, p.c0a + p.c0b * u};
}

DamperRates damper_rates(double x, double x_dot, const DamperState& ds, double voltage,
                         const BoucWenParams& p) {
    const EffectiveCoeffs c = effective_coeffs(ds.u, p);
    const double denom = c.c1 + c.c0;
    if (!(denom > 0.0))
        throw std::invalid_argument("damper_rates: c1 + c0 must be positive");

    const double y_dot = (c.alpha * ds.z + p.k0 * (x - ds.y) + c.c0 * x_dot) / denom;

    const double w = x_dot - y_dot;  // velocity across the hysteretic element
    const double abs_z = std::abs(ds.z);
    const double abs_z_nm1 = (p.n == 2.0) ? abs_z : std::pow(abs_z, p.n - 1.0);
    const double z_dot = -p.gamma * std::abs(w) * ds.z * abs_z_nm1 -
                         p.beta * w * abs_z_nm1 * abs_z + p.a_bw * w;

    const double u_dot = -p.eta * (ds.u - voltage);
    return {y_dot, z_dot, u_dot};
}

double damper_force(double x, const DamperState& ds, const BoucWenParams& p, double y_dot) {
    const EffectiveCoeffs c = effective_coeffs(ds.u, p);
    return c.c1 * y_dot + p.k1 * (x - p.x0);
}

double mr_force(double x, double x_dot, const DamperState& ds, const BoucWenParams& p) {
    // voltage does not enter y_dot, so any command value works here
    const DamperRates r = damper_rates(x, x_dot, ds, 0.0, p);
    return damper_force(x, ds, p, r.y_dot);
}

double passive_force(double rel_velocity, const SuspensionParams& p) {
    return p.c_s * rel_velocity;
}

}  // namespace mrsusp
