#pragma once

#include <optional>

namespace mrsusp {

/// Half-cosine bump: a * (1 - cos(w*(t - t0))) on [t0, t0 + width/speed], zero outside.
/// The elevation is an analytic function of time so integrator stage times
/// sample it exactly.
struct BumpProfile {
    double amplitude = 0.035;  // half bump height a [m]
    double width = 0.8;        // bump width d_b [m]
    double speed = 0.856;      // vehicle speed V_c [m/s]
    double start_time = 0.5;   // bump onset [s]

    void validate() const;

    double angular_rate() const;  // 2*pi*speed/width [rad/s]
    double duration() const;      // width/speed [s]
    double end_time() const;      // start_time + duration
};

double elevation(const BumpProfile& profile, double t);

/// Pluggable road profile: flat (zero elevation) or a single bump.
class RoadProfile {
  public:
    static RoadProfile flat();
    static RoadProfile bump(const BumpProfile& profile);

    double elevation(double t) const;
    bool is_flat() const { return !bump_.has_value(); }
    const std::optional<BumpProfile>& bump_profile() const { return bump_; }

  private:
    std::optional<BumpProfile> bump_;
};

}  // namespace mrsusp
