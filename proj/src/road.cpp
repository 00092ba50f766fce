#include "mrsusp/road.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mrsusp {

void BumpProfile::validate() const {
    if (!(amplitude > 0.0)) throw std::invalid_argument("BumpProfile: amplitude must be positive");
    if (!(width > 0.0)) throw std::invalid_argument("BumpProfile: width must be positive");
    if (!(speed > 0.0)) throw std::invalid_argument("BumpProfile: speed must be positive");
    if (!(start_time >= 0.0)) throw std::invalid_argument("BumpProfile: start_time must be >= 0");
}

double BumpProfile::angular_rate() const {
    return 2.0 * std::numbers::pi * speed / width;
}

double BumpProfile::duration() const {
    return width / speed;
}

double BumpProfile::end_time() const {
    return start_time + duration();
}

double elevation(const BumpProfile& profile, double t) {
    if (t < profile.start_time || t > profile.end_time()) return 0.0;
    return profile.amplitude * (1.0 - std::cos(profile.angular_rate() * (t - profile.start_time)));
}

RoadProfile RoadProfile::flat() {
    return RoadProfile{};
}

RoadProfile RoadProfile::bump(const BumpProfile& profile) {
    profile.validate();
    RoadProfile r;
    r.bump_ = profile;
    return r;
}

double RoadProfile::elevation(double t) const {
    return bump_ ? mrsusp::elevation(*bump_, t) : 0.0;
}

}  // namespace mrsusp
