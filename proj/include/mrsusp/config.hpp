#pragma once

#include <string>

#include "mrsusp/harness.hpp"
#include "mrsusp/pid.hpp"
#include "mrsusp/pso.hpp"
#include "mrsusp/td3.hpp"

namespace mrsusp {

struct RoadSpec {
    enum class Kind { flat, bump };
    Kind kind = Kind::bump;
    BumpProfile bump;

    RoadProfile make() const;
};

/// Everything one experiment needs; every field has a default, so an empty
/// JSON document is a valid config. Unknown keys are rejected.
struct LabConfig {
    SuspensionParams suspension;
    BoucWenParams bouc_wen;
    RoadSpec road;
    SimConfig sim;
    Td3Config td3;
    PsoConfig pso;
    PidGains pid;

    void validate() const;
};

LabConfig default_config();

LabConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const LabConfig& cfg);

LabConfig load_config(const std::string& path);
void save_config(const std::string& path, const LabConfig& cfg);

}  // namespace mrsusp
