// config.hpp — flat key-value run configuration and the named figure presets.

#pragma once

#include "kerrbat/harness.hpp"

#include <iosfwd>
#include <string>

namespace kerrbat {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Keys: kind, omega0, delta, g, F, U, gamma, dim_charger, dim_battery,
// t_end, n_samples, rtol, atol, output. Lines are `key = value`, `#` starts
// a comment. `t_end` defaults to 10*pi/g (dimensionless charging time 10).
struct RunConfig {
    BatteryKind kind = BatteryKind::kerr;
    ModelParams params;
    int dim_charger = 25;
    int dim_battery = 25;
    double t_end = 0.0; // 0: derive from g
    int n_samples = 400;
    double rtol = 1e-8;
    double atol = 1e-10;
    std::string output = "-"; // "-" = stdout

    double effective_t_end() const;
    Scenario to_scenario(std::string label = {}) const;
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config, const std::string& header = {});

// fig2: Delta=0.2, gamma=0.3, g=0.2, F=0.5 | fig3b: same, gamma=1
// fig3c: Delta=0, gamma=0.05, g=0.2, F=0.1. All with U=0.05, 25x25 levels.
RunConfig preset(const std::string& name);

} // namespace kerrbat
