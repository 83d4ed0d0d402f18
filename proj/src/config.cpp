#include "kerrbat/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace kerrbat {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
    return i;
}

} // namespace

double RunConfig::effective_t_end() const {
    if (t_end > 0.0) {
        return t_end;
    }
    if (params.g <= 0.0) {
        throw ConfigError("config: t_end not given and g = 0, cannot derive the default "
                          "charging window");
    }
    return 10.0 * M_PI / params.g; // dimensionless charging time T = 10
}

Scenario RunConfig::to_scenario(std::string label) const {
    StepControl control;
    control.rtol = rtol;
    control.atol = atol;
    try {
        return Scenario::make(kind, params, HilbertSpec(dim_charger, dim_battery),
                              TimeGrid(effective_t_end(), n_samples), control, std::move(label));
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("config: ") + err.what());
    }
}

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    bool have_kind = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected `key = value`, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        }

        if (key == "kind") {
            try {
                cfg.kind = battery_kind_from_string(value);
            } catch (const std::invalid_argument& err) {
                throw ConfigError(std::string("config: ") + err.what());
            }
            have_kind = true;
        } else if (key == "omega0") {
            cfg.params.omega0 = parse_double(key, value);
        } else if (key == "delta") {
            cfg.params.delta = parse_double(key, value);
        } else if (key == "g") {
            cfg.params.g = parse_double(key, value);
        } else if (key == "F") {
            cfg.params.drive = parse_double(key, value);
        } else if (key == "U") {
            cfg.params.kerr = parse_double(key, value);
        } else if (key == "gamma") {
            cfg.params.gamma = parse_double(key, value);
        } else if (key == "dim_charger") {
            cfg.dim_charger = parse_int(key, value);
        } else if (key == "dim_battery") {
            cfg.dim_battery = parse_int(key, value);
        } else if (key == "t_end") {
            cfg.t_end = parse_double(key, value);
        } else if (key == "n_samples") {
            cfg.n_samples = parse_int(key, value);
        } else if (key == "rtol") {
            cfg.rtol = parse_double(key, value);
        } else if (key == "atol") {
            cfg.atol = parse_double(key, value);
        } else if (key == "output") {
            cfg.output = value;
        } else {
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'");
        }
    }
    if (!have_kind) {
        throw ConfigError("config: missing required key 'kind'");
    }
    try {
        cfg.params.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("config: ") + err.what());
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    return parse_config(in);
}

std::string serialize_config(const RunConfig& config, const std::string& header) {
    std::ostringstream out;
    out.precision(12);
    if (!header.empty()) {
        out << "# " << header << "\n";
    }
    out << "kind = " << to_string(config.kind) << "\n";
    out << "omega0 = " << config.params.omega0 << "\n";
    out << "delta = " << config.params.delta << "\n";
    out << "g = " << config.params.g << "\n";
    out << "F = " << config.params.drive << "\n";
    out << "U = " << config.params.kerr << "\n";
    out << "gamma = " << config.params.gamma << "\n";
    out << "dim_charger = " << config.dim_charger << "\n";
    out << "dim_battery = " << config.dim_battery << "\n";
    out << "t_end = " << config.effective_t_end() << "\n";
    out << "n_samples = " << config.n_samples << "\n";
    out << "rtol = " << config.rtol << "\n";
    out << "atol = " << config.atol << "\n";
    out << "output = " << config.output << "\n";
    return out.str();
}

RunConfig preset(const std::string& name) {
    RunConfig cfg;
    cfg.kind = BatteryKind::kerr;
    cfg.params.omega0 = 1.0;
    cfg.params.g = 0.2;
    cfg.params.kerr = 0.05;
    cfg.dim_charger = 25;
    cfg.dim_battery = 25;
    if (name == "fig2") {
        cfg.params.delta = 0.2;
        cfg.params.gamma = 0.3;
        cfg.params.drive = 0.5;
    } else if (name == "fig3b") {
        cfg.params.delta = 0.2;
        cfg.params.gamma = 1.0;
        cfg.params.drive = 0.5;
    } else if (name == "fig3c") {
        cfg.params.delta = 0.0;
        cfg.params.gamma = 0.05;
        cfg.params.drive = 0.1;
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected fig2, fig3b or fig3c)");
    }
    return cfg;
}

} // namespace kerrbat
