// kerrbat — command-line front end: single trajectories, parameter sweeps,
// mean-field runs, full-vs-mean-field-vs-oracle comparisons and the shipped
// figure presets.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 completed but tainted (truncation guard fired).

#include "kerrbat/config.hpp"
#include "kerrbat/csv.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <vector>

namespace {

using namespace kerrbat;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitTainted = 3;

struct OutputTarget {
    std::unique_ptr<std::ofstream> file;
    std::ostream* stream = nullptr;
};

OutputTarget open_output(const std::string& spec) {
    OutputTarget target;
    if (spec == "-") {
        target.stream = &std::cout;
        return target;
    }
    target.file = std::make_unique<std::ofstream>(spec, std::ios::binary);
    if (!*target.file) {
        throw std::runtime_error("cannot open '" + spec + "' for writing");
    }
    target.stream = target.file.get();
    return target;
}

void print_warnings(const RunConfig& cfg, const std::string& context) {
    const HilbertSpec spec(cfg.dim_charger, cfg.kind == BatteryKind::qubit ? 2 : cfg.dim_battery);
    for (const auto& note : cfg.params.regime_warnings(spec)) {
        std::cerr << "# warning (" << context << "): " << note << "\n";
    }
}

std::string resolve_output(const RunConfig& cfg, const std::string& override_path) {
    return override_path.empty() ? cfg.output : override_path;
}

int cmd_evolve(const std::string& config_path, const std::string& out_override, bool plotdata) {
    const RunConfig cfg = parse_config_file(config_path);
    print_warnings(cfg, "evolve");
    const Scenario scenario = cfg.to_scenario("evolve");
    const ObservableTrajectory traj = run_scenario(scenario);

    OutputTarget out = open_output(resolve_output(cfg, out_override));
    if (plotdata) {
        std::vector<std::string> meta = {"kerrbat evolve, kind = " + to_string(cfg.kind)};
        if (traj.tainted) {
            meta.push_back("tainted: truncation guard fired (enlarge the Fock spaces)");
        }
        csv::emit_plotdata(traj, *out.stream, meta);
    } else {
        csv::emit_csv(traj, *out.stream);
    }
    out.stream->flush();

    if (traj.tainted) {
        std::cerr << "# warning (evolve): truncation guard fired; results unreliable, "
                     "enlarge dim_charger/dim_battery\n";
        return kExitTainted;
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override,
              std::vector<double> u_values, std::vector<double> gamma_values,
              std::vector<double> f_values, bool plotdata) {
    const RunConfig cfg = parse_config_file(config_path);
    print_warnings(cfg, "sweep");
    const Scenario base = cfg.to_scenario("sweep");
    if (u_values.empty()) {
        u_values = {cfg.params.kerr};
    }
    if (gamma_values.empty()) {
        gamma_values = {cfg.params.gamma};
    }
    if (f_values.empty()) {
        f_values = {cfg.params.drive};
    }
    const SweepResult result = sweep(base, u_values, gamma_values, f_values);

    OutputTarget out = open_output(resolve_output(cfg, out_override));
    if (plotdata) {
        csv::emit_plotdata(result, *out.stream, {"kerrbat sweep, kind = " + to_string(cfg.kind)});
    } else {
        csv::emit_csv(result, *out.stream);
    }
    out.stream->flush();

    bool tainted = false;
    for (const auto& row : result.rows) {
        if (!row.error.empty()) {
            std::cerr << "# warning (sweep): row U=" << row.U << " gamma=" << row.gamma
                      << " F=" << row.F << " failed: " << row.error << "\n";
        }
        tainted = tainted || row.tainted;
    }
    return tainted ? kExitTainted : kExitOk;
}

int cmd_meanfield(const std::string& config_path, const std::string& out_override, bool plotdata) {
    const RunConfig cfg = parse_config_file(config_path);
    print_warnings(cfg, "meanfield");
    ModelParams params = cfg.params;
    if (cfg.kind != BatteryKind::kerr) {
        params.kerr = 0.0;
    }
    MeanFieldOptions options;
    options.control.rtol = cfg.rtol;
    options.control.atol = cfg.atol;
    const ObservableTrajectory traj =
        meanfield_evolve(params, TimeGrid(cfg.effective_t_end(), cfg.n_samples), {}, options);

    OutputTarget out = open_output(resolve_output(cfg, out_override));
    if (plotdata) {
        csv::emit_plotdata(traj, *out.stream, {"kerrbat meanfield"});
    } else {
        csv::emit_csv(traj, *out.stream);
    }
    out.stream->flush();
    return kExitOk;
}

int cmd_compare(const std::string& config_path, const std::string& out_override) {
    const RunConfig cfg = parse_config_file(config_path);
    print_warnings(cfg, "compare");
    const Scenario scenario = cfg.to_scenario("compare");
    const ObservableTrajectory full = run_scenario(scenario);

    MeanFieldOptions mf_options;
    mf_options.control.rtol = cfg.rtol;
    mf_options.control.atol = cfg.atol;
    const ObservableTrajectory mf =
        meanfield_evolve(scenario.params, scenario.grid, {}, mf_options);

    const bool with_oracle = scenario.spec.joint_dim() <= kLiouvillianDimCap;
    std::vector<double> oracle_eb;
    if (with_oracle) {
        const StateTrajectory traj = evolve_expm_oracle(scenario.params, scenario.spec,
                                                        scenario.grid, vacuum_state(scenario.spec));
        oracle_eb.reserve(traj.states.size());
        for (const auto& rho : traj.states) {
            oracle_eb.push_back(
                battery_energy(partial_trace_battery(rho, scenario.spec), scenario.params));
        }
    } else {
        std::cerr << "# note (compare): joint dimension " << scenario.spec.joint_dim()
                  << " exceeds the oracle cap " << kLiouvillianDimCap
                  << "; oracle columns omitted\n";
    }

    OutputTarget out = open_output(resolve_output(cfg, out_override));
    std::ostream& os = *out.stream;
    os << "t,T,E_B_full,E_B_mf,delta_mf";
    if (with_oracle) {
        os << ",E_B_oracle,delta_oracle";
    }
    os << "\n";
    double max_mf = 0.0, max_oracle = 0.0;
    for (size_t k = 0; k < full.times.size(); ++k) {
        const double d_mf = std::abs(full.E_B[k] - mf.E_B[k]);
        max_mf = std::max(max_mf, d_mf);
        os << csv::format_number(full.times[k]) << ',' << csv::format_number(full.dimensionless_T[k])
           << ',' << csv::format_number(full.E_B[k]) << ',' << csv::format_number(mf.E_B[k]) << ','
           << csv::format_number(d_mf);
        if (with_oracle) {
            const double d_or = std::abs(full.E_B[k] - oracle_eb[k]);
            max_oracle = std::max(max_oracle, d_or);
            os << ',' << csv::format_number(oracle_eb[k]) << ',' << csv::format_number(d_or);
        }
        os << "\n";
    }
    os.flush();

    std::cerr << "# compare: max|E_B_full - E_B_mf| = " << csv::format_number(max_mf) << "\n";
    if (with_oracle) {
        std::cerr << "# compare: max|E_B_full - E_B_oracle| = " << csv::format_number(max_oracle)
                  << "\n";
    }
    if (full.tainted) {
        std::cerr << "# warning (compare): truncation guard fired\n";
        return kExitTainted;
    }
    return kExitOk;
}

int cmd_preset(const std::string& name) {
    const RunConfig cfg = preset(name);
    std::cout << serialize_config(cfg, "kerrbat preset " + name);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven-charger / Kerr-battery Lindblad simulator"};
    app.require_subcommand(1);

    std::string config_path, out_override, preset_name;
    std::vector<double> u_values, gamma_values, f_values;
    bool plotdata = false;

    auto add_common = [&](CLI::App* sub, bool with_plot = true) {
        sub->add_option("config", config_path, "run configuration file")->required();
        sub->add_option("-o,--output", out_override, "output path override ('-' for stdout)");
        if (with_plot) {
            sub->add_flag("--plotdata", plotdata, "gnuplot layout instead of CSV");
        }
    };

    auto* evolve_cmd = app.add_subcommand("evolve", "integrate one trajectory and emit CSV");
    add_common(evolve_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "Cartesian parameter sweep over U, gamma, F");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--u", u_values, "Kerr nonlinearity values")->delimiter(',');
    sweep_cmd->add_option("--gamma", gamma_values, "dissipation values")->delimiter(',');
    sweep_cmd->add_option("--f", f_values, "drive strength values")->delimiter(',');

    auto* mf_cmd = app.add_subcommand("meanfield", "mean-field trajectory (E_B only)");
    add_common(mf_cmd);

    auto* compare_cmd = app.add_subcommand("compare", "full vs mean-field vs oracle deltas");
    add_common(compare_cmd, false);

    auto* preset_cmd = app.add_subcommand("preset", "print a named figure preset config");
    preset_cmd->add_option("name", preset_name, "fig2 | fig3b | fig3c")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(evolve_cmd)) {
            return cmd_evolve(config_path, out_override, plotdata);
        }
        if (app.got_subcommand(sweep_cmd)) {
            return cmd_sweep(config_path, out_override, u_values, gamma_values, f_values, plotdata);
        }
        if (app.got_subcommand(mf_cmd)) {
            return cmd_meanfield(config_path, out_override, plotdata);
        }
        if (app.got_subcommand(compare_cmd)) {
            return cmd_compare(config_path, out_override);
        }
        if (app.got_subcommand(preset_cmd)) {
            return cmd_preset(preset_name);
        }
    } catch (const kerrbat::ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
