#include "kerrbat/harness.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kerrbat {

std::string to_string(BatteryKind kind) {
    switch (kind) {
    case BatteryKind::kerr: return "kerr";
    case BatteryKind::harmonic: return "harmonic";
    case BatteryKind::qubit: return "qubit";
    }
    return "?";
}

BatteryKind battery_kind_from_string(const std::string& name) {
    if (name == "kerr") return BatteryKind::kerr;
    if (name == "harmonic") return BatteryKind::harmonic;
    if (name == "qubit") return BatteryKind::qubit;
    throw std::invalid_argument("unknown battery kind '" + name +
                                "' (expected kerr, harmonic or qubit)");
}

Scenario Scenario::make(BatteryKind kind, ModelParams params, HilbertSpec spec, TimeGrid grid,
                        StepControl control, std::string label) {
    switch (kind) {
    case BatteryKind::harmonic:
        params.kerr = 0.0;
        break;
    case BatteryKind::qubit:
        params.kerr = 0.0;
        spec = HilbertSpec(spec.dim_charger, 2);
        break;
    case BatteryKind::kerr:
        if (spec.dim_battery < 3) {
            throw std::invalid_argument(
                "Scenario: a kerr battery needs dim_battery >= 3 for the Kerr term to act");
        }
        break;
    }
    params.validate();
    return Scenario{kind, params, spec, grid, control, std::move(label)};
}

ObservableTrajectory run_scenario(const Scenario& scenario) {
    const auto& grid = scenario.grid;
    const size_t n = static_cast<size_t>(grid.n_samples);

    ObservableTrajectory traj;
    traj.times = grid.times();
    traj.dimensionless_T.resize(n);
    traj.E_B.resize(n);
    traj.E_A.resize(n);
    traj.W.resize(n);
    traj.diagnostics.resize(n);

    EvolveOptions options;
    options.control = scenario.control;
    if (scenario.kind == BatteryKind::qubit) {
        // the two-level battery is the model, not a truncation
        options.tail_threshold_battery = std::numeric_limits<double>::infinity();
    }

    const bool clean = evolve_observed(
        scenario.params, scenario.spec, grid, vacuum_state(scenario.spec), options,
        [&](int k, double t, const Matrix& rho, const SampleDiagnostics& diag) {
            const size_t i = static_cast<size_t>(k);
            const Matrix rho_b = partial_trace_battery(rho, scenario.spec);
            traj.dimensionless_T[i] = dimensionless_time(t, scenario.params);
            traj.E_B[i] = battery_energy(rho_b, scenario.params);
            traj.E_A[i] = charger_energy(rho, scenario.spec, scenario.params);
            traj.W[i] = ergotropy(rho_b, scenario.params).ergotropy;
            traj.diagnostics[i] = diag;
        });

    traj.P_B = charging_power(traj.times, traj.E_B);
    traj.ratio = ergotropy_ratio(traj.W, traj.E_B);
    traj.tainted = !clean;
    return traj;
}

namespace {

int resolve_workers(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("KERRBAT_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) {
            return w;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

SweepRow run_sweep_row(const Scenario& base, double u, double gamma, double f) {
    SweepRow row;
    row.U = u;
    row.gamma = gamma;
    row.F = f;
    try {
        ModelParams p = base.params;
        p.kerr = u;
        p.gamma = gamma;
        p.drive = f;
        const Scenario s = Scenario::make(base.kind, p, base.spec, base.grid, base.control);
        const ObservableTrajectory traj = run_scenario(s);

        const Optimum opt = find_optimum(traj.times, traj.E_B);
        row.e_max = opt.e_max;
        row.t_max = opt.t_max;
        row.T_max = dimensionless_time(opt.t_max, s.params);
        row.W_at_tmax = traj.W[static_cast<size_t>(opt.index)];
        row.ratio_at_tmax = traj.ratio[static_cast<size_t>(opt.index)];
        const Optimum popt = find_optimum(traj.times, traj.P_B);
        row.p_b_max = popt.e_max;
        row.t_at_p_b_max = popt.t_max;
        row.tainted = traj.tainted;
    } catch (const std::exception& err) {
        row.tainted = true;
        row.error = err.what();
    }
    return row;
}

} // namespace

SweepResult sweep(const Scenario& base, std::span<const double> u_values,
                  std::span<const double> gamma_values, std::span<const double> f_values,
                  int workers) {
    if (u_values.empty() || gamma_values.empty() || f_values.empty()) {
        throw std::invalid_argument("sweep: every value list must be nonempty");
    }
    struct Tuple {
        double u, gamma, f;
    };
    std::vector<Tuple> tuples;
    tuples.reserve(u_values.size() * gamma_values.size() * f_values.size());
    for (double u : u_values) {
        for (double gamma : gamma_values) {
            for (double f : f_values) {
                tuples.push_back({u, gamma, f});
            }
        }
    }

    SweepResult result;
    result.rows.resize(tuples.size());
    const int pool = std::min<int>(resolve_workers(workers), static_cast<int>(tuples.size()));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(pool) if (pool > 1)
#endif
    for (long i = 0; i < static_cast<long>(tuples.size()); ++i) {
        const auto& tp = tuples[static_cast<size_t>(i)];
        // rows already run in parallel: keep the kernels of each row serial
        Scenario row_base = base;
        if (pool > 1) {
            row_base.control.exec = kernels::Exec::serial;
        }
        result.rows[static_cast<size_t>(i)] = run_sweep_row(row_base, tp.u, tp.gamma, tp.f);
    }
    return result;
}

QubitLimitReport qubit_limit_check(const Scenario& base, double large_u, int battery_dim) {
    if (battery_dim < 3) {
        throw std::invalid_argument("qubit_limit_check: battery_dim must be >= 3");
    }
    ModelParams kerr_params = base.params;
    kerr_params.kerr = large_u;
    const Scenario kerr_run =
        Scenario::make(BatteryKind::kerr, kerr_params,
                       HilbertSpec(base.spec.dim_charger, battery_dim), base.grid, base.control);
    const Scenario qubit_run =
        Scenario::make(BatteryKind::qubit, base.params, base.spec, base.grid, base.control);

    const ObservableTrajectory kerr_traj = run_scenario(kerr_run);
    const ObservableTrajectory qubit_traj = run_scenario(qubit_run);

    QubitLimitReport report;
    report.large_u = large_u;
    report.kerr_tainted = kerr_traj.tainted;
    report.qubit_tainted = qubit_traj.tainted;
    for (size_t k = 0; k < kerr_traj.E_B.size(); ++k) {
        report.max_abs_deviation =
            std::max(report.max_abs_deviation, std::abs(kerr_traj.E_B[k] - qubit_traj.E_B[k]));
    }
    return report;
}

} // namespace kerrbat
