// harness.hpp — scenario presets (kerr / harmonic / qubit battery), parameter
// sweeps and the qubit-limit convergence check.

#pragma once

#include "kerrbat/meanfield.hpp"
#include "kerrbat/observables.hpp"

#include <span>
#include <string>
#include <vector>

namespace kerrbat {

enum class BatteryKind { kerr, harmonic, qubit };

std::string to_string(BatteryKind kind);
BatteryKind battery_kind_from_string(const std::string& name);

struct Scenario {
    BatteryKind kind;
    ModelParams params;
    HilbertSpec spec;
    TimeGrid grid;
    StepControl control;
    std::string label;

    // Enforces the kind rules: harmonic forces U = 0; qubit forces
    // dim_battery = 2 and drops the Kerr term; kerr requires dim_battery >= 3.
    static Scenario make(BatteryKind kind, ModelParams params, HilbertSpec spec, TimeGrid grid,
                         StepControl control = {}, std::string label = {});
};

// vacuum start -> evolve -> partial trace per sample -> all observables.
// Deterministic for fixed inputs.
ObservableTrajectory run_scenario(const Scenario& scenario);

struct SweepRow {
    double U = 0.0;
    double gamma = 0.0;
    double F = 0.0;
    double e_max = 0.0;
    double t_max = 0.0;
    double T_max = 0.0;
    double W_at_tmax = 0.0;
    double ratio_at_tmax = 0.0;
    double p_b_max = 0.0;
    double t_at_p_b_max = 0.0;
    bool tainted = false;       // truncation guard fired or the row failed
    std::string error;          // nonempty when the row run threw
};

struct SweepResult {
    std::vector<SweepRow> rows; // Cartesian order: U outer, gamma, F inner
};

// Cartesian product of runs over the value lists; rows run independently in
// a bounded worker pool (workers = 0: KERRBAT_WORKERS env var, else available
// parallelism). A failing row is recorded, never aborts the sweep.
SweepResult sweep(const Scenario& base, std::span<const double> u_values,
                  std::span<const double> gamma_values, std::span<const double> f_values,
                  int workers = 0);

struct QubitLimitReport {
    double large_u = 0.0;
    double max_abs_deviation = 0.0; // max_t |E_B^kerr(t) - E_B^qubit(t)|
    bool kerr_tainted = false;
    bool qubit_tainted = false;
};

// Runs the Kerr scenario at large_u (battery truncated to battery_dim levels,
// enough for the two-level regime; the truncation guard checks it) against
// the qubit scenario with the same drive, coupling and dissipation.
QubitLimitReport qubit_limit_check(const Scenario& base, double large_u, int battery_dim = 4);

} // namespace kerrbat
