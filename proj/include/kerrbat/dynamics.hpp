// dynamics.hpp — master-equation propagation with trace / Hermiticity /
// positivity guards, an exact matrix-exponential propagator for oracle
// testing, and direct steady-state extraction.

#pragma once

#include "kerrbat/integrator.hpp"
#include "kerrbat/model.hpp"

#include <functional>
#include <vector>

namespace kerrbat {

// Uniform sample grid, t = 0 included. The dimensionless charging time used
// in reporting is T = g*t/pi.
struct TimeGrid {
    double t_end;
    int n_samples;

    TimeGrid(double t_end_, int n_samples_) : t_end(t_end_), n_samples(n_samples_) {
        if (!(t_end > 0.0) || n_samples < 2) {
            throw std::invalid_argument("TimeGrid: need t_end > 0 and n_samples >= 2");
        }
    }

    double time_at(int k) const { return t_end * k / (n_samples - 1); }
    std::vector<double> times() const {
        std::vector<double> t(static_cast<size_t>(n_samples));
        for (int k = 0; k < n_samples; ++k) {
            t[static_cast<size_t>(k)] = time_at(k);
        }
        return t;
    }
};

inline double dimensionless_time(double t, const ModelParams& params) {
    return params.g * t / M_PI;
}

// Per-sample health of the propagated state.
struct SampleDiagnostics {
    double trace_err = 0.0;        // |Tr rho - 1|
    double herm_drift = 0.0;       // ||rho - rho†||_F / ||rho||_F before re-symmetrization
    double min_eigenvalue = 0.0;
    double tail_pop_charger = 0.0; // population of the top charger Fock level
    double tail_pop_battery = 0.0;
};

struct DensityTolerances {
    double hermiticity = 1e-10; // relative Frobenius
    double trace = 1e-9;
    double min_eigenvalue = -1e-8;
};

// Frobenius-relative Hermiticity defect of a square matrix.
double hermiticity_defect(const Matrix& rho);
double min_eigenvalue(const Matrix& rho);

// Throws std::invalid_argument when rho violates the density-matrix
// invariants (Hermitian, unit trace, positive up to numerical noise).
void validate_density(const Matrix& rho, const DensityTolerances& tol = {});

// |0><0| (x) |0><0| — both modes empty.
Matrix vacuum_state(const HilbertSpec& spec);
// |na, nb><na, nb|
Matrix fock_state(const HilbertSpec& spec, int na, int nb);

struct StateTrajectory {
    std::vector<double> times;
    std::vector<Matrix> states;
    std::vector<SampleDiagnostics> diagnostics;
    bool tainted = false; // truncation guard fired on some sample
    IntegrationStats stats;
};

struct EvolveOptions {
    StepControl control;
    // truncation guard on top-level populations; set a mode to infinity when
    // its dimension is the model rather than a truncation (qubit battery)
    double tail_threshold_charger = 1e-4;
    double tail_threshold_battery = 1e-4;
};

// Callback per sample: (index, time, re-symmetrized state, diagnostics).
using SampleObserver =
    std::function<void(int, double, const Matrix&, const SampleDiagnostics&)>;

// Adaptive DOPRI5 integration of the master equation sampled on the grid.
// Every sampled state is re-symmetrized ((rho+rho†)/2), validated and handed
// to the observer; integration continues from the re-symmetrized state.
// Returns true when the truncation guard stayed quiet.
bool evolve_observed(const ModelParams& params, const HilbertSpec& spec, const TimeGrid& grid,
                     const Matrix& rho0, const EvolveOptions& options,
                     const SampleObserver& observer, IntegrationStats* stats = nullptr);

// Same contract, states stored (memory scales with n_samples * d^2).
StateTrajectory evolve(const ModelParams& params, const HilbertSpec& spec, const TimeGrid& grid,
                       const Matrix& rho0, const EvolveOptions& options = {});

// Exact propagation vec(rho(t)) = exp(L t) vec(rho0) via scaling-and-squaring
// matrix exponential of the vectorized generator; independent of the RK path.
StateTrajectory evolve_expm_oracle(const ModelParams& params, const HilbertSpec& spec,
                                   const TimeGrid& grid, const Matrix& rho0,
                                   int dim_cap = kLiouvillianDimCap);

// Normalized Hermitian null-space solution of L vec(rho) = 0.
// Throws on degenerate null spaces and when the residual exceeds 1e-9.
Matrix steady_state(const ModelParams& params, const HilbertSpec& spec,
                    int dim_cap = kLiouvillianDimCap);

} // namespace kerrbat
