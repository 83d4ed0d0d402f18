// observables.hpp — figure-level quantities: stored and charger energy,
// ergotropy via the passive-state construction, charging power, and the
// optimal charging point.

#pragma once

#include "kerrbat/dynamics.hpp"
#include "kerrbat/model.hpp"

#include <vector>

namespace kerrbat {

// Reduced battery state rho_B = Tr_A[rho]; trace-preserving, Hermitian.
Matrix partial_trace_battery(const Matrix& rho, const HilbertSpec& spec);

// E_B = Tr[rho_B (omega0 b†b + U b†b†bb)]; real up to roundoff.
double battery_energy(const Matrix& rho_b, const ModelParams& params);

// E_A = omega0 Tr[rho (a†a (x) I)].
double charger_energy(const Matrix& rho, const HilbertSpec& spec, const ModelParams& params);

struct ErgotropyResult {
    double stored_energy = 0.0;
    double passive_energy = 0.0;
    double ergotropy = 0.0;
    Eigen::VectorXd eigenvalues;        // spectrum of rho_B, descending
    std::vector<double> battery_levels; // ladder energies, ascending
    bool clipped = false;               // negative eigenvalues required renormalization
};

// W = E_B - Tr[rho_p H_B] with the passive state pairing the descending
// spectrum of rho_B against the ascending battery ladder.
ErgotropyResult ergotropy(const Matrix& rho_b, const ModelParams& params);

// P_B(t) = E_B(t)/t for t > 0, P_B(0) = 0.
std::vector<double> charging_power(const std::vector<double>& times,
                                   const std::vector<double>& stored_energy);

struct Optimum {
    double t_max = 0.0;
    double e_max = 0.0;
    int index = 0;
};

// Global maximum of the sampled series; earliest sample wins ties.
Optimum find_optimum(const std::vector<double>& times, const std::vector<double>& stored_energy);

// Sampled observable series of one run. Mean-field runs leave E_A, W and the
// ratio as NaN (serialized blank).
struct ObservableTrajectory {
    std::vector<double> times;
    std::vector<double> dimensionless_T;
    std::vector<double> E_B;
    std::vector<double> E_A;
    std::vector<double> W;
    std::vector<double> P_B;
    std::vector<double> ratio; // W / E_B, 0 where E_B ~ 0
    std::vector<SampleDiagnostics> diagnostics;
    bool tainted = false;
};

// W/E_B with the E_B ~ 0 guard.
std::vector<double> ergotropy_ratio(const std::vector<double>& ergotropy_series,
                                    const std::vector<double>& stored_energy);

} // namespace kerrbat
