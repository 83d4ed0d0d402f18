// model.hpp — rotating-frame Hamiltonian and Lindblad generator of the
// driven charger / Kerr battery pair. The charger (mode a) is coherently
// driven and lossy; the battery (mode b) is isolated and carries the Kerr
// anharmonicity.

#pragma once

#include "kerrbat/types.hpp"

#include <vector>

namespace kerrbat {

// Physical parameters. omega0 sets the energy unit (default 1); every other
// rate is quoted in units of omega0. kerr (U) and delta may be negative.
struct ModelParams {
    double omega0 = 1.0;  // mode frequency of both oscillators
    double delta  = 0.0;  // detuning omega0 - omega_D
    double g      = 0.0;  // charger-battery coupling
    double drive  = 0.0;  // drive strength F on the charger
    double kerr   = 0.0;  // Kerr nonlinearity U of the battery
    double gamma  = 0.0;  // charger dissipation rate

    // Throws std::invalid_argument on sign violations (omega0 <= 0, or a
    // negative g / drive / gamma).
    void validate() const;

    // Non-fatal regime notes: |U|(dim_battery-1) >~ 10 omega0 (qubit-limit
    // truncation semantics dominate) and U < 0 (unvalidated regime).
    std::vector<std::string> regime_warnings(const HilbertSpec& spec) const;
};

// Battery ladder energy of level n: omega0*n + U*n*(n-1).
double battery_level_energy(const ModelParams& params, int n);

// H = Delta(a†a + b†b) + g(a b† + a† b) + F(a† + a) + U b†b†bb
// on the joint space. Hermitian for every parameter set.
Matrix hamiltonian(const ModelParams& params, const HilbertSpec& spec);

// d(rho)/dt = -i[H, rho] + (gamma/2)(2 a rho a† - a†a rho - rho a†a), with a
// the embedded charger operator. Dense-algebra route; the structured kernel
// in kernels.hpp is checked against this.
Matrix lindblad_rhs(const ModelParams& params, const HilbertSpec& spec, const Matrix& rho);

inline constexpr int kLiouvillianDimCap = 64;

// Column-stacking vectorization of the generator:
//   L = -i(I(x)H - H^T(x)I) + (gamma/2)(2 conj(a)(x)a - I(x)a†a - (a†a)^T(x)I)
// so that L vec(rho) = vec(lindblad_rhs(rho)). d^2 x d^2; refuses joint
// dimensions above dim_cap (oracle-scale usage only).
Matrix liouvillian_matrix(const ModelParams& params, const HilbertSpec& spec,
                          int dim_cap = kLiouvillianDimCap);

} // namespace kerrbat
