// meanfield.hpp — amplitude equations obtained by factorizing the battery
// moments, <b†b> ~ |beta|^2 and <b†b†bb> ~ |beta|^4; exact for U = 0 from
// vacuum, a cross-check for the full master-equation solution otherwise.

#pragma once

#include "kerrbat/observables.hpp"

#include <stdexcept>

namespace kerrbat {

struct MeanFieldState {
    Complex alpha{0.0, 0.0}; // <a>
    Complex beta{0.0, 0.0};  // <b>
};

// d(alpha)/dt = -(i*Delta + gamma/2) alpha - i g beta - i F
// d(beta)/dt  = -i*Delta beta - i g alpha - 2i U conj(beta) beta^2
MeanFieldState meanfield_rhs(const MeanFieldState& state, const ModelParams& params);

// Amplitude |alpha| or |beta| crossed the divergence bound.
class MeanFieldDivergence : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct MeanFieldOptions {
    StepControl control;
    double divergence_bound = 1e6;
};

// Adaptive integration on the grid; E_B = omega0 |beta|^2 + U |beta|^4.
// E_A, W and ratio are NaN (no density matrix in this model).
ObservableTrajectory meanfield_evolve(const ModelParams& params, const TimeGrid& grid,
                                      const MeanFieldState& initial = {},
                                      const MeanFieldOptions& options = {});

} // namespace kerrbat
