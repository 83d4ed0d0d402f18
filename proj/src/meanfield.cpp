#include "kerrbat/meanfield.hpp"

#include <cmath>
#include <limits>

namespace kerrbat {

MeanFieldState meanfield_rhs(const MeanFieldState& s, const ModelParams& p) {
    MeanFieldState d;
    d.alpha = -(kImag * p.delta + 0.5 * p.gamma) * s.alpha - kImag * p.g * s.beta -
              kImag * p.drive;
    d.beta = -kImag * p.delta * s.beta - kImag * p.g * s.alpha -
             2.0 * kImag * p.kerr * std::conj(s.beta) * s.beta * s.beta;
    return d;
}

ObservableTrajectory meanfield_evolve(const ModelParams& params, const TimeGrid& grid,
                                      const MeanFieldState& initial,
                                      const MeanFieldOptions& options) {
    params.validate();

    auto rhs = [&params](const Matrix& y, Matrix& dy) {
        const MeanFieldState s{y(0, 0), y(1, 0)};
        const MeanFieldState d = meanfield_rhs(s, params);
        dy.resize(2, 1);
        dy(0, 0) = d.alpha;
        dy(1, 0) = d.beta;
    };

    Matrix y0(2, 1);
    y0(0, 0) = initial.alpha;
    y0(1, 0) = initial.beta;

    StepControl control = options.control;
    control.exec = kernels::Exec::serial; // two amplitudes, nothing to parallelize
    AdaptiveIntegrator<decltype(rhs)> integ(rhs, y0, 0.0, control);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    ObservableTrajectory traj;
    traj.times = grid.times();
    const int n = grid.n_samples;
    traj.dimensionless_T.resize(static_cast<size_t>(n));
    traj.E_B.resize(static_cast<size_t>(n));
    traj.E_A.assign(static_cast<size_t>(n), nan);
    traj.W.assign(static_cast<size_t>(n), nan);
    traj.ratio.assign(static_cast<size_t>(n), nan);
    traj.diagnostics.assign(static_cast<size_t>(n), SampleDiagnostics{});

    for (int k = 0; k < n; ++k) {
        if (k > 0) {
            integ.advance_to(grid.time_at(k));
        }
        const Complex beta = integ.state()(1, 0);
        const Complex alpha = integ.state()(0, 0);
        if (std::abs(alpha) > options.divergence_bound ||
            std::abs(beta) > options.divergence_bound) {
            throw MeanFieldDivergence("mean-field amplitude exceeded " +
                                      std::to_string(options.divergence_bound) + " at t = " +
                                      std::to_string(grid.time_at(k)));
        }
        const double nb = std::norm(beta);
        traj.dimensionless_T[static_cast<size_t>(k)] = dimensionless_time(grid.time_at(k), params);
        traj.E_B[static_cast<size_t>(k)] = params.omega0 * nb + params.kerr * nb * nb;
    }
    traj.P_B = charging_power(traj.times, traj.E_B);
    return traj;
}

} // namespace kerrbat
