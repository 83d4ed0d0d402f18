#include "kerrbat/dynamics.hpp"

#include "kerrbat/fock.hpp"
#include "kerrbat/kernels.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace kerrbat {

double hermiticity_defect(const Matrix& rho) {
    const double scale = rho.norm();
    if (scale == 0.0) {
        return 0.0;
    }
    return (rho - rho.adjoint()).norm() / scale;
}

double min_eigenvalue(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void validate_density(const Matrix& rho, const DensityTolerances& tol) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("validate_density: matrix is not square");
    }
    const double herm = hermiticity_defect(rho);
    if (herm > tol.hermiticity) {
        throw std::invalid_argument("validate_density: Hermiticity defect " +
                                    std::to_string(herm));
    }
    const double trace_err = std::abs(rho.trace() - Complex{1.0, 0.0});
    if (trace_err > tol.trace) {
        throw std::invalid_argument("validate_density: trace deviates from 1 by " +
                                    std::to_string(trace_err));
    }
    const double lam = min_eigenvalue(0.5 * (rho + rho.adjoint()));
    if (lam < tol.min_eigenvalue) {
        throw std::invalid_argument("validate_density: minimum eigenvalue " +
                                    std::to_string(lam));
    }
}

Matrix vacuum_state(const HilbertSpec& spec) { return fock_state(spec, 0, 0); }

Matrix fock_state(const HilbertSpec& spec, int na, int nb) {
    if (na < 0 || na >= spec.dim_charger || nb < 0 || nb >= spec.dim_battery) {
        throw std::invalid_argument("fock_state: level out of range");
    }
    Matrix rho = Matrix::Zero(spec.joint_dim(), spec.joint_dim());
    rho(spec.index(na, nb), spec.index(na, nb)) = 1.0;
    return rho;
}

namespace {

SampleDiagnostics diagnose(const Matrix& sym, double herm_drift, const HilbertSpec& spec) {
    SampleDiagnostics d;
    d.herm_drift = herm_drift;
    d.trace_err = std::abs(sym.trace() - Complex{1.0, 0.0});
    d.min_eigenvalue = min_eigenvalue(sym);
    const int da = spec.dim_charger, db = spec.dim_battery;
    double tail_a = 0.0, tail_b = 0.0;
    for (int nb = 0; nb < db; ++nb) {
        tail_a += sym(spec.index(da - 1, nb), spec.index(da - 1, nb)).real();
    }
    for (int na = 0; na < da; ++na) {
        tail_b += sym(spec.index(na, db - 1), spec.index(na, db - 1)).real();
    }
    d.tail_pop_charger = tail_a;
    d.tail_pop_battery = tail_b;
    return d;
}

} // namespace

bool evolve_observed(const ModelParams& params, const HilbertSpec& spec, const TimeGrid& grid,
                     const Matrix& rho0, const EvolveOptions& options,
                     const SampleObserver& observer, IntegrationStats* stats) {
    const int d = spec.joint_dim();
    if (rho0.rows() != d || rho0.cols() != d) {
        throw std::invalid_argument("evolve: initial state is " + std::to_string(rho0.rows()) +
                                    "x" + std::to_string(rho0.cols()) +
                                    " but joint dimension is " + std::to_string(d));
    }
    validate_density(rho0);

    const kernels::LindbladAction action(params, spec);
    const auto exec = options.control.exec;
    auto rhs = [&action, exec](const Matrix& y, Matrix& dy) { action.apply(y, dy, exec); };

    AdaptiveIntegrator<decltype(rhs)> integ(rhs, rho0, 0.0, options.control);

    bool clean = true;
    Matrix sym(d, d);
    for (int k = 0; k < grid.n_samples; ++k) {
        if (k > 0) {
            integ.advance_to(grid.time_at(k));
        }
        const Matrix& raw = integ.state();
        const double drift = hermiticity_defect(raw);
        sym = 0.5 * (raw + raw.adjoint());
        if (k > 0) {
            integ.reset_state(sym);
        }
        const SampleDiagnostics diag = diagnose(sym, drift, spec);
        if (diag.tail_pop_charger > options.tail_threshold_charger ||
            diag.tail_pop_battery > options.tail_threshold_battery) {
            clean = false;
        }
        observer(k, grid.time_at(k), sym, diag);
    }
    if (stats) {
        *stats = integ.stats();
    }
    return clean;
}

StateTrajectory evolve(const ModelParams& params, const HilbertSpec& spec, const TimeGrid& grid,
                       const Matrix& rho0, const EvolveOptions& options) {
    StateTrajectory traj;
    traj.times = grid.times();
    traj.states.reserve(static_cast<size_t>(grid.n_samples));
    traj.diagnostics.reserve(static_cast<size_t>(grid.n_samples));
    const bool clean = evolve_observed(
        params, spec, grid, rho0, options,
        [&traj](int, double, const Matrix& rho, const SampleDiagnostics& diag) {
            traj.states.push_back(rho);
            traj.diagnostics.push_back(diag);
        },
        &traj.stats);
    traj.tainted = !clean;
    return traj;
}

StateTrajectory evolve_expm_oracle(const ModelParams& params, const HilbertSpec& spec,
                                   const TimeGrid& grid, const Matrix& rho0, int dim_cap) {
    const int d = spec.joint_dim();
    if (rho0.rows() != d || rho0.cols() != d) {
        throw std::invalid_argument("evolve_expm_oracle: state dimension mismatch");
    }
    validate_density(rho0);
    const Matrix lv = liouvillian_matrix(params, spec, dim_cap);
    const double dt = grid.time_at(1) - grid.time_at(0);
    const Matrix propagator = (lv * dt).exp();

    StateTrajectory traj;
    traj.times = grid.times();
    Vector v = Eigen::Map<const Vector>(rho0.data(), rho0.size());
    for (int k = 0; k < grid.n_samples; ++k) {
        if (k > 0) {
            v = propagator * v;
        }
        Matrix rho = Eigen::Map<const Matrix>(v.data(), d, d);
        const double drift = hermiticity_defect(rho);
        rho = 0.5 * (rho + rho.adjoint());
        traj.states.push_back(rho);
        traj.diagnostics.push_back(diagnose(rho, drift, spec));
    }
    return traj;
}

Matrix steady_state(const ModelParams& params, const HilbertSpec& spec, int dim_cap) {
    const int d = spec.joint_dim();
    const Matrix lv = liouvillian_matrix(params, spec, dim_cap);

    Eigen::FullPivLU<Matrix> lu(lv);
    lu.setThreshold(1e-10);
    const Matrix kernel = lu.kernel();
    if (kernel.cols() != 1) {
        throw std::runtime_error("steady_state: null space dimension is " +
                                 std::to_string(kernel.cols()) + ", expected 1");
    }

    Matrix rho = Eigen::Map<const Matrix>(kernel.col(0).data(), d, d);
    rho = 0.5 * (rho + rho.adjoint());
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-12) {
        throw std::runtime_error("steady_state: null vector is traceless, no state solution");
    }
    rho /= tr;

    const Vector v = Eigen::Map<const Vector>(rho.data(), rho.size());
    const double residual = (lv * v).norm();
    if (residual > 1e-9) {
        throw std::runtime_error("steady_state: residual " + std::to_string(residual) +
                                 " exceeds 1e-9");
    }
    return rho;
}

} // namespace kerrbat
