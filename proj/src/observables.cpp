#include "kerrbat/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kerrbat {

Matrix partial_trace_battery(const Matrix& rho, const HilbertSpec& spec) {
    const int d = spec.joint_dim();
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("partial_trace_battery: state is " +
                                    std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + " but joint dimension is " +
                                    std::to_string(d));
    }
    const int da = spec.dim_charger, db = spec.dim_battery;
    Matrix out = Matrix::Zero(db, db);
    for (int na = 0; na < da; ++na) {
        out += rho.block(na * db, na * db, db, db);
    }
    return out;
}

double battery_energy(const Matrix& rho_b, const ModelParams& params) {
    const int db = static_cast<int>(rho_b.rows());
    Complex e{0.0, 0.0};
    for (int n = 0; n < db; ++n) {
        e += rho_b(n, n) * battery_level_energy(params, n);
    }
    return e.real();
}

double charger_energy(const Matrix& rho, const HilbertSpec& spec, const ModelParams& params) {
    const int d = spec.joint_dim();
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("charger_energy: state dimension mismatch");
    }
    Complex e{0.0, 0.0};
    for (int i = 0; i < d; ++i) {
        e += rho(i, i) * static_cast<double>(spec.charger_level(i));
    }
    return params.omega0 * e.real();
}

ErgotropyResult ergotropy(const Matrix& rho_b, const ModelParams& params) {
    const double herm = hermiticity_defect(rho_b);
    if (herm > 1e-8) {
        throw std::invalid_argument("ergotropy: state Hermiticity defect " + std::to_string(herm));
    }
    const int db = static_cast<int>(rho_b.rows());

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho_b + rho_b.adjoint()),
                                             Eigen::EigenvaluesOnly);
    Eigen::VectorXd r = es.eigenvalues();

    ErgotropyResult result;
    double clipped_mass = 0.0;
    for (int n = 0; n < db; ++n) {
        if (r(n) < 0.0) {
            clipped_mass -= r(n);
            r(n) = 0.0;
        }
    }
    if (clipped_mass > 1e-10) {
        const double total = r.sum();
        if (total > 0.0) {
            r /= total;
        }
        result.clipped = true;
    }
    std::sort(r.data(), r.data() + r.size(), std::greater<double>());

    std::vector<double> levels(static_cast<size_t>(db));
    for (int n = 0; n < db; ++n) {
        levels[static_cast<size_t>(n)] = battery_level_energy(params, n);
    }
    std::sort(levels.begin(), levels.end()); // "epsilon_n < epsilon_{n+1}", also for U < 0

    double passive = 0.0;
    for (int n = 0; n < db; ++n) {
        passive += r(n) * levels[static_cast<size_t>(n)];
    }

    result.stored_energy = battery_energy(rho_b, params);
    result.passive_energy = passive;
    result.ergotropy = result.stored_energy - passive;
    result.eigenvalues = std::move(r);
    result.battery_levels = std::move(levels);
    return result;
}

std::vector<double> charging_power(const std::vector<double>& times,
                                   const std::vector<double>& stored_energy) {
    if (times.size() != stored_energy.size()) {
        throw std::invalid_argument("charging_power: series length mismatch");
    }
    std::vector<double> p(times.size(), 0.0);
    for (size_t k = 0; k < times.size(); ++k) {
        p[k] = times[k] > 0.0 ? stored_energy[k] / times[k] : 0.0;
    }
    return p;
}

Optimum find_optimum(const std::vector<double>& times, const std::vector<double>& stored_energy) {
    if (times.empty() || times.size() != stored_energy.size()) {
        throw std::invalid_argument("find_optimum: empty or mismatched series");
    }
    Optimum best{times[0], stored_energy[0], 0};
    for (size_t k = 1; k < stored_energy.size(); ++k) {
        if (stored_energy[k] > best.e_max) {
            best = {times[k], stored_energy[k], static_cast<int>(k)};
        }
    }
    return best;
}

std::vector<double> ergotropy_ratio(const std::vector<double>& ergotropy_series,
                                    const std::vector<double>& stored_energy) {
    if (ergotropy_series.size() != stored_energy.size()) {
        throw std::invalid_argument("ergotropy_ratio: series length mismatch");
    }
    std::vector<double> ratio(stored_energy.size(), 0.0);
    for (size_t k = 0; k < stored_energy.size(); ++k) {
        ratio[k] = stored_energy[k] > 1e-12 ? ergotropy_series[k] / stored_energy[k] : 0.0;
    }
    return ratio;
}

} // namespace kerrbat
