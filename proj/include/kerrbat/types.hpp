// types.hpp — basic aliases and the two-mode Hilbert-space descriptor

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace kerrbat {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

inline constexpr Complex kImag{0.0, 1.0};

// Truncated Fock dimensions of the charger (mode a) and battery (mode b).
// Joint-space indexing is charger-first: index = n_a * dim_battery + n_b,
// so a partial trace over the charger is a contiguous block sum.
struct HilbertSpec {
    int dim_charger;
    int dim_battery;

    HilbertSpec(int da, int db) : dim_charger(da), dim_battery(db) {
        if (da < 2 || db < 2) {
            throw std::invalid_argument("HilbertSpec: mode dimensions must be >= 2, got (" +
                                        std::to_string(da) + ", " + std::to_string(db) + ")");
        }
    }

    int joint_dim() const { return dim_charger * dim_battery; }
    int index(int na, int nb) const { return na * dim_battery + nb; }
    int charger_level(int idx) const { return idx / dim_battery; }
    int battery_level(int idx) const { return idx % dim_battery; }
};

} // namespace kerrbat
