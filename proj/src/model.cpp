#include "kerrbat/model.hpp"

#include "kerrbat/fock.hpp"

#include <cmath>
#include <string>

namespace kerrbat {

void ModelParams::validate() const {
    if (!(omega0 > 0.0)) {
        throw std::invalid_argument("ModelParams: omega0 must be positive, got " +
                                    std::to_string(omega0));
    }
    if (g < 0.0 || drive < 0.0 || gamma < 0.0) {
        throw std::invalid_argument("ModelParams: g, F and gamma must be nonnegative");
    }
}

std::vector<std::string> ModelParams::regime_warnings(const HilbertSpec& spec) const {
    std::vector<std::string> notes;
    if (std::abs(kerr) * (spec.dim_battery - 1) > 10.0 * omega0) {
        notes.push_back("|U|*(dim_battery-1) exceeds 10*omega0; qubit-limit truncation "
                        "semantics dominate the battery ladder");
    }
    if (kerr < 0.0) {
        notes.push_back("U < 0: unvalidated regime (accepted numerically)");
    }
    return notes;
}

double battery_level_energy(const ModelParams& params, int n) {
    return params.omega0 * n + params.kerr * static_cast<double>(n) * (n - 1);
}

Matrix hamiltonian(const ModelParams& params, const HilbertSpec& spec) {
    params.validate();
    using namespace fock;
    const Matrix a  = embed_charger(annihilation(spec.dim_charger), spec);
    const Matrix b  = embed_battery(annihilation(spec.dim_battery), spec);
    const Matrix ad = adjoint(a);
    const Matrix bd = adjoint(b);

    Matrix h = params.delta * (ad * a + bd * b);
    h += params.g * (a * bd + ad * b);
    h += params.drive * (ad + a);
    h += params.kerr * (bd * bd * b * b);
    return h;
}

Matrix lindblad_rhs(const ModelParams& params, const HilbertSpec& spec, const Matrix& rho) {
    const int d = spec.joint_dim();
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("lindblad_rhs: state is " + std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + " but joint dimension is " +
                                    std::to_string(d));
    }
    const Matrix h  = hamiltonian(params, spec);
    const Matrix a  = fock::embed_charger(fock::annihilation(spec.dim_charger), spec);
    const Matrix ad = fock::adjoint(a);
    const Matrix na = ad * a;

    Matrix out = -kImag * (h * rho - rho * h);
    out += 0.5 * params.gamma * (2.0 * a * rho * ad - na * rho - rho * na);
    return out;
}

Matrix liouvillian_matrix(const ModelParams& params, const HilbertSpec& spec, int dim_cap) {
    const int d = spec.joint_dim();
    if (d > dim_cap) {
        throw std::invalid_argument("liouvillian_matrix: joint dimension " + std::to_string(d) +
                                    " exceeds the configured cap " + std::to_string(dim_cap) +
                                    " (oracle-only operation)");
    }
    using namespace fock;
    const Matrix h  = hamiltonian(params, spec);
    const Matrix a  = embed_charger(annihilation(spec.dim_charger), spec);
    const Matrix na = adjoint(a) * a;
    const Matrix id = identity(d);

    Matrix lv = -kImag * (tensor(id, h) - tensor(h.transpose(), id));
    lv += 0.5 * params.gamma *
          (2.0 * tensor(a.conjugate(), a) - tensor(id, na) - tensor(na.transpose(), id));
    return lv;
}

} // namespace kerrbat
