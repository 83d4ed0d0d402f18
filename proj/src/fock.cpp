#include "kerrbat/fock.hpp"

#include <cmath>
#include <string>

namespace kerrbat::fock {

namespace {
void require_mode_dim(int dim, const char* who) {
    if (dim < 2) {
        throw std::invalid_argument(std::string(who) + ": mode dimension must be >= 2, got " +
                                    std::to_string(dim));
    }
}
} // namespace

Matrix annihilation(int dim) {
    require_mode_dim(dim, "annihilation");
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Matrix adjoint(const Matrix& op) { return op.adjoint(); }

Matrix number_operator(int dim) {
    require_mode_dim(dim, "number_operator");
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        n(k, k) = static_cast<double>(k);
    }
    return n;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix tensor(const Matrix& left, const Matrix& right) {
    const auto lr = left.rows(), lc = left.cols();
    const auto rr = right.rows(), rc = right.cols();
    Matrix out(lr * rr, lc * rc);
    for (Eigen::Index i = 0; i < lr; ++i) {
        for (Eigen::Index j = 0; j < lc; ++j) {
            out.block(i * rr, j * rc, rr, rc) = left(i, j) * right;
        }
    }
    return out;
}

Matrix embed_charger(const Matrix& op, const HilbertSpec& spec) {
    if (op.rows() != spec.dim_charger || op.cols() != spec.dim_charger) {
        throw std::invalid_argument("embed_charger: operator is " + std::to_string(op.rows()) +
                                    "x" + std::to_string(op.cols()) + " but charger dimension is " +
                                    std::to_string(spec.dim_charger));
    }
    return tensor(op, identity(spec.dim_battery));
}

Matrix embed_battery(const Matrix& op, const HilbertSpec& spec) {
    if (op.rows() != spec.dim_battery || op.cols() != spec.dim_battery) {
        throw std::invalid_argument("embed_battery: operator is " + std::to_string(op.rows()) +
                                    "x" + std::to_string(op.cols()) + " but battery dimension is " +
                                    std::to_string(spec.dim_battery));
    }
    return tensor(identity(spec.dim_charger), op);
}

} // namespace kerrbat::fock
