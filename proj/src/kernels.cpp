#include "kerrbat/kernels.hpp"

#include "kerrbat/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kerrbat::kernels {

std::vector<ShiftTerm> shift_decompose(const Matrix& op) {
    if (op.rows() != op.cols()) {
        throw std::invalid_argument("shift_decompose: matrix must be square");
    }
    const int d = static_cast<int>(op.rows());
    std::vector<ShiftTerm> terms;
    for (int shift = -(d - 1); shift <= d - 1; ++shift) {
        const int lo = std::max(0, -shift);
        const int hi = d - std::max(0, shift);
        bool any = false;
        Vector w = Vector::Zero(d);
        for (int i = lo; i < hi; ++i) {
            const Complex v = op(i, i + shift);
            if (v != Complex{0.0, 0.0}) {
                w(i) = v;
                any = true;
            }
        }
        if (any) {
            terms.push_back(ShiftTerm{shift, std::move(w)});
        }
    }
    return terms;
}

Matrix shift_reconstruct(std::span<const ShiftTerm> terms, int dim) {
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& t : terms) {
        const int lo = std::max(0, -t.shift);
        const int hi = dim - std::max(0, t.shift);
        for (int i = lo; i < hi; ++i) {
            out(i, i + t.shift) += t.weight(i);
        }
    }
    return out;
}

LindbladAction::LindbladAction(const ModelParams& params, const HilbertSpec& spec)
    : spec_(spec), params_(params), dim_(spec.joint_dim()), gamma_(params.gamma) {
    params.validate();
    const Matrix a  = fock::embed_charger(fock::annihilation(spec.dim_charger), spec);
    const Matrix na = fock::adjoint(a) * a;
    const Matrix m  = -kImag * hamiltonian(params, spec) - 0.5 * params.gamma * na;

    drift_ = shift_decompose(m);
    if ((shift_reconstruct(drift_, dim_) - m).cwiseAbs().maxCoeff() != 0.0) {
        throw std::logic_error("LindbladAction: drift decomposition does not reconstruct M");
    }

    auto jump_terms = shift_decompose(a);
    if (jump_terms.size() != 1 || jump_terms.front().shift != spec.dim_battery) {
        throw std::logic_error("LindbladAction: charger annihilation is not a single shift");
    }
    jump_ = std::move(jump_terms.front());
}

void LindbladAction::apply(const Matrix& rho, Matrix& out, Exec exec) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
        throw std::invalid_argument("LindbladAction::apply: state is " +
                                    std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                                    " but joint dimension is " + std::to_string(dim_));
    }
    out.resize(dim_, dim_);

    const int d = dim_;
    const int jshift = jump_.shift;
    const Complex* jw = jump_.weight.data();
    const double gamma = gamma_;
    const Complex* rho_p = rho.data();
    Complex* out_p = out.data();
    const auto col = [d](const Complex* base, int j) -> const Complex* {
        return base + static_cast<long>(j) * d;
    };

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int j = 0; j < d; ++j) {
        Complex* o = out_p + static_cast<long>(j) * d;
        for (int i = 0; i < d; ++i) {
            o[i] = Complex{0.0, 0.0};
        }

        // left drift: out(i, j) += w(i) * rho(i + s, j)
        const Complex* rj = col(rho_p, j);
        for (const auto& t : drift_) {
            const int lo = std::max(0, -t.shift);
            const int hi = d - std::max(0, t.shift);
            const Complex* w = t.weight.data();
            const Complex* src = rj + t.shift;
            for (int i = lo; i < hi; ++i) {
                o[i] += w[i] * src[i];
            }
        }

        // right drift: out(:, j) += conj(w(j)) * rho(:, j + s)
        for (const auto& t : drift_) {
            const int lo = std::max(0, -t.shift);
            const int hi = d - std::max(0, t.shift);
            if (j < lo || j >= hi) {
                continue;
            }
            const Complex c = std::conj(t.weight(j));
            if (c == Complex{0.0, 0.0}) {
                continue;
            }
            const Complex* src = col(rho_p, j + t.shift);
            for (int i = 0; i < d; ++i) {
                o[i] += c * src[i];
            }
        }

        // jump sandwich: out(i, j) += gamma * w(i) conj(w(j)) * rho(i+s, j+s)
        if (j + jshift < d) {
            const Complex c = gamma * std::conj(jw[j]);
            if (c != Complex{0.0, 0.0}) {
                const Complex* src = col(rho_p, j + jshift) + jshift;
                for (int i = 0; i < d - jshift; ++i) {
                    o[i] += c * jw[i] * src[i];
                }
            }
        }
    }
}

void linear_combination(Matrix& out, const Matrix& base, std::span<const double> coeffs,
                        std::span<const Matrix* const> terms, Exec exec) {
    if (coeffs.size() != terms.size()) {
        throw std::invalid_argument("linear_combination: coefficient/term count mismatch");
    }
    out.resize(base.rows(), base.cols());
    const long n = static_cast<long>(base.size());
    const int k = static_cast<int>(coeffs.size());
    const Complex* b = base.data();
    Complex* o = out.data();

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (long i = 0; i < n; ++i) {
        Complex acc = b[i];
        for (int t = 0; t < k; ++t) {
            acc += coeffs[t] * terms[t]->data()[i];
        }
        o[i] = acc;
    }
}

double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1, double atol, double rtol,
                  Exec exec) {
    const long n = static_cast<long>(err.size());
    if (n == 0) {
        return 0.0;
    }
    const Complex* e = err.data();
    const Complex* a = y0.data();
    const Complex* b = y1.data();

    // fixed-size chunking keeps the summation order independent of threads
    constexpr long kChunk = 4096;
    const long nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(static_cast<size_t>(nchunks), 0.0);

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (long c = 0; c < nchunks; ++c) {
        const long lo = c * kChunk;
        const long hi = std::min(n, lo + kChunk);
        double s = 0.0;
        for (long i = lo; i < hi; ++i) {
            const double mag = std::abs(e[i]);
            const double scale = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
            if (scale > 0.0) {
                const double q = mag / scale;
                s += q * q;
            } else if (mag > 0.0) {
                s = std::numeric_limits<double>::infinity(); // unsatisfiable tolerance
            }
        }
        partial[static_cast<size_t>(c)] = s;
    }

    double total = 0.0;
    for (double s : partial) {
        total += s;
    }
    return std::sqrt(total / static_cast<double>(n));
}

} // namespace kerrbat::kernels
