// kernels.hpp — the data-parallel inner loops of the integrator.
//
// The master-equation generator acts as
//     L(rho) = M rho + rho M† + gamma A rho A†,   M = -iH - (gamma/2) A†A,
// and every operator involved is a sum of weighted index shifts
// (ladder structure), so one application costs O(d^2) instead of the
// O(d^3) of dense products. The shift terms are extracted numerically
// from the dense operators at construction and verified to reconstruct
// them exactly; the dense route model::lindblad_rhs stays as the serial
// reference these kernels are tested against.
//
// All kernels are bit-deterministic: results are identical for Exec::serial
// and Exec::parallel and independent of the OpenMP thread count.

#pragma once

#include "kerrbat/model.hpp"
#include "kerrbat/types.hpp"

#include <span>
#include <vector>

namespace kerrbat::kernels {

enum class Exec { serial, parallel };

// One shifted diagonal of an operator S: S(i, i + shift) = weight[i],
// weight[i] = 0 where the entry does not exist.
struct ShiftTerm {
    int shift = 0;
    Vector weight;
};

// Decompose a dense matrix into its nonzero shifted diagonals.
std::vector<ShiftTerm> shift_decompose(const Matrix& op);

// Reassemble a dense matrix from shift terms (testing aid).
Matrix shift_reconstruct(std::span<const ShiftTerm> terms, int dim);

// Structured application of the Lindblad generator.
class LindbladAction {
  public:
    LindbladAction(const ModelParams& params, const HilbertSpec& spec);

    // out = L(rho). Both matrices must be joint-dimension square; out is
    // overwritten. rho and out must not alias.
    void apply(const Matrix& rho, Matrix& out, Exec exec) const;

    int dim() const { return dim_; }
    const HilbertSpec& space() const { return spec_; }
    const ModelParams& params() const { return params_; }

  private:
    HilbertSpec spec_;
    ModelParams params_;
    int dim_;
    std::vector<ShiftTerm> drift_;  // M = -iH - (gamma/2) A†A
    ShiftTerm jump_;                // A (embedded charger annihilation)
    double gamma_;
};

// out = base + sum_i coeffs[i] * (*terms[i]), all matrices the same shape.
// out may alias base but none of the terms.
void linear_combination(Matrix& out, const Matrix& base, std::span<const double> coeffs,
                        std::span<const Matrix* const> terms, Exec exec);

// Hairer-style weighted RMS norm of a local error estimate:
//   sqrt( mean_i |err_i|^2 / (atol + rtol*max(|y0_i|, |y1_i|))^2 ).
// The reduction is chunked in a fixed order so the value does not depend on
// the thread count.
double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1, double atol, double rtol,
                  Exec exec);

} // namespace kerrbat::kernels
