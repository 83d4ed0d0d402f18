// fock.hpp — truncated bosonic ladder operators and tensor-product helpers.
// All functions return fresh dense matrices; nothing here mutates its inputs.

#pragma once

#include "kerrbat/types.hpp"

namespace kerrbat::fock {

// a|n> = sqrt(n)|n-1>, entries a(n-1, n) = sqrt(n). Throws for dim < 2.
Matrix annihilation(int dim);

// Conjugate transpose.
Matrix adjoint(const Matrix& op);

// diag(0, 1, ..., dim-1). Throws for dim < 2.
Matrix number_operator(int dim);

Matrix identity(int dim);

// Kronecker product, left factor indexes the major blocks (charger-first).
Matrix tensor(const Matrix& left, const Matrix& right);

// op acting on one mode, identity on the other. Throws on dimension mismatch.
Matrix embed_charger(const Matrix& op, const HilbertSpec& spec);
Matrix embed_battery(const Matrix& op, const HilbertSpec& spec);

} // namespace kerrbat::fock
