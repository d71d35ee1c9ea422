#pragma once

#include "renormal/exponents.hpp"
#include "renormal/field.hpp"

namespace renormal {

/// (h^d sum |f|^q)^(1/q); the discrete maximum for q = inf. Throws
/// std::invalid_argument for q < 1.
double lq_norm(const ScalarField& f, const Exponent& q);
/// L^q norm of the pointwise Euclidean magnitude.
double lq_norm(const VectorFieldM& f, const Exponent& q);

/// Sum of the L^r norms of f and all its spectral partial derivatives of
/// order 1..order (mixed partials counted once, i <= j). order is 1 or 2.
double sobolev_norm(const ScalarField& f, int order, const Exponent& r);
/// Sum of sobolev_norm over every component sigma_ik.
double sobolev_norm(const SigmaField& sigma, int order, const Exponent& r);

}  // namespace renormal
