#pragma once

#include "renormal/field.hpp"
#include "renormal/spectral.hpp"

namespace renormal {

// Gradient-noise operator K in divergence form. On a scalar f it returns the
// m-vector (K f)_k = d_i(sigma_ik f); on an m-vector g it returns the scalar
// K g = d_i(sigma_ik g_k). Repeated indices are summed. Products are formed
// pointwise and then differentiated, so every output is an exact discrete
// total divergence under the spectral backend.

VectorFieldM apply_K_scalar(const SigmaField& sigma, const ScalarField& f, const Discretization& disc = {});
ScalarField apply_K_vector(const SigmaField& sigma, const VectorFieldM& g, const Discretization& disc = {});

/// K applied to f == 1: the m-vector (d_i sigma_ik)_k.
VectorFieldM div_sigma(const SigmaField& sigma, const Discretization& disc = {});

/// 1/2 K K u, the drift produced by converting Stratonovich to Ito noise.
ScalarField ito_correction(const SigmaField& sigma, const ScalarField& u, const Discretization& disc = {});

/// sum_i d_i p_i with the chosen backend; p.size() must equal the grid dimension.
ScalarField divergence(const std::vector<ScalarField>& p, const Discretization& disc = {});

}  // namespace renormal
