#pragma once

#include <array>

#include "renormal/exponents.hpp"
#include "renormal/field.hpp"
#include "renormal/mollifier.hpp"
#include "renormal/spectral.hpp"

namespace renormal {

/// How J_delta and its derivative kernels are applied.
enum class ConvolutionPath { transform, direct };

/// J_delta applied along the chosen path.
ScalarField smooth(const ScalarField& f, const MollifierKernel& kernel, ConvolutionPath path);
VectorFieldM smooth(const VectorFieldM& f, const MollifierKernel& kernel, ConvolutionPath path);

/// E2 = J(K u) - K(J u), the first-order mollification commutator.
VectorFieldM e2(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                ConvolutionPath path = ConvolutionPath::transform, const Discretization& disc = {});

/// E3 = (K K J u - J K K u) / 2.
ScalarField e3(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
               ConvolutionPath path = ConvolutionPath::transform, const Discretization& disc = {});

/// [K, J] u = K J u - J K u on a scalar (an m-vector; equals -E2).
VectorFieldM bracket_KJ(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                        ConvolutionPath path = ConvolutionPath::transform, const Discretization& disc = {});
/// [K, J] g = K J g - J K g on an m-vector (a scalar).
ScalarField bracket_KJ(const SigmaField& sigma, const VectorFieldM& g, const MollifierKernel& kernel,
                       ConvolutionPath path = ConvolutionPath::transform, const Discretization& disc = {});

/// [[K, J], K] u in unpacked form 2 K J K u - J K K u - K K J u.
ScalarField double_commutator(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                              ConvolutionPath path = ConvolutionPath::transform,
                              const Discretization& disc = {});
/// [[K, J], K] u as nested brackets [K, J](K u) - K([K, J] u).
ScalarField double_commutator_nested(const SigmaField& sigma, const ScalarField& u,
                                     const MollifierKernel& kernel,
                                     ConvolutionPath path = ConvolutionPath::transform,
                                     const Discretization& disc = {});

/// The eight integral terms of the double commutator. terms[n] holds term
/// n+1. Each line carries its own sign, so J K K u = T3 + T4 (T4 includes
/// the minus sign) and K K J u = T5 + T6 + T7 + T8.
struct DecompositionTerms {
    std::array<ScalarField, 8> terms;
    ScalarField I1;  // T2 - T6
    ScalarField I2;  // -T4 - T8
    ScalarField I3;  // T1 - T3 - T7

    const ScalarField& T(int n) const { return terms.at(n - 1); }
    const ScalarField& standalone() const { return terms[4]; }
    /// I1 + I2 + I3 - T5, which equals the double commutator.
    ScalarField reassembled() const;
};

/// Evaluates every term literally: sigma factors and their spectral
/// derivatives at x times convolutions against the sampled kernel
/// derivatives d_i J, d_ij J.
DecompositionTerms decompose(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                             ConvolutionPath path = ConvolutionPath::transform);

/// delta -> 0 limits of I1, I2, I3 and -T5. With (grad sigma)_k = d_i sigma_ik
/// and |grad sigma|^2 = sum_k (grad sigma)_k^2:
///   L1 = 2 |grad sigma|^2 u
///   L2 = d_j(sigma_ik d_i sigma_jk) u
///   L3 = -(d_j sigma_ik d_i sigma_jk + |grad sigma|^2) u
///   L5 = -d_i(sigma_ik (grad sigma)_k) u
/// They sum to zero pointwise.
struct LimitFields {
    ScalarField L1;
    ScalarField L2;
    ScalarField L3;
    ScalarField L5;

    ScalarField sum() const { return L1 + L2 + L3 + L5; }
};

LimitFields analytic_limits(const SigmaField& sigma, const ScalarField& u);

/// L^q norms of I1 - L1, I2 - L2, I3 - L3 and (-T5) - L5.
std::array<double, 4> limit_residuals(const SigmaField& sigma, const ScalarField& u,
                                      const MollifierKernel& kernel, const Exponent& q,
                                      ConvolutionPath path = ConvolutionPath::transform);

/// Per-node CSV: node,T1..T8,I1,I2,I3,double_commutator.
void write_terms_csv(const std::filesystem::path& path, const DecompositionTerms& terms,
                     const ScalarField& double_commutator);

}  // namespace renormal
