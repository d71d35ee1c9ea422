#include "renormal/entropy.hpp"
#include "renormal/operators.hpp"

namespace renormal {

ScalarField theorem_combination(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                                const Entropy& entropy, ConvolutionPath path) {
    const ScalarField u_delta = smooth(u, kernel, path);
    const ScalarField first = u_delta.map(entropy.dS) * e3(sigma, u, kernel, path);
    const ScalarField second =
        u_delta.map(entropy.d2S) * dot(e2(sigma, u, kernel, path), apply_K_scalar(sigma, u_delta));
    return first - second;
}

ScalarField proof_identity(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                           const Entropy& entropy, ConvolutionPath path) {
    const ScalarField lhs = theorem_combination(sigma, u, kernel, entropy, path);
    const ScalarField u_delta = smooth(u, kernel, path);
    const ScalarField s1 = u_delta.map(entropy.dS);
    const VectorFieldM c = -1.0 * e2(sigma, u, kernel, path);
    const ScalarField rhs = 0.5 * (s1 * double_commutator_nested(sigma, u, kernel, path)) +
                            u_delta.map(entropy.d2S) * u_delta * dot(c, div_sigma(sigma)) +
                            apply_K_vector(sigma, s1 * c);
    return lhs - rhs;
}

}  // namespace renormal
