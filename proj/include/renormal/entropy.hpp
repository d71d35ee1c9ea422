#pragma once

#include <functional>
#include <string>

#include "renormal/commutators.hpp"

namespace renormal {

/// Empirical growth constants: over the scanned range
/// |S| <= c0 max(1, |r|^q), |S'| <= c1 max(1, |r|^{q-1}), |S''| <= c2 max(1, |r|^{q-2}).
struct GrowthCertificate {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double r_max = 100.0;
    int samples = 10000;

    bool finite() const;
};

using RealMap = std::function<double(double)>;

struct Entropy {
    std::string kind;
    double q = 2.0;
    RealMap S;
    RealMap dS;
    RealMap d2S;
    GrowthCertificate certificate;
};

/// Scans r over [-r_max, r_max] with `samples` evenly spaced points.
GrowthCertificate certify_growth(const RealMap& S, const RealMap& dS, const RealMap& d2S, double q,
                                 double r_max = 100.0, int samples = 10000);

/// "power-smooth": S = (1 + r^2)^{q/2}. "quadratic": S = r^2, needs q >= 2.
/// "linear": S = r (q = 1), the degenerate case with S'' = 0.
Entropy make_entropy(const std::string& kind, double q);
/// User-supplied S with its two derivatives; the certificate is computed here.
Entropy make_custom_entropy(double q, RealMap S, RealMap dS, RealMap d2S);

/// S'(u_d) E3 - S''(u_d) sum_k E2_k (K u_d)_k with u_d = J u.
ScalarField theorem_combination(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                                const Entropy& entropy, ConvolutionPath path = ConvolutionPath::transform);

/// The same combination rewritten with c = [K, J] u = -E2:
///   1/2 S'(u_d) [[K, J], K] u + S''(u_d) u_d c.grad(sigma) + K(S'(u_d) c).
/// Both sides are assembled independently; the return value is lhs - rhs.
/// Exact when the discrete chain and product rules are, i.e. band-limited
/// data and S at most quadratic.
ScalarField proof_identity(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                           const Entropy& entropy, ConvolutionPath path = ConvolutionPath::transform);

/// h^d sum phi f.
double weighted_integral(const ScalarField& f, const ScalarField& phi);

}  // namespace renormal
