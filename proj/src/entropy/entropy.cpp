#include "renormal/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renormal/errors.hpp"

namespace renormal {

bool GrowthCertificate::finite() const {
    return std::isfinite(c0) && std::isfinite(c1) && std::isfinite(c2);
}

GrowthCertificate certify_growth(const RealMap& S, const RealMap& dS, const RealMap& d2S, double q,
                                 double r_max, int samples) {
    if (samples < 2 || !(r_max > 0.0))
        throw std::invalid_argument("certify_growth: need at least two samples over a positive range");
    GrowthCertificate cert;
    cert.r_max = r_max;
    cert.samples = samples;
    // Weight max(1, |r|^e): equivalent to 1 + |r|^e up to a factor 2 and
    // sharp for pure powers (quadratic gives c2 = 2).
    auto weight = [](double a, double e) { return a == 0.0 && e < 0.0 ? INFINITY : std::max(1.0, std::pow(a, e)); };
    for (int n = 0; n < samples; ++n) {
        const double r = -r_max + 2.0 * r_max * n / (samples - 1);
        const double a = std::abs(r);
        cert.c0 = std::max(cert.c0, std::abs(S(r)) / weight(a, q));
        cert.c1 = std::max(cert.c1, std::abs(dS(r)) / weight(a, q - 1.0));
        cert.c2 = std::max(cert.c2, std::abs(d2S(r)) / weight(a, q - 2.0));
    }
    return cert;
}

Entropy make_entropy(const std::string& kind, double q) {
    if (!std::isfinite(q) || q < 1.0)
        throw PreconditionError("entropy growth exponent must be finite and >= 1");
    Entropy e;
    e.kind = kind;
    e.q = q;
    if (kind == "power-smooth") {
        e.S = [q](double r) { return std::pow(1.0 + r * r, 0.5 * q); };
        e.dS = [q](double r) { return q * r * std::pow(1.0 + r * r, 0.5 * q - 1.0); };
        e.d2S = [q](double r) {
            const double s = 1.0 + r * r;
            return q * std::pow(s, 0.5 * q - 2.0) * (1.0 + (q - 1.0) * r * r);
        };
    } else if (kind == "quadratic") {
        if (q < 2.0)
            throw PreconditionError("quadratic entropy violates the growth bound for q < 2");
        e.S = [](double r) { return r * r; };
        e.dS = [](double r) { return 2.0 * r; };
        e.d2S = [](double) { return 2.0; };
    } else if (kind == "linear") {
        e.S = [](double r) { return r; };
        e.dS = [](double) { return 1.0; };
        e.d2S = [](double) { return 0.0; };
    } else if (kind == "custom") {
        throw std::invalid_argument("custom entropies are built with make_custom_entropy");
    } else {
        throw std::invalid_argument("unknown entropy kind: " + kind);
    }
    e.certificate = certify_growth(e.S, e.dS, e.d2S, q);
    return e;
}

Entropy make_custom_entropy(double q, RealMap S, RealMap dS, RealMap d2S) {
    if (!S || !dS || !d2S)
        throw std::invalid_argument("custom entropy needs S, S' and S''");
    Entropy e{"custom", q, std::move(S), std::move(dS), std::move(d2S), {}};
    e.certificate = certify_growth(e.S, e.dS, e.d2S, q);
    if (!e.certificate.finite())
        throw PreconditionError("custom entropy fails the growth bound on the scanned range");
    return e;
}

double weighted_integral(const ScalarField& f, const ScalarField& phi) {
    require_same_grid(f.grid(), phi.grid(), "weighted_integral");
    return mean(phi * f);
}

}  // namespace renormal
