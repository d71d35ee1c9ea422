#include "renormal/commutators.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "renormal/norms.hpp"
#include "renormal/operators.hpp"

namespace renormal {

namespace {

// Convolution against an arbitrary kernel field along the chosen path.
class KernelConvolver {
public:
    KernelConvolver(const ScalarField& kernel, ConvolutionPath path)
        : kernel_(kernel), path_(path),
          spectrum_(path == ConvolutionPath::transform ? forward_transform(kernel) : Spectrum{}) {}

    ScalarField operator()(const ScalarField& f) const {
        return path_ == ConvolutionPath::transform ? circular_convolution(f, spectrum_)
                                                   : direct_convolution(f, kernel_);
    }

private:
    ScalarField kernel_;
    ConvolutionPath path_;
    Spectrum spectrum_;
};

ScalarField sum_of(std::vector<ScalarField> parts) {
    ScalarField acc = std::move(parts.front());
    for (std::size_t n = 1; n < parts.size(); ++n)
        acc = acc + parts[n];
    return acc;
}

}  // namespace

ScalarField smooth(const ScalarField& f, const MollifierKernel& kernel, ConvolutionPath path) {
    require_same_grid(f.grid(), kernel.grid(), "mollification");
    return path == ConvolutionPath::transform ? mollify(f, kernel) : direct_convolution(f, kernel);
}

VectorFieldM smooth(const VectorFieldM& f, const MollifierKernel& kernel, ConvolutionPath path) {
    std::vector<ScalarField> out;
    for (const auto& c : f.all())
        out.push_back(smooth(c, kernel, path));
    return VectorFieldM(std::move(out));
}

VectorFieldM e2(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                ConvolutionPath path, const Discretization& disc) {
    return smooth(apply_K_scalar(sigma, u, disc), kernel, path) -
           apply_K_scalar(sigma, smooth(u, kernel, path), disc);
}

ScalarField e3(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
               ConvolutionPath path, const Discretization& disc) {
    const ScalarField kkj = apply_K_vector(sigma, apply_K_scalar(sigma, smooth(u, kernel, path), disc), disc);
    const ScalarField jkk = smooth(apply_K_vector(sigma, apply_K_scalar(sigma, u, disc), disc), kernel, path);
    return 0.5 * (kkj - jkk);
}

VectorFieldM bracket_KJ(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                        ConvolutionPath path, const Discretization& disc) {
    return apply_K_scalar(sigma, smooth(u, kernel, path), disc) -
           smooth(apply_K_scalar(sigma, u, disc), kernel, path);
}

ScalarField bracket_KJ(const SigmaField& sigma, const VectorFieldM& g, const MollifierKernel& kernel,
                       ConvolutionPath path, const Discretization& disc) {
    return apply_K_vector(sigma, smooth(g, kernel, path), disc) -
           smooth(apply_K_vector(sigma, g, disc), kernel, path);
}

ScalarField double_commutator(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                              ConvolutionPath path, const Discretization& disc) {
    const VectorFieldM ku = apply_K_scalar(sigma, u, disc);
    const ScalarField kjk = apply_K_vector(sigma, smooth(ku, kernel, path), disc);
    const ScalarField jkk = smooth(apply_K_vector(sigma, ku, disc), kernel, path);
    const ScalarField kkj = apply_K_vector(sigma, apply_K_scalar(sigma, smooth(u, kernel, path), disc), disc);
    return 2.0 * kjk - jkk - kkj;
}

ScalarField double_commutator_nested(const SigmaField& sigma, const ScalarField& u,
                                     const MollifierKernel& kernel, ConvolutionPath path,
                                     const Discretization& disc) {
    const VectorFieldM ku = apply_K_scalar(sigma, u, disc);
    return bracket_KJ(sigma, ku, kernel, path, disc) -
           apply_K_vector(sigma, bracket_KJ(sigma, u, kernel, path, disc), disc);
}

ScalarField DecompositionTerms::reassembled() const { return I1 + I2 + I3 - terms[4]; }

DecompositionTerms decompose(const SigmaField& sigma, const ScalarField& u, const MollifierKernel& kernel,
                             ConvolutionPath path) {
    const GridSpec& grid = u.grid();
    require_same_grid(sigma.grid(), grid, "decompose");
    require_same_grid(kernel.grid(), grid, "decompose");
    const int d = sigma.dim();
    const int m = sigma.columns();

    std::vector<KernelConvolver> dJ;
    std::vector<std::vector<KernelConvolver>> d2J(d);
    for (int i = 0; i < d; ++i) {
        dJ.emplace_back(kernel_derivative(kernel, i), path);
        for (int j = 0; j < d; ++j)
            d2J[i].emplace_back(kernel_second_derivative(kernel, i, j), path);
    }
    const ScalarField u_delta = smooth(u, kernel, path);
    const VectorFieldM grad_sigma = div_sigma(sigma);
    // dsigma[k][j][i] = d_j sigma_ik
    std::vector<std::vector<std::vector<ScalarField>>> dsigma(m, std::vector<std::vector<ScalarField>>(d));
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i)
                dsigma[k][j].push_back(derivative(sigma(i, k), j));

    // Convolutions of u against kernel derivatives, shared by T6-T8.
    std::vector<ScalarField> dJ_u;
    std::vector<std::vector<ScalarField>> d2J_u(d);
    for (int i = 0; i < d; ++i) {
        dJ_u.push_back(dJ[i](u));
        for (int j = 0; j < d; ++j)
            d2J_u[i].push_back(d2J[i][j](u));
    }

    std::vector<ScalarField> t1, t2, t3, t4, t6, t7, t8;
    for (int k = 0; k < m; ++k) {
        for (int j = 0; j < d; ++j) {
            const ScalarField sigma_u = sigma(j, k) * u;
            const ScalarField dJ_sigma_u = dJ[j](sigma_u);
            t2.push_back(2.0 * (grad_sigma[k] * dJ_sigma_u));
            for (int i = 0; i < d; ++i) {
                t1.push_back(2.0 * (sigma(i, k) * d2J[i][j](sigma_u)));
                t3.push_back(d2J[i][j](sigma(i, k) * sigma(j, k) * u));
                t4.push_back(-1.0 * dJ[i](sigma(j, k) * dsigma[k][j][i] * u));
                t7.push_back(sigma(i, k) * sigma(j, k) * d2J_u[i][j]);
                // sigma_ik d_i sigma_jk (d_j J * u)
                t8.push_back(sigma(i, k) * dsigma[k][i][j] * dJ_u[j]);
            }
        }
        for (int i = 0; i < d; ++i)
            t6.push_back(2.0 * (sigma(i, k) * grad_sigma[k] * dJ_u[i]));
    }
    const ScalarField t5 = apply_K_vector(sigma, grad_sigma) * u_delta;

    DecompositionTerms out{
        {sum_of(t1), sum_of(t2), sum_of(t3), sum_of(t4), t5, sum_of(t6), sum_of(t7), sum_of(t8)},
        ScalarField(grid), ScalarField(grid), ScalarField(grid)};
    const auto& T = out.terms;
    out.I1 = T[1] - T[5];
    out.I2 = -1.0 * T[3] - T[7];
    out.I3 = T[0] - T[2] - T[6];
    return out;
}

LimitFields analytic_limits(const SigmaField& sigma, const ScalarField& u) {
    const GridSpec& grid = u.grid();
    require_same_grid(sigma.grid(), grid, "analytic_limits");
    const int d = sigma.dim();
    const int m = sigma.columns();
    const VectorFieldM grad_sigma = div_sigma(sigma);
    const ScalarField grad_sq = dot(grad_sigma, grad_sigma);

    // w_j = sigma_ik d_i sigma_jk and c = d_j sigma_ik d_i sigma_jk
    std::vector<ScalarField> w(d, ScalarField(grid));
    ScalarField cross(grid);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                w[j] = w[j] + sigma(i, k) * derivative(sigma(j, k), i);
                cross = cross + derivative(sigma(i, k), j) * derivative(sigma(j, k), i);
            }
    const ScalarField div_w = divergence(w);
    const ScalarField k_grad = apply_K_vector(sigma, grad_sigma);
    return LimitFields{2.0 * grad_sq * u, div_w * u, -1.0 * ((cross + grad_sq) * u), -1.0 * (k_grad * u)};
}

std::array<double, 4> limit_residuals(const SigmaField& sigma, const ScalarField& u,
                                      const MollifierKernel& kernel, const Exponent& q,
                                      ConvolutionPath path) {
    const DecompositionTerms terms = decompose(sigma, u, kernel, path);
    const LimitFields lim = analytic_limits(sigma, u);
    return {lq_norm(terms.I1 - lim.L1, q), lq_norm(terms.I2 - lim.L2, q), lq_norm(terms.I3 - lim.L3, q),
            lq_norm(-1.0 * terms.standalone() - lim.L5, q)};
}

void write_terms_csv(const std::filesystem::path& path, const DecompositionTerms& terms,
                     const ScalarField& double_commutator) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "node,T1,T2,T3,T4,T5,T6,T7,T8,I1,I2,I3,double_commutator\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << sep;
    };
    for (std::size_t x = 0; x < double_commutator.size(); ++x) {
        out << x << ',';
        for (const auto& t : terms.terms)
            put(t[x], ',');
        put(terms.I1[x], ',');
        put(terms.I2[x], ',');
        put(terms.I3[x], ',');
        put(double_commutator[x], '\n');
    }
}

}  // namespace renormal
