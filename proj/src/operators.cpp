#include "anisolp/operators.hpp"

#include <cmath>

namespace anisolp {

MultiplierSymbol::MultiplierSymbol(Eval eval, bool homogeneous0, Complex origin_value, std::string tag)
    : eval_(std::move(eval)), homogeneous0_(homogeneous0), origin_value_(origin_value), tag_(std::move(tag)) {}

MultiplierSymbol MultiplierSymbol::constant(Complex c) {
    return MultiplierSymbol([c](const VectorN&, Real) { return c; }, true, c, "constant");
}

SpatialField apply_multiplier(const MultiplierSymbol& m, const SpatialField& f, const DilationGroup& G) {
    const auto rho = rho_star_lattice(G, f.grid());
    SpectralField F = to_spectrum(f);
    for (Index i = 0; i < F.coeffs().size(); ++i) {
        const Complex v = m(f.grid().frequency(i), (*rho)[i]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteSymbolError("multiplier is not finite on the lattice");
        F.coeffs()[i] *= v;
    }
    return from_spectrum(F);
}

SpatialField riesz_potential(const SpatialField& f, const DilationGroup& G, Real beta) {
    const auto rho = rho_star_lattice(G, f.grid());
    SpectralField F = to_spectrum(f);
    if (beta > 0.0) {
        const Real l2 = l2_norm(f);
        const Real dc = std::abs(F.coeffs()[0]);  // frequency 0 sits at flat index 0
        if (dc > 1e-10 * l2)
            throw MeanNotZeroError("riesz_potential with beta > 0 needs a zero-mean field");
    }
    for (Index i = 0; i < F.coeffs().size(); ++i) {
        const Real r = (*rho)[i];
        F.coeffs()[i] *= (r > 0.0) ? std::pow(r, -beta) : 0.0;
    }
    return from_spectrum(F);
}

MultiplierSymbol lp_symbol(const LPProfile& psi, const DilationGroup& G, const TQuadrature& quad) {
    // capture by value: nodes, weights, and per-node dilation matrices
    const Index J = quad.count();
    std::vector<MatrixN> mats(J);
    for (Index j = 0; j < J; ++j) mats[j] = G.dilation_matrix(quad.nodes[j], true);
    const Eigen::ArrayXd nodes = quad.nodes, weights = quad.weights;
    const Real t_max = quad.t_max;
    LPProfile p = psi;
    return MultiplierSymbol(
        [p, mats = std::move(mats), nodes, weights, t_max](const VectorN& xi,
                                                           Real rho_star) -> Complex {
            Real sum = 0.0;
            for (Index j = 0; j < nodes.size(); ++j) {
                const Complex v = p.symbol(mats[j] * xi, nodes[j] * rho_star);
                sum += weights[j] * std::norm(v);
            }
            // finish [t_max, infinity) in closed form when the profile
            // declares its large-scale decay (matches the square engines)
            if (p.has_tail() && rho_star > 0.0) {
                const Real beta = p.tail().beta;
                const Real mag = p.tail().magnitude(rho_star);
                sum += mag * mag * std::pow(t_max, -2.0 * beta) / (2.0 * beta);
            }
            return {sum, 0.0};
        },
        true, Complex{0.0, 0.0}, "lp_symbol:" + psi.tag());
}

MultiplierSymbol lp_symbol(const LPProfile& psi, const DilationGroup& G) {
    return lp_symbol(psi, G, TQuadrature::log_uniform(std::exp2(-12.0), std::exp2(12.0), 16));
}

Real shell_min_modulus(const MultiplierSymbol& m, const DilationGroup& G, Index directions) {
    Real lo = std::numeric_limits<Real>::infinity();
    for (const VectorN& u : shell_directions(G.dim(), directions)) lo = std::min(lo, std::abs(m(u, 1.0)));
    return lo;
}

MultiplierSymbol invert_multiplier(const MultiplierSymbol& m, const DilationGroup& G) {
    const Real lo = shell_min_modulus(m, G);
    if (!(lo >= 1e-8))
        throw DegenerateSymbolError("multiplier modulus " + std::to_string(lo) +
                                    " on the unit shell; cannot invert");
    MultiplierSymbol inner = m;
    return MultiplierSymbol(
        [inner](const VectorN& xi, Real rho_star) -> Complex { return 1.0 / inner(xi, rho_star); },
        m.homogeneous0(), Complex{0.0, 0.0}, "inverse:" + m.tag());
}

MultiplierSymbol functional_calculus(const MultiplierSymbol& m, const MultiplierSymbol& ell,
                                     const std::function<Complex(Complex)>& F, int K,
                                     Index theta_nodes, const DilationGroup& G,
                                     const GridSpec& lattice) {
    if (K < 0 || theta_nodes < 4) throw DomainError("functional calculus needs K >= 0, theta_nodes >= 4");
    const Real eps0 = 0.25 * shell_min_modulus(m, G);
    if (!(eps0 > 0.0)) throw DegenerateSymbolError("m vanishes on the unit shell");

    // ||m - ell||_inf over the working lattice
    const auto rho = rho_star_lattice(G, lattice);
    Real dist = 0.0;
    for (Index i = 0; i < lattice.size(); ++i) {
        if ((*rho)[i] <= 0.0) continue;
        const VectorN xi = lattice.frequency(i);
        dist = std::max(dist, std::abs(m(xi, (*rho)[i]) - ell(xi, (*rho)[i])));
    }
    if (!(dist < eps0))
        throw ApproximantTooFarError("||m - ell||_inf = " + std::to_string(dist) + " >= eps0 = " +
                                     std::to_string(eps0));

    MultiplierSymbol mc = m, lc = ell;
    auto Fc = F;
    return MultiplierSymbol(
        [mc, lc, Fc, K, theta_nodes, eps0](const VectorN& xi, Real rho_star) -> Complex {
            const Complex mv = mc(xi, rho_star);
            const Complex lv = lc(xi, rho_star);
            const Complex ratio = (mv - lv) / (2.0 * eps0);
            // trapezoid in theta is spectrally accurate for periodic analytic
            // integrands; accumulate sum_k ratio^k N_k in one theta pass
            const Real dtheta = kTwoPi / theta_nodes;
            Complex total{0.0, 0.0};
            for (Index q = 0; q < theta_nodes; ++q) {
                const Real theta = q * dtheta;
                const Complex e{std::cos(theta), std::sin(theta)};
                const Complex fv = Fc(lv + 2.0 * eps0 * e);
                // sum_{k=0..K} (ratio / e^{i theta})^k  (geometric)
                const Complex z = ratio / e;
                Complex geo;
                if (std::abs(z - 1.0) < 1e-14) {
                    geo = Complex(static_cast<Real>(K + 1), 0.0);
                } else {
                    geo = (1.0 - std::pow(z, K + 1)) / (1.0 - z);
                }
                total += fv * geo;
            }
            return total * dtheta / kTwoPi;
        },
        m.homogeneous0() && ell.homogeneous0(), Complex{0.0, 0.0}, "calculus:" + m.tag());
}

MultiplierSymbol mollified_symbol(const MultiplierSymbol& m, const DilationGroup& G, Real width) {
    if (G.dim() != 2) return m;  // identity fallback keeps ||m - ell|| = 0 < eps0
    if (!(width > 0.0)) throw DomainError("mollifier width must be positive");

    // sample m on the unit circle, convolve with a periodic smooth bump
    const Index N = 512;
    Eigen::ArrayXcd samples(N);
    for (Index i = 0; i < N; ++i) {
        const Real th = kTwoPi * i / N;
        VectorN u(2);
        u << std::cos(th), std::sin(th);
        samples[i] = m(u, 1.0);
    }
    const Index half = std::min<Index>(N / 2 - 1, static_cast<Index>(std::ceil(width * N / kTwoPi)) + 1);
    Eigen::ArrayXd kernel(2 * half + 1);
    for (Index j = -half; j <= half; ++j) {
        const Real s = j * kTwoPi / N / width;  // in (-1,1) support
        kernel[j + half] = std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
    }
    kernel /= kernel.sum();
    Eigen::ArrayXcd smooth(N);
    for (Index i = 0; i < N; ++i) {
        Complex acc{0.0, 0.0};
        for (Index j = -half; j <= half; ++j) acc += kernel[j + half] * samples[(i + j + N) % N];
        smooth[i] = acc;
    }

    const DilationGroup* Gp = &G;
    return MultiplierSymbol(
        [smooth = std::move(smooth), N, Gp](const VectorN& xi, Real rho_star) -> Complex {
            // project to the shell along the dilation orbit, then interpolate
            const VectorN u = Gp->apply(1.0 / rho_star, xi, true);
            Real th = std::atan2(u[1], u[0]);
            if (th < 0.0) th += kTwoPi;
            const Real pos = th * N / kTwoPi;
            const Index i0 = static_cast<Index>(std::floor(pos)) % N;
            const Real fr = pos - std::floor(pos);
            return (1.0 - fr) * smooth[i0] + fr * smooth[(i0 + 1) % N];
        },
        true, Complex{0.0, 0.0}, "mollified:" + m.tag());
}

SpatialField spatial_derivative(const SpatialField& f, const std::vector<int>& a) {
    const GridSpec& g = f.grid();
    if (static_cast<Index>(a.size()) != g.dim()) throw ShapeError("derivative multi-index dimension mismatch");
    SpectralField F = to_spectrum(f);
    for (Index i = 0; i < F.coeffs().size(); ++i) {
        const VectorN xi = g.frequency(i);
        Complex factor{1.0, 0.0};
        for (Index d = 0; d < g.dim(); ++d) {
            const Complex base{0.0, kTwoPi * xi[d]};
            for (int rep = 0; rep < a[d]; ++rep) factor *= base;
        }
        F.coeffs()[i] *= factor;
    }
    return from_spectrum(F);
}

}  // namespace anisolp
