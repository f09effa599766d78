#include "anisolp/squares.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace anisolp {

namespace {

// Closed-form remainder factor of \int_T^infty t^{-2q} dt/t.
Real upper_tail_factor(Real T, Real q) { return std::pow(T, -2.0 * q) / (2.0 * q); }

// t -> infinity limit data of a node symbol: |sigma| ~ magnitude(xi) t^{-beta}.
struct TailForm {
    bool enabled = false;
    Real beta = 0.0;
    std::function<Complex(const VectorN& xi, Real rho_star, Index i)> symbol;
};

// Shared scale-integral engine.
//
// accum(x) = sum_j |IDFT(f_hat(xi) sigma(delta_{t_j}^* xi) s_j)(x)|^2, with
// s_j = sqrt(w_j) t_j^{-weight_exponent} folding the dt/t^{1+2 alpha}
// measure into the spectrum (dodges overflow of t^{-2 alpha} at the deep
// small-t nodes). Accumulation runs in node order, so results are bitwise
// reproducible. When a tail form is given, the [t_max, infinity) part of
// the integral is added in closed form; past the point where every scaled
// argument has left the kernel table the node symbols equal their tail form
// exactly, so the completion finishes the same integral the nodes sample.
// The reported truncation_note estimates the remaining small-t mass by
// geometric extrapolation of the per-octave masses.
template <typename NodeSymbol>
SquareFunctionResult scale_square(const SpatialField& f, const DilationGroup& G,
                                  const TQuadrature& quad, Real weight_exponent, NodeSymbol&& sigma,
                                  const TailForm& tail) {
    const GridSpec& g = f.grid();
    const Index nlat = g.size();
    const Index J = quad.count();
    const auto rho = rho_star_lattice(G, g);
    const SpectralField F = to_spectrum(f);

    Eigen::MatrixXd freqs(g.dim(), nlat);
    for (Index i = 0; i < nlat; ++i) freqs.col(i) = g.frequency(i);

    Eigen::ArrayXd accum = Eigen::ArrayXd::Zero(nlat);
    Eigen::ArrayXd node_mass(J);
    Eigen::ArrayXcd spectrum(nlat);
    VectorN xi_scaled(g.dim());

    for (Index j = 0; j < J; ++j) {
        const Real t = quad.nodes[j];
        const Real s = std::sqrt(quad.weights[j]) * std::pow(t, -weight_exponent);
        const MatrixN mat = G.dilation_matrix(t, true);
        for (Index i = 0; i < nlat; ++i) {
            const Complex c = F.coeffs()[i];
            if (c == Complex{0.0, 0.0}) {
                spectrum[i] = Complex{0.0, 0.0};
                continue;
            }
            xi_scaled.noalias() = mat * freqs.col(i);
            spectrum[i] = c * sigma(xi_scaled, t * (*rho)[i], i) * s;
        }
        node_mass[j] = spectrum.abs2().sum();
        if (node_mass[j] == 0.0) continue;
        unscaled_idft_inplace(g, spectrum);
        accum += spectrum.abs2() / (g.domain_volume() * g.domain_volume());
    }

    Real total_mass = node_mass.sum();

    // analytic upper completion
    if (tail.enabled) {
        const Real q = weight_exponent + tail.beta;
        if (!(q > 0.0)) throw DomainError("scale integral tail does not converge");
        const Real factor = upper_tail_factor(quad.t_max, q);
        for (Index i = 0; i < nlat; ++i) {
            const Complex c = F.coeffs()[i];
            spectrum[i] = c == Complex{0.0, 0.0} ? Complex{0.0, 0.0}
                                                 : c * tail.symbol(g.frequency(i), (*rho)[i], i);
        }
        const Real mass = factor * spectrum.abs2().sum();
        if (mass > 0.0) {
            unscaled_idft_inplace(g, spectrum);
            accum += factor * spectrum.abs2() / (g.domain_volume() * g.domain_volume());
            total_mass += mass;
        }
    }

    // small-t residual estimate from the leading octave masses
    Real lower_est = 0.0;
    {
        Index span = 1;
        while (span < J && quad.nodes[span] < 2.0 * quad.nodes[0]) ++span;
        if (J > 2 * span) {
            const Real first = node_mass.head(span).sum();
            const Real second = node_mass.segment(span, span).sum();
            if (second > 0.0 && first < second)
                lower_est = first * (first / second) / (1.0 - first / second);
            else
                lower_est = first;
        }
    }
    // when no tail form exists, estimate the large-t residual the same way
    Real upper_est = 0.0;
    if (!tail.enabled) {
        Index span = 1;
        while (span < J && quad.nodes[J - 1 - span] > 0.5 * quad.nodes[J - 1]) ++span;
        if (J > 2 * span) {
            const Real last = node_mass.tail(span).sum();
            const Real prev = node_mass.segment(J - 2 * span, span).sum();
            if (prev > 0.0 && last < prev)
                upper_est = last * (last / prev) / (1.0 - last / prev);
            else
                upper_est = last;
        }
    }

    SquareFunctionResult out;
    out.quadrature = quad;
    out.truncation_note =
        total_mass > 0.0 ? (lower_est + upper_est) / (total_mass + lower_est + upper_est) : 0.0;
    if (out.truncation_note > 1e-6)
        throw QuadratureCoverageError("estimated scale-truncation mass " +
                                      std::to_string(out.truncation_note) + " of the total");
    out.field = SpatialField(g, accum.sqrt().cast<Complex>());
    return out;
}

TailForm profile_tail(const LPProfile& psi) {
    TailForm tail;
    if (psi.has_tail()) {
        tail.enabled = true;
        tail.beta = psi.tail().beta;
        auto mag = psi.tail().magnitude;
        tail.symbol = [mag](const VectorN&, Real rho_star, Index) -> Complex {
            return {rho_star > 0.0 ? mag(rho_star) : 0.0, 0.0};
        };
    }
    return tail;
}

}  // namespace

SquareFunctionResult g_psi(const SpatialField& f, const LPProfile& psi, const DilationGroup& G,
                           const TQuadrature& quad) {
    return scale_square(
        f, G, quad, 0.0,
        [&psi](const VectorN& xi, Real rho_t, Index) { return psi.symbol(xi, rho_t); },
        profile_tail(psi));
}

SquareFunctionResult g_vector(const SpatialField& f, const std::vector<LPProfile>& profiles,
                              const DilationGroup& G, const TQuadrature& quad) {
    if (profiles.empty()) throw DomainError("g_vector needs at least one profile");
    SquareFunctionResult total;
    Eigen::ArrayXd acc;
    Real trunc = 0.0;
    for (std::size_t c = 0; c < profiles.size(); ++c) {
        SquareFunctionResult r = g_psi(f, profiles[c], G, quad);
        if (c == 0) {
            acc = r.field.samples().real().square();
            total.quadrature = r.quadrature;
        } else {
            acc += r.field.samples().real().square();
        }
        trunc = std::max(trunc, r.truncation_note);
    }
    total.field = SpatialField(f.grid(), acc.sqrt().cast<Complex>());
    total.truncation_note = trunc;
    return total;
}

SquareFunctionResult avg_square(const SpatialField& f, const AveragingKernel& kernel, Real alpha,
                                const DilationGroup& G, const TQuadrature& quad) {
    if (!(alpha > 0.0)) throw DomainError("avg_square needs alpha > 0");
    TailForm tail;
    tail.enabled = true;
    tail.beta = 0.0;  // symbol -> 1 once Phi_hat has decayed
    tail.symbol = [](const VectorN&, Real rho_star, Index) -> Complex {
        return {rho_star > 0.0 ? 1.0 : 0.0, 0.0};
    };
    return scale_square(
        f, G, quad, alpha,
        [&kernel](const VectorN& xi, Real, Index) { return kernel.one_minus_fourier(xi); },
        tail);
}

SquareFunctionResult potential_square(const SpatialField& f, const AveragingKernel& kernel,
                                      Real alpha, const DilationGroup& G, const TQuadrature& quad) {
    if (!(alpha > 0.0) || !(alpha < G.gamma()))
        throw DomainError("potential_square needs alpha in (0, gamma)");
    const auto rho = rho_star_lattice(G, f.grid());
    TailForm tail;
    tail.enabled = true;
    tail.beta = 0.0;
    tail.symbol = [rho, alpha](const VectorN&, Real, Index i) -> Complex {
        const Real r = (*rho)[i];
        return {r > 0.0 ? std::pow(r, -alpha) : 0.0, 0.0};
    };
    return scale_square(f, G, quad, alpha,
                        [&kernel, &rho, alpha](const VectorN& xi, Real, Index i) -> Complex {
                            const Real r = (*rho)[i];
                            if (r <= 0.0) return {0.0, 0.0};
                            return std::pow(r, -alpha) * kernel.one_minus_fourier(xi);
                        },
                        tail);
}

SquareFunctionResult iterated_square(const SpatialField& f, const AveragingKernel& kernel, Real alpha,
                                     int k, const DilationGroup& G, const TQuadrature& quad,
                                     IteratedRoute route) {
    if (!(alpha > 0.0)) throw DomainError("iterated_square needs alpha > 0");
    if (k < 1) throw DomainError("iterated_square needs k >= 1");
    TailForm tail;
    tail.enabled = true;
    tail.beta = 0.0;
    tail.symbol = [](const VectorN&, Real rho_star, Index) -> Complex {
        return {rho_star > 0.0 ? 1.0 : 0.0, 0.0};
    };
    if (route == IteratedRoute::ClosedForm) {
        return scale_square(f, G, quad, alpha,
                            [&kernel, k](const VectorN& xi, Real, Index) {
                                return cpow_int(kernel.one_minus_fourier(xi), k);
                            },
                            tail);
    }
    const IteratedSymbol K = iterated_symbol(kernel, k);
    return scale_square(
        f, G, quad, alpha,
        [K](const VectorN& xi, Real, Index) { return Complex{1.0, 0.0} - K.binomial(xi); }, tail);
}

SquareFunctionResult iterated_potential_square(const SpatialField& f, const AveragingKernel& kernel,
                                               Real alpha, int k, const DilationGroup& G,
                                               const TQuadrature& quad, IteratedRoute route) {
    if (!(alpha > 0.0) || !(alpha < std::min(2.0 * k, G.gamma())))
        throw DomainError("iterated_potential_square needs alpha in (0, min(2k, gamma))");
    const auto rho = rho_star_lattice(G, f.grid());
    TailForm tail;
    tail.enabled = true;
    tail.beta = 0.0;
    tail.symbol = [rho, alpha](const VectorN&, Real, Index i) -> Complex {
        const Real r = (*rho)[i];
        return {r > 0.0 ? std::pow(r, -alpha) : 0.0, 0.0};
    };
    if (route == IteratedRoute::ClosedForm) {
        return scale_square(f, G, quad, alpha,
                            [&kernel, &rho, k, alpha](const VectorN& xi, Real, Index i) -> Complex {
                                const Real r = (*rho)[i];
                                if (r <= 0.0) return {0.0, 0.0};
                                return std::pow(r, -alpha) *
                                       cpow_int(kernel.one_minus_fourier(xi), k);
                            },
                            tail);
    }
    const IteratedSymbol K = iterated_symbol(kernel, k);
    return scale_square(f, G, quad, alpha,
                        [K, &rho, alpha](const VectorN& xi, Real, Index i) -> Complex {
                            const Real r = (*rho)[i];
                            if (r <= 0.0) return {0.0, 0.0};
                            return std::pow(r, -alpha) * (Complex{1.0, 0.0} - K.binomial(xi));
                        },
                        tail);
}

SquareFunctionResult marcinkiewicz(const SpatialField& f, MarcinkiewiczVariant variant,
                                   const TQuadrature& quad) {
    const GridSpec& g = f.grid();
    if (g.dim() != 1) throw DomainError("marcinkiewicz functions are one-dimensional");

    static const DilationGroup line = make_dilation_group(MatrixN::Identity(1, 1));

    // The primitive enters through F_hat(xi) = f_hat(xi)/(2 pi i xi); with
    // the engine handing us x = t xi, writing the factor as 1/(2 pi i x)
    // absorbs the dt/t^3 measure into the plain dt/t weights.
    const bool mu = variant == MarcinkiewiczVariant::Mu;
    return scale_square(f, line, quad, 0.0,
                        [mu](const VectorN& xi, Real, Index) -> Complex {
                            const Real x = xi[0];
                            if (x == 0.0) return {0.0, 0.0};
                            const Complex primitive = 1.0 / Complex(0.0, kTwoPi * x);
                            if (mu) return primitive * (2.0 * std::cos(kTwoPi * x) - 2.0);
                            const Real a = kTwoPi * x;
                            const Real phi_hat = std::abs(a) < 1e-8 ? 1.0 - a * a / 6.0 : std::sin(a) / a;
                            return primitive * (1.0 - phi_hat);
                        },
                        TailForm{});
}

void save_square_result(const std::filesystem::path& field_path,
                        const std::filesystem::path& meta_path, const SquareFunctionResult& result,
                        const std::string& profile_tag, Real alpha, int k) {
    save_field(field_path, result.field);
    nlohmann::ordered_json meta;
    meta["profile"] = profile_tag;
    meta["alpha"] = alpha;
    meta["k"] = k;
    meta["quadrature"] = {{"t_min", result.quadrature.t_min},
                          {"t_max", result.quadrature.t_max},
                          {"nodes", result.quadrature.count()}};
    meta["truncation_note"] = result.truncation_note;
    std::ofstream os(meta_path, std::ios::binary);
    if (!os) throw Error("cannot open " + meta_path.string());
    os << meta.dump(2) << '\n';
}

}  // namespace anisolp
