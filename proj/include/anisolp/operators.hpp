#pragma once

#include <functional>

#include "anisolp/common.hpp"
#include "anisolp/dilation.hpp"
#include "anisolp/fields.hpp"
#include "anisolp/grid.hpp"
#include "anisolp/kernels.hpp"
#include "anisolp/quadrature.hpp"

namespace anisolp {

/// Fourier multiplier m(xi). Evaluators receive rho*(xi) alongside xi; the
/// origin takes origin_value (relevant for negatively homogeneous symbols,
/// which the library pins to 0 there and pairs with zero-mean inputs).
class MultiplierSymbol {
public:
    using Eval = std::function<Complex(const VectorN& xi, Real rho_star)>;

    MultiplierSymbol() = default;
    MultiplierSymbol(Eval eval, bool homogeneous0, Complex origin_value, std::string tag = {});

    Complex operator()(const VectorN& xi, Real rho_star) const {
        if (rho_star <= 0.0) return origin_value_;
        return eval_(xi, rho_star);
    }
    bool homogeneous0() const { return homogeneous0_; }
    Complex origin_value() const { return origin_value_; }
    const std::string& tag() const { return tag_; }

    static MultiplierSymbol constant(Complex c);

private:
    Eval eval_;
    bool homogeneous0_ = false;
    Complex origin_value_{0.0, 0.0};
    std::string tag_;
};

/// T_m f: multiply the spectrum pointwise, transform back. Exact on the grid.
/// NonFiniteSymbolError if m is not finite on the lattice.
SpatialField apply_multiplier(const MultiplierSymbol& m, const SpatialField& f, const DilationGroup& G);

/// I_beta: multiplier rho*(xi)^{-beta} with 0 at the origin. For beta > 0
/// the input must have zero mean (MeanNotZeroError otherwise).
SpatialField riesz_potential(const SpatialField& f, const DilationGroup& G, Real beta);

/// m^(eps)(xi) = \int_eps^{1/eps} |psi_hat(delta_t^* xi)|^2 dt/t over the
/// given log-uniform t-grid; homogeneous of degree 0 up to quadrature and
/// truncation error.
MultiplierSymbol lp_symbol(const LPProfile& psi, const DilationGroup& G, const TQuadrature& quad);
MultiplierSymbol lp_symbol(const LPProfile& psi, const DilationGroup& G);  // eps = 2^-12, 16/octave

/// Minimum of |m| over a direction sample of the unit rho*-shell.
Real shell_min_modulus(const MultiplierSymbol& m, const DilationGroup& G, Index directions = 64);

/// Pointwise reciprocal; DegenerateSymbolError when the shell minimum
/// modulus is below 1e-8. Origin value 0.
MultiplierSymbol invert_multiplier(const MultiplierSymbol& m, const DilationGroup& G);

/// Truncated holomorphic functional calculus from the Cauchy-circle series:
///   F(m) ~ (1/2pi) sum_{k<=K} ((m - ell)/(2 eps0))^k N_k,
///   N_k(xi) = \int_0^{2pi} F(ell(xi) + 2 eps0 e^{i theta}) e^{-i k theta} dtheta,
/// with eps0 = (1/4) min_shell |m|. Requires ||m - ell||_inf < eps0 on the
/// given lattice (ApproximantTooFarError otherwise). The tail is bounded by
/// C 2^{-K} since |(m - ell)/(2 eps0)| <= 1/2.
MultiplierSymbol functional_calculus(const MultiplierSymbol& m, const MultiplierSymbol& ell,
                                     const std::function<Complex(Complex)>& F, int K,
                                     Index theta_nodes, const DilationGroup& G,
                                     const GridSpec& lattice);

/// Default smooth approximant for homogeneous degree-0 symbols: mollify m
/// along the unit shell (n = 2) with a periodic smooth kernel of the given
/// angular width; other dimensions fall back to ell = m.
MultiplierSymbol mollified_symbol(const MultiplierSymbol& m, const DilationGroup& G, Real width);

/// Spectral partial derivative: multiplier prod_j (2 pi i xi_j)^{a_j}.
SpatialField spatial_derivative(const SpatialField& f, const std::vector<int>& a);

}  // namespace anisolp
