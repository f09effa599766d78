#pragma once

#include <functional>
#include <string>
#include <vector>

#include "anisolp/common.hpp"
#include "anisolp/cutoff.hpp"
#include "anisolp/dilation.hpp"
#include "anisolp/fields.hpp"
#include "anisolp/grid.hpp"

namespace anisolp {

/// Dense Cartesian table of a kernel transform Phi_hat with tensor quintic
/// Lagrange interpolation. Arguments beyond the covered box evaluate to 0
/// (the transforms of compactly supported kernels decay; the dropped tail
/// amplitude is recorded in edge_bound).
class FourierTable {
public:
    FourierTable() = default;

    /// Build from a spatial rasterization (DFT + shift to monotone order).
    static FourierTable from_rasterization(const SpatialField& spatial);

    Complex operator()(const VectorN& xi) const;
    bool covers(const VectorN& xi) const;
    Real spacing() const { return spacing_; }
    Real extent() const { return extent_; }
    Real edge_bound() const { return edge_bound_; }

private:
    Index dim_ = 0;
    Index per_axis_ = 0;      // table points per axis (monotone order)
    Real spacing_ = 0.0;      // frequency lattice step
    Real extent_ = 0.0;       // usable |xi_i| bound
    Real edge_bound_ = 0.0;   // max |value| on the boundary shell
    Eigen::ArrayXd re_, im_;  // im_ empty for real-even kernels
};

/// Candidate averaging kernel Phi in the moment class M^alpha: bounded,
/// compactly supported, integral one. Holds a fine rasterization plus an
/// interpolable table of Phi_hat.
class AveragingKernel {
public:
    AveragingKernel(SpatialField spatial, Real claimed_order, VectorN support_lo, VectorN support_hi,
                    std::string tag);

    const SpatialField& spatial() const { return spatial_; }
    Real claimed_order() const { return claimed_order_; }
    const VectorN& support_lo() const { return support_lo_; }
    const VectorN& support_hi() const { return support_hi_; }
    const std::string& tag() const { return tag_; }

    /// Phi_hat via the table (fast path, used by every spectral operator).
    Complex fourier(const VectorN& xi) const;

    /// 1 - Phi_hat without cancellation: near the origin the deviation is
    /// evaluated from a moment Taylor model (orders 1..6), keeping relative
    /// accuracy where the table's absolute interpolation error would drown
    /// the O(|xi|^2) flatness. Every dt/t^{1+2 alpha} integrand goes
    /// through this entry point.
    Complex one_minus_fourier(const VectorN& xi) const;

    const FourierTable& table() const { return table_; }

    /// Exact DFT of the rasterization; slow, for oracles and small-xi work.
    Complex fourier_direct(const VectorN& xi) const;

    /// Discrete moment \int Phi(x) x^a dx of the rasterization.
    Real moment(const std::vector<int>& a) const;

private:
    SpatialField spatial_;
    FourierTable table_;
    Real claimed_order_;
    VectorN support_lo_, support_hi_;
    std::string tag_;

    struct TaylorTerm {
        std::array<int, 3> index;
        Complex coeff;  // (-2 pi i)^{|a|} m_a / a!
    };
    std::vector<TaylorTerm> taylor_;
    Real taylor_radius_ = 1.0 / 64.0;
};

/// chi_0 = |B(0,1)|^{-1} chi_{B(0,1)}: the normalized indicator of the unit
/// rho-ball (which coincides with the Euclidean unit ball), rasterized with
/// sub-cell supersampling on boundary cells. In M^alpha for 0 <= alpha < 2.
AveragingKernel ball_averaging_kernel(const DilationGroup& G);

/// Smooth even bump exp(-1/(1-|x|^2)) on the unit ball, normalized.
/// Also in M^alpha for 0 <= alpha < 2.
AveragingKernel smooth_bump_kernel(const DilationGroup& G);

/// Import from a .fld file plus JSON sidecar {claimed_order, support_box}.
AveragingKernel import_kernel(const std::filesystem::path& field_path,
                              const std::filesystem::path& sidecar_path);

/// Process-wide shared instances (construction rasterizes a large reference
/// grid, so repeated studies reuse one kernel per group).
const AveragingKernel& shared_ball_kernel(const DilationGroup& G);
const AveragingKernel& shared_bump_kernel(const DilationGroup& G);

struct MomentCheck {
    bool pass = false;
    Real mass = 0.0;  // discrete integral, should be 1
    struct Entry {
        std::vector<int> index;
        Real value;
    };
    std::vector<Entry> residuals;  // moments 1 <= |a| <= floor(alpha)
};

/// Verifies the M^alpha membership conditions numerically.
MomentCheck check_moment_class(const AveragingKernel& kernel, Real alpha, Real tolerance = 1e-6);

/// Symbol of the iterated kernel K^(k): F(K^(k))(xi) = 1 - (1 - Phi_hat)^k,
/// so that (I - Lambda_t)^k corresponds to (1 - Phi_hat)^k. A binomial-sum
/// route is kept as an independent evaluation for cross-checks.
struct IteratedSymbol {
    const AveragingKernel* kernel = nullptr;
    int order = 1;

    Complex operator()(const VectorN& xi) const;  // closed form
    Complex binomial(const VectorN& xi) const;    // sum_{j} (-1)^{j+1} C(k,j) Phi_hat^j
};

IteratedSymbol iterated_symbol(const AveragingKernel& kernel, int k);

/// Spatial samples of K^(k) on the kernel's reference grid (spectral route).
SpatialField iterated_kernel_spatial(const AveragingKernel& kernel, int k);

/// Littlewood-Paley generator, represented by its spectral symbol
/// psi_hat(xi). Evaluators receive rho*(xi) alongside xi so homogeneous
/// factors can use rho*(delta_t^* xi) = t rho*(xi) exactly.
///
/// Profiles whose scaled symbol settles into psi_hat(delta_t^* xi) =
/// tail_magnitude(rho*(xi)) t^{-tail_beta} for large t (up to modulus)
/// declare that via ScaleTail so scale integrals can be finished in closed
/// form past the quadrature range.
class LPProfile {
public:
    using Symbol = std::function<Complex(const VectorN& xi, Real rho_star)>;

    struct ScaleTail {
        Real beta = 0.0;
        std::function<Real(Real rho_star)> magnitude;
    };

    LPProfile() = default;
    LPProfile(Symbol symbol, std::string tag);
    LPProfile(Symbol symbol, std::string tag, ScaleTail tail);

    Complex symbol(const VectorN& xi, Real rho_star) const { return symbol_(xi, rho_star); }
    bool mean_zero() const { return true; }  // enforced: psi_hat(0) = 0 for every construction
    const std::string& tag() const { return tag_; }
    bool has_tail() const { return static_cast<bool>(tail_.magnitude); }
    const ScaleTail& tail() const { return tail_; }

private:
    Symbol symbol_;
    std::string tag_;
    ScaleTail tail_;
};

/// psi^(alpha): psi_hat(xi) = rho*(xi)^{-alpha} (1 - Phi_hat(xi)), the
/// generator with H_alpha(f) = g_{psi^(alpha)}(f). DomainError unless
/// 0 < alpha < gamma. Construction scans 64 directions x 256 scales for the
/// non-degeneracy sup_t |psi_hat(delta_t^* xi)| > 0.
LPProfile potential_profile(const DilationGroup& G, Real alpha, const AveragingKernel& kernel);

/// Radial profile psi_hat(xi) = eta(rho*(xi)) from a scale bump supported in
/// [1,2]; NormalizationError unless \int eta^2 dt/t = 1 within 1e-8.
LPProfile radial_profile(const ScaleBump& eta);

/// Poisson-gradient family (isotropic dilations only):
/// psi_hat^{(j)}(xi) = 2 pi i xi_j e^{-2 pi |xi|}.
std::vector<LPProfile> poisson_gradient_family(const DilationGroup& G);

/// 1-D Marcinkiewicz generators: psi = sgn chi_[-1,1],
/// psi^(1)(x) = x chi_[-1,1](x), psi^(0) = (1/2) psi - (1/2) psi^(1).
LPProfile marcinkiewicz_profile();
LPProfile marcinkiewicz_first_moment_profile();
LPProfile marcinkiewicz_zero_profile();

/// Directions sampling S^{n-1} (which equals the unit rho*-shell).
std::vector<VectorN> shell_directions(Index dim, Index count);

/// sup_{t>0} |psi_hat(delta_t^* xi)|: coarse scan over [2^-10, 2^10] refined
/// by golden-section around the best node.
Real scale_sup(const LPProfile& psi, const DilationGroup& G, const VectorN& xi);

struct AdmissibilitySeminorms {
    Real b_eps = 0.0;   // \int_{|x|>1} |psi| |x|^eps dx
    Real d_u = 0.0;     // (\int_{|x|<1} |psi|^u dx)^{1/u}
    Real h_norm = 0.0;  // || sup_{rho(y) >= rho(x)} |psi(y)| ||_1
};

/// Quadrature versions of the Theorem hypotheses seminorms; H_psi is built
/// by sorting samples by rho and taking suffix maxima.
AdmissibilitySeminorms profile_admissibility(const SpatialField& psi, const DilationGroup& G,
                                             Real eps, Real u);

/// Inverse transform of a profile symbol on a padded grid (4x extent), for
/// feeding profile_admissibility with decaying spatial samples.
SpatialField spatialize_profile(const LPProfile& psi, const DilationGroup& G, const GridSpec& base);

}  // namespace anisolp
