#pragma once

#include <cstdint>
#include <memory>

#include "anisolp/common.hpp"
#include "anisolp/dilation.hpp"
#include "anisolp/grid.hpp"

namespace anisolp {

/// rho*(xi) at every lattice frequency, computed once per (group, grid)
/// pair and cached process-wide (groups are immutable).
std::shared_ptr<const Eigen::ArrayXd> rho_star_lattice(const DilationGroup& G, const GridSpec& grid);

/// rho(x) at every lattice point (min-image coordinates).
std::shared_ptr<const Eigen::ArrayXd> rho_lattice(const DilationGroup& G, const GridSpec& grid);

/// Band-limit projector zeta^(eps)(xi) = phi0(eps rho*(xi)) - phi0(rho*(xi)/eps)
/// with the standard smooth cutoff. Vanishes for rho* <= eps and
/// rho* >= 2/eps, equals 1 on [2 eps, 1/eps]; idempotent against eps/2.
Real band_limit_symbol(Real rho_star, Real eps);

/// Multiply the spectrum pointwise by zeta^(eps). Result has zero mean.
SpatialField band_limit(const SpatialField& f, const DilationGroup& G, Real eps);

/// Deterministic band-limited test function with unit L2 norm. Coefficients
/// are complex Gaussians keyed by (seed, integer frequency) through a
/// counter-based generator, shaped by a smooth log-scale envelope and
/// zeta^(eps); identical seeds give bit-identical fields, and grids sharing
/// a mode give it the same draw.
SpatialField random_test_function(std::uint64_t seed, const DilationGroup& G, const GridSpec& grid,
                                  Real eps);

/// Actual spectral support bounds {a <= rho* <= b} of a field (coefficients
/// above 1e-14 of the peak); used to adapt scale quadratures.
std::pair<Real, Real> spectral_band(const SpatialField& f, const DilationGroup& G);

/// Weight on the torus: w == 1, or w(x) = (offset + rho(x))^beta.
struct Weight {
    enum class Kind { Constant, Power };
    Kind kind = Kind::Constant;
    Real beta = 0.0;
    Real offset = 0.0;
    const DilationGroup* group = nullptr;

    static Weight one() { return {}; }
    bool is_one() const { return kind == Kind::Constant; }
};

/// w(x) = (offset + rho(x))^beta; SingularWeightError when beta < 0 with
/// offset = 0 (the grid contains x = 0).
Weight power_weight(const DilationGroup& G, Real beta, Real offset);

/// w == 1 with a group attached (so ball-based estimators can run on it).
Weight constant_weight(const DilationGroup& G);

Eigen::ArrayXd weight_values(const Weight& w, const GridSpec& grid);

/// (sum |f|^p w * cell_volume)^{1/p}; DomainError for p <= 1.
Real weighted_lp_norm(const SpatialField& f, Real p, const Weight& w);

}  // namespace anisolp
