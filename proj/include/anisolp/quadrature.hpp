#pragma once

#include <Eigen/Core>

#include "anisolp/common.hpp"

namespace anisolp {

/// Log-uniform trapezoid rule for scale integrals \int f(t) dt/t.
///
/// Nodes are t_j = t_min 2^{j/m}; base weights reproduce \int_a^b dt/t =
/// log(b/a) exactly for constant integrands. Square functions fold their
/// dt/t^{1+2 alpha} measure into these weights via an extra t^{-2 alpha}
/// factor per node.
struct TQuadrature {
    Eigen::ArrayXd nodes;    // ascending positive scales
    Eigen::ArrayXd weights;  // log-trapezoid weights for dt/t
    Real t_min = 0.0;
    Real t_max = 0.0;

    Index count() const { return nodes.size(); }

    /// m nodes per octave over [t_min, t_max] (t_max rounded up to a whole
    /// number of octaves).
    static TQuadrature log_uniform(Real t_min, Real t_max, int nodes_per_octave = 16);

    /// General ascending node set with log-trapezoid weights.
    static TQuadrature from_nodes(Eigen::ArrayXd nodes);

    /// Default range for fields with spectrum in {a <= rho* <= b}:
    /// [2^-8 / b, 2^8 / a]. Outside it the dt/t integrands of the g_psi
    /// family decay geometrically.
    static TQuadrature for_band(Real a, Real b, int nodes_per_octave = 16);

    /// Quadrature for the dt/t^{1+2 alpha} square functions of iteration
    /// order k. The small-t integrand behaves like t^{4k - 2 alpha - 1} dt,
    /// which is slow near the alpha range endpoint, so the dense core is
    /// extended downward with coarse nodes until the missing mass estimate
    /// drops below ~1e-8; the large-t side is finished analytically by the
    /// engines, so no upper extension is needed.
    static TQuadrature for_band_weighted(Real a, Real b, Real alpha, int k,
                                         int nodes_per_octave = 16, Real core_octaves = 8.0);

    /// dt/t^3 Marcinkiewicz quadrature: extends the upper range (integrand
    /// ~ t^{-3} with an oscillating factor) until the tail is below ~1e-7.
    static TQuadrature for_band_marcinkiewicz(Real a, Real b, int nodes_per_octave = 16);
};

}  // namespace anisolp
