#pragma once

#include <cstdint>
#include <vector>

#include "anisolp/common.hpp"
#include "anisolp/dilation.hpp"
#include "anisolp/fields.hpp"
#include "anisolp/grid.hpp"

namespace anisolp {

/// Empirical lower bound for the Muckenhoupt constant [w]_{A_p}.
struct ApEstimate {
    Real p = 0.0;
    Real lower_bound = 1.0;
    Index balls_tested = 0;
    VectorN argmax_center;
    Real argmax_radius = 0.0;
};

/// Centered average of f over the rho-ball of the given radius at every
/// grid point (periodic, FFT stencil convolution).
Eigen::ArrayXcd ball_average(const SpatialField& f, const DilationGroup& G, Real radius);

/// Dyadic radii covering [cell, extent/2] for maximal-function stencils.
std::vector<Real> default_maximal_radii(const GridSpec& grid);

/// Dyadic radii from 2*cell to extent/4 for A_p ball sampling.
std::vector<Real> default_ap_radii(const GridSpec& grid);

/// Maximizes the A_p product over (sampled centers) x (dyadic radii).
/// Centers come from a coarsened sublattice (every 4th point) in an order
/// fixed by the seed, so growing n_balls scans a superset.
ApEstimate estimate_ap_constant(const Weight& w, Real p, const GridSpec& grid, Index n_balls,
                                std::uint64_t seed);

/// Same estimator on an explicit weight lattice.
ApEstimate estimate_ap_constant(const Eigen::ArrayXd& weight_lattice, const DilationGroup& G,
                                Real p, const GridSpec& grid, Index n_balls, std::uint64_t seed);

/// Centered Hardy-Littlewood maximal surrogate: pointwise max of |f| ball
/// averages over the given radii. (The uncentered operator ranges over all
/// balls containing x; the centered version is pointwise comparable with a
/// constant depending on the quasi-triangle inequality.)
SpatialField maximal_function(const SpatialField& f, const DilationGroup& G,
                              const std::vector<Real>& radii);

}  // namespace anisolp
