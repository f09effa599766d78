#include "anisolp/weights.hpp"

#include <cmath>
#include <numeric>

#include "anisolp/philox.hpp"

namespace anisolp {

namespace {

// Indicator stencil of {rho < radius} on the periodic lattice, returned as
// (spectrum of the stencil, point count).
std::pair<Eigen::ArrayXcd, Index> ball_stencil_spectrum(const DilationGroup& G, const GridSpec& g,
                                                        Real radius) {
    const auto rho = rho_lattice(G, g);
    Eigen::ArrayXcd stencil = Eigen::ArrayXcd::Zero(g.size());
    Index count = 0;
    for (Index i = 0; i < g.size(); ++i) {
        if ((*rho)[i] < radius) {
            stencil[i] = 1.0;
            ++count;
        }
    }
    unscaled_dft_inplace(g, stencil);
    return {std::move(stencil), count};
}

Eigen::ArrayXcd circular_average(const GridSpec& g, const Eigen::ArrayXcd& values,
                                 const Eigen::ArrayXcd& stencil_spectrum, Index count) {
    Eigen::ArrayXcd spec = values;
    unscaled_dft_inplace(g, spec);
    // stencil is rho-symmetric, so plain multiplication is the correlation
    spec *= stencil_spectrum;
    unscaled_idft_inplace(g, spec);
    return spec / (static_cast<Real>(g.size()) * count);
}

}  // namespace

Eigen::ArrayXcd ball_average(const SpatialField& f, const DilationGroup& G, Real radius) {
    if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
    const auto [spec, count] = ball_stencil_spectrum(G, f.grid(), radius);
    if (count == 0) throw DomainError("ball radius below the grid resolution");
    return circular_average(f.grid(), f.samples(), spec, count);
}

std::vector<Real> default_maximal_radii(const GridSpec& grid) {
    const Real cell = std::pow(grid.cell_volume(), 1.0 / grid.dim());
    const Real top = grid.extent.minCoeff() / 2.0;
    std::vector<Real> radii;
    for (Real r = 1.5 * cell; r <= top * (1.0 + 1e-12); r *= 2.0) radii.push_back(r);
    return radii;
}

std::vector<Real> default_ap_radii(const GridSpec& grid) {
    const Real cell = std::pow(grid.cell_volume(), 1.0 / grid.dim());
    const Real top = grid.extent.minCoeff() / 4.0;
    std::vector<Real> radii;
    for (Real r = 2.0 * cell; r <= top * (1.0 + 1e-12); r *= 2.0) radii.push_back(r);
    return radii;
}

ApEstimate estimate_ap_constant(const Weight& w, Real p, const GridSpec& grid, Index n_balls,
                                std::uint64_t seed) {
    if (w.group == nullptr)
        throw DomainError("A_p estimation needs a weight carrying its dilation group");
    return estimate_ap_constant(weight_values(w, grid), *w.group, p, grid, n_balls, seed);
}

ApEstimate estimate_ap_constant(const Eigen::ArrayXd& weight_lattice, const DilationGroup& G,
                                Real p, const GridSpec& grid, Index n_balls, std::uint64_t seed) {
    if (!(p > 1.0)) throw DomainError("A_p requires p in (1, infinity)");
    if (n_balls < 1) throw DomainError("need at least one ball");
    const Eigen::ArrayXd& wv = weight_lattice;
    if (wv.size() != grid.size()) throw ShapeError("weight lattice does not match the grid");
    if ((wv <= 0.0).any()) throw SingularWeightError("weight must be positive on the grid");
    const Eigen::ArrayXd dual = wv.pow(-1.0 / (p - 1.0));

    // coarsened center sublattice (every 4th point per axis)
    std::vector<Index> centers;
    {
        Index idx[8];
        for (Index i = 0; i < grid.size(); ++i) {
            grid.unflatten(i, idx);
            bool keep = true;
            for (Index a = 0; a < grid.dim(); ++a) keep &= (idx[a] % 4 == 0);
            if (keep) centers.push_back(i);
        }
        // seed-keyed deterministic order, so n_balls prefixes are nested
        std::vector<std::pair<std::uint64_t, Index>> keyed(centers.size());
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const auto words =
                Philox4x64::block({static_cast<std::uint64_t>(centers[c]), 0, 0, 0}, {seed, 0x6170ull});
            keyed[c] = {words[0], centers[c]};
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t c = 0; c < centers.size(); ++c) centers[c] = keyed[c].second;
    }

    const std::vector<Real> radii = default_ap_radii(grid);

    ApEstimate best;
    best.p = p;
    best.lower_bound = 1.0;
    best.argmax_center = VectorN::Zero(grid.dim());
    best.argmax_radius = radii.front();

    Index tested = 0;
    const Index per_radius = (n_balls + static_cast<Index>(radii.size()) - 1) / radii.size();
    for (Real radius : radii) {
        const auto [spec, count] = ball_stencil_spectrum(G, grid, radius);
        if (count == 0) continue;
        SpatialField wf(grid, wv.cast<Complex>());
        SpatialField df(grid, dual.cast<Complex>());
        const Eigen::ArrayXcd avg_w = circular_average(grid, wf.samples(), spec, count);
        const Eigen::ArrayXcd avg_d = circular_average(grid, df.samples(), spec, count);
        const Index take = std::min<Index>(per_radius, static_cast<Index>(centers.size()));
        for (Index c = 0; c < take && tested < n_balls; ++c, ++tested) {
            const Index i = centers[c];
            const Real product = std::max(avg_w[i].real(), 0.0) *
                                 std::pow(std::max(avg_d[i].real(), 0.0), p - 1.0);
            if (product > best.lower_bound) {
                best.lower_bound = product;
                best.argmax_center = grid.coordinate(i);
                best.argmax_radius = radius;
            }
        }
    }
    best.balls_tested = tested;
    return best;
}

SpatialField maximal_function(const SpatialField& f, const DilationGroup& G,
                              const std::vector<Real>& radii) {
    if (radii.empty()) throw DomainError("maximal function needs at least one radius");
    const GridSpec& g = f.grid();
    Eigen::ArrayXcd abs_f = f.samples().abs().cast<Complex>();
    Eigen::ArrayXd result = Eigen::ArrayXd::Zero(g.size());
    for (Real radius : radii) {
        const auto [spec, count] = ball_stencil_spectrum(G, g, radius);
        if (count == 0) continue;
        const Eigen::ArrayXcd avg = circular_average(g, abs_f, spec, count);
        result = result.max(avg.real().max(0.0));
    }
    return SpatialField(g, result.cast<Complex>());
}

}  // namespace anisolp
