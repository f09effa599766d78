#include "anisolp/fields.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "anisolp/cutoff.hpp"
#include "anisolp/philox.hpp"

namespace anisolp {

namespace {

struct LatticeKey {
    std::uint64_t group;
    bool dual;
    std::vector<Real> extent;
    std::vector<int> points;
    auto operator<=>(const LatticeKey&) const = default;
};

LatticeKey make_key(const DilationGroup& G, const GridSpec& grid, bool dual) {
    return {G.id(), dual,
            std::vector<Real>(grid.extent.data(), grid.extent.data() + grid.dim()),
            std::vector<int>(grid.points.data(), grid.points.data() + grid.dim())};
}

std::shared_ptr<const Eigen::ArrayXd> lattice_norms(const DilationGroup& G, const GridSpec& grid,
                                                    bool dual) {
    static std::mutex mu;
    static std::map<LatticeKey, std::shared_ptr<const Eigen::ArrayXd>> cache;
    const LatticeKey key = make_key(G, grid, dual);
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto values = std::make_shared<Eigen::ArrayXd>(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        const VectorN p = dual ? grid.frequency(i) : grid.coordinate(i);
        (*values)[i] = G.quasi_norm(p, dual).value;
    }
    std::lock_guard lock(mu);
    auto [it, _] = cache.emplace(key, std::move(values));
    return it->second;
}

}  // namespace

std::shared_ptr<const Eigen::ArrayXd> rho_star_lattice(const DilationGroup& G, const GridSpec& grid) {
    return lattice_norms(G, grid, true);
}

std::shared_ptr<const Eigen::ArrayXd> rho_lattice(const DilationGroup& G, const GridSpec& grid) {
    return lattice_norms(G, grid, false);
}

Real band_limit_symbol(Real rho_star, Real eps) {
    const SmoothCutoff& phi0 = SmoothCutoff::standard();
    return phi0(eps * rho_star) - phi0(rho_star / eps);
}

SpatialField band_limit(const SpatialField& f, const DilationGroup& G, Real eps) {
    if (!(eps > 0.0) || !(eps < 0.5)) throw DomainError("band_limit requires eps in (0, 1/2)");
    const auto rho = rho_star_lattice(G, f.grid());
    SpectralField F = to_spectrum(f);
    for (Index i = 0; i < F.coeffs().size(); ++i) F.coeffs()[i] *= band_limit_symbol((*rho)[i], eps);
    return from_spectrum(F);
}

SpatialField random_test_function(std::uint64_t seed, const DilationGroup& G, const GridSpec& grid,
                                  Real eps) {
    if (!(eps > 0.0) || !(eps < 0.5)) throw DomainError("random_test_function requires eps in (0, 1/2)");
    const auto rho = rho_star_lattice(G, grid);
    SpectralField F = SpectralField::zero(grid);
    Index idx[8];
    for (Index i = 0; i < grid.size(); ++i) {
        const Real r = (*rho)[i];
        const Real zeta = band_limit_symbol(r, eps);
        if (zeta == 0.0) continue;
        // smooth envelope centered on the unit shell, ~3 octaves wide
        const Real l2 = std::log2(r);
        const Real envelope = std::exp(-l2 * l2 / 8.0);
        grid.unflatten(i, idx);
        Philox4x64::Counter ctr{0, 0, 0, 0};
        for (Index a = 0; a < grid.dim() && a < 3; ++a)
            ctr[a] = zigzag(static_cast<std::int64_t>(grid.mode(a, idx[a])));
        const auto words = Philox4x64::block(ctr, {seed, 0x616e69736f6c70ull});
        const auto gauss = gaussian_pair(words[0], words[1]);
        F.coeffs()[i] = zeta * envelope * Complex(gauss[0], gauss[1]);
    }
    const Real norm = spectral_l2_norm(F);
    if (norm > 0.0) F.coeffs() /= norm;
    return from_spectrum(F);
}

std::pair<Real, Real> spectral_band(const SpatialField& f, const DilationGroup& G) {
    const auto rho = rho_star_lattice(G, f.grid());
    const SpectralField F = to_spectrum(f);
    const Real peak = F.coeffs().abs().maxCoeff();
    Real a = std::numeric_limits<Real>::infinity(), b = 0.0;
    for (Index i = 0; i < F.coeffs().size(); ++i) {
        if (std::abs(F.coeffs()[i]) > 1e-14 * peak && (*rho)[i] > 0.0) {
            a = std::min(a, (*rho)[i]);
            b = std::max(b, (*rho)[i]);
        }
    }
    if (!(b > 0.0)) throw DomainError("field has no spectral content away from the origin");
    return {a, b};
}

Weight power_weight(const DilationGroup& G, Real beta, Real offset) {
    if (offset < 0.0) throw DomainError("weight offset must be nonnegative");
    if (beta < 0.0 && offset == 0.0)
        throw SingularWeightError("negative power weight needs a positive offset (grid contains 0)");
    Weight w;
    w.kind = Weight::Kind::Power;
    w.beta = beta;
    w.offset = offset;
    w.group = &G;
    return w;
}

Weight constant_weight(const DilationGroup& G) {
    Weight w;
    w.group = &G;
    return w;
}

Eigen::ArrayXd weight_values(const Weight& w, const GridSpec& grid) {
    if (w.kind == Weight::Kind::Constant) return Eigen::ArrayXd::Ones(grid.size());
    const auto rho = rho_lattice(*w.group, grid);
    return (w.offset + *rho).pow(w.beta);
}

Real weighted_lp_norm(const SpatialField& f, Real p, const Weight& w) {
    if (!(p > 1.0)) throw DomainError("weighted_lp_norm requires p > 1");
    const Eigen::ArrayXd wv = weight_values(w, f.grid());
    // w(0) = 0 is tolerable for a norm (single lattice point of zero mass);
    // the A_p machinery keeps the strict check
    if ((wv < 0.0).any() || !wv.isFinite().all())
        throw SingularWeightError("weight must be nonnegative and finite on the grid");
    const Real sum = (f.samples().abs().pow(p) * wv).sum() * f.grid().cell_volume();
    return std::pow(sum, 1.0 / p);
}

}  // namespace anisolp
