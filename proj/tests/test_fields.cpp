#include <doctest.h>

#include "anisolp/cutoff.hpp"
#include "anisolp/fields.hpp"

using namespace anisolp;

namespace {

const DilationGroup& diag12() {
    static const DilationGroup G = [] {
        MatrixN P(2, 2);
        P << 1.0, 0.0, 0.0, 2.0;
        return make_dilation_group(P);
    }();
    return G;
}

}  // namespace

TEST_CASE("smooth cutoff shape") {
    const SmoothCutoff& phi = SmoothCutoff::standard();
    CHECK(phi(0.3) == 1.0);
    CHECK(phi(1.0) == 1.0);
    CHECK(phi(2.0) == 0.0);
    CHECK(phi(5.0) == 0.0);
    Real prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
        const Real v = phi(1.0 + i * 0.01);
        CHECK(v <= prev + 1e-15);  // monotone on the transition
        CHECK(v >= 0.0);
        prev = v;
    }
}

TEST_CASE("band limit projector") {
    const DilationGroup& G = diag12();
    const GridSpec grid = GridSpec::cube(2, 16.0, 64);

    // constant field dies (zeta(0) = 0)
    SpatialField c(grid, Eigen::ArrayXcd::Constant(grid.size(), Complex(1.0, 0.0)));
    CHECK(band_limit(c, G, 0.25).samples().abs().maxCoeff() < 1e-13);

    // a pure mode on the unit shell is untouched for eps = 1/4
    SpectralField M = SpectralField::zero(grid);
    Index mode_idx = -1;
    const auto rho = rho_star_lattice(G, grid);
    for (Index i = 0; i < grid.size(); ++i) {
        if (std::abs((*rho)[i] - 1.0) < 0.05) { mode_idx = i; break; }
    }
    REQUIRE(mode_idx >= 0);
    M.coeffs()[mode_idx] = Complex(1.0, 0.5);
    const SpatialField mode = from_spectrum(M);
    const SpatialField banded = band_limit(mode, G, 0.25);
    CHECK((banded.samples() - mode.samples()).abs().maxCoeff() < 1e-12);

    // idempotence against eps/2 on a random field
    const SpatialField f = random_test_function(42, G, grid, 0.125);
    const SpatialField once = band_limit(f, G, 0.2);
    const SpatialField twice = band_limit(once, G, 0.1);
    CHECK((once.samples() - twice.samples()).abs().maxCoeff() <=
          1e-12 * once.samples().abs().maxCoeff());

    CHECK_THROWS_AS(band_limit(f, G, 0.0), DomainError);
    CHECK_THROWS_AS(band_limit(f, G, 0.5), DomainError);
}

TEST_CASE("random test functions") {
    const DilationGroup& G = diag12();
    const GridSpec grid = GridSpec::cube(2, 16.0, 64);
    const Real eps = 0.125;

    const SpatialField a = random_test_function(7, G, grid, eps);
    const SpatialField b = random_test_function(7, G, grid, eps);
    CHECK((a.samples() - b.samples()).abs().maxCoeff() == 0.0);  // bit-identical

    const SpatialField c = random_test_function(8, G, grid, eps);
    CHECK((a.samples() - c.samples()).abs().maxCoeff() > 1e-3);  // different seed differs

    CHECK(l2_norm(a) == doctest::Approx(1.0).epsilon(1e-12));

    const SpectralField A = to_spectrum(a);
    CHECK(std::abs(A.coeffs()[0]) < 1e-12);  // zero mean

    // spectrum support inside the closed band {eps/2 <= rho* <= 2/eps}
    const auto rho = rho_star_lattice(G, grid);
    for (Index i = 0; i < grid.size(); ++i) {
        if (std::abs(A.coeffs()[i]) > 1e-14) {
            CHECK((*rho)[i] >= eps / 2.0);
            CHECK((*rho)[i] <= 2.0 / eps);
        }
    }

    const auto [lo, hi] = spectral_band(a, G);
    CHECK(lo >= eps / 2.0);
    CHECK(hi <= 2.0 / eps);
}

TEST_CASE("parseval holds across a family and band limiting contracts") {
    const DilationGroup& G = diag12();
    const GridSpec grid = GridSpec::cube(2, 16.0, 32);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SpatialField f = random_test_function(900 + seed, G, grid, 0.125);
        CHECK(std::abs(l2_norm(f) - spectral_l2_norm(to_spectrum(f))) <= 1e-10 * l2_norm(f));
    }
    const SpatialField f = random_test_function(77, G, grid, 0.2);
    CHECK(l2_norm(band_limit(f, G, 0.3)) <= l2_norm(f) * (1.0 + 1e-14));
}

TEST_CASE("weighted norms") {
    const DilationGroup& G = diag12();
    const GridSpec grid = GridSpec::cube(2, 16.0, 64);
    const SpatialField f = random_test_function(3, G, grid, 0.125);

    // p = 2 with w == 1 reduces to the spectral L2 norm
    CHECK(weighted_lp_norm(f, 2.0, Weight::one()) ==
          doctest::Approx(spectral_l2_norm(to_spectrum(f))).epsilon(1e-10));

    // constant field, any p: |c| (prod L)^{1/p}
    SpatialField c(grid, Eigen::ArrayXcd::Constant(grid.size(), Complex(0.0, -3.0)));
    CHECK(weighted_lp_norm(c, 3.0, Weight::one()) ==
          doctest::Approx(3.0 * std::pow(256.0, 1.0 / 3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(weighted_lp_norm(f, 1.0, Weight::one()), DomainError);
    CHECK_THROWS_AS(power_weight(G, -1.0, 0.0), SingularWeightError);

    // power weight rho^{1/2}, p = 2, against a refined-grid quadrature oracle
    // on a Gaussian (isotropic group, so rho = |x| in closed form)
    const DilationGroup iso = make_dilation_group(MatrixN::Identity(2, 2));
    // the |x|^{1/2} cusp at the origin needs a fine grid for lattice-point
    // quadrature to settle; 256 per axis brings the error under 0.5%
    const GridSpec g2 = GridSpec::cube(2, 16.0, 256);
    Eigen::ArrayXcd s(g2.size());
    for (Index i = 0; i < g2.size(); ++i)
        s[i] = std::exp(-kPi * g2.coordinate(i).squaredNorm());
    const SpatialField gauss(g2, std::move(s));
    const Weight w = power_weight(iso, 0.5, 0.0);
    const Real norm = weighted_lp_norm(gauss, 2.0, w);

    // oracle: direct midpoint quadrature at 4x resolution with exact values
    const Index fine_n = 1024;
    const Real h = 16.0 / fine_n;
    Real sum = 0.0;
    for (Index i = 0; i < fine_n; ++i)
        for (Index j = 0; j < fine_n; ++j) {
            const Real x = -8.0 + (i + 0.5) * h, y = -8.0 + (j + 0.5) * h;
            const Real v = std::exp(-kPi * (x * x + y * y));
            sum += v * v * std::sqrt(std::hypot(x, y)) * h * h;
        }
    CHECK(std::abs(norm - std::sqrt(sum)) / std::sqrt(sum) < 0.005);
}

TEST_CASE("weight values positivity guard") {
    const DilationGroup& G = diag12();
    const GridSpec grid = GridSpec::cube(2, 16.0, 32);
    const Weight w = power_weight(G, -0.5, 0.1);
    const Eigen::ArrayXd values = weight_values(w, grid);
    CHECK((values > 0.0).all());
    CHECK(values.maxCoeff() == doctest::Approx(std::pow(0.1, -0.5)));
}
