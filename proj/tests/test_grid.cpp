#include <doctest.h>

#include <filesystem>

#include "anisolp/grid.hpp"
#include "anisolp/philox.hpp"

using namespace anisolp;

namespace {

SpatialField random_field(const GridSpec& g, std::uint64_t seed) {
    Eigen::ArrayXcd s(g.size());
    for (Index i = 0; i < g.size(); ++i) {
        const auto w = Philox4x64::block({static_cast<std::uint64_t>(i), 0, 0, 0}, {seed, 0});
        const auto gp = gaussian_pair(w[0], w[1]);
        s[i] = Complex(gp[0], gp[1]);
    }
    return SpatialField(g, std::move(s));
}

}  // namespace

TEST_CASE("grid spec validation and indexing") {
    CHECK_THROWS_AS(GridSpec::cube(2, 16.0, 12), DomainError);   // not a power of two
    CHECK_THROWS_AS(GridSpec::cube(2, 16.0, 4), DomainError);    // too few points
    CHECK_THROWS_AS(GridSpec::cube(2, -1.0, 16), DomainError);

    const GridSpec g = GridSpec::cube(2, 16.0, 16);
    CHECK(g.size() == 256);
    CHECK(g.cell_volume() == doctest::Approx(1.0));
    // FFT-order coordinates: index 0 -> 0, index N/2 -> -L/2
    CHECK(g.coordinate(0)[0] == 0.0);
    Index idx[2] = {8, 0};
    CHECK(g.coordinate(g.flatten(idx))[0] == doctest::Approx(-8.0));
    CHECK(g.frequency(g.flatten(idx))[0] == doctest::Approx(-0.5));
}

TEST_CASE("constant field transforms to a single DC coefficient") {
    const GridSpec g = GridSpec::cube(2, 16.0, 32);
    SpatialField f(g, Eigen::ArrayXcd::Constant(g.size(), Complex(2.5, 0.0)));
    const SpectralField F = to_spectrum(f);
    CHECK(std::abs(F.coeffs()[0] - Complex(2.5 * 256.0, 0.0)) < 1e-9);
    Real off = 0.0;
    for (Index i = 1; i < g.size(); ++i) off = std::max(off, std::abs(F.coeffs()[i]));
    CHECK(off < 1e-9);
}

TEST_CASE("self-dual Gaussian") {
    const GridSpec g = GridSpec::cube(2, 16.0, 128);
    Eigen::ArrayXcd s(g.size());
    for (Index i = 0; i < g.size(); ++i)
        s[i] = std::exp(-kPi * g.coordinate(i).squaredNorm());
    const SpectralField F = to_spectrum(SpatialField(g, std::move(s)));
    Real worst = 0.0;
    for (Index i = 0; i < g.size(); ++i) {
        const Real expected = std::exp(-kPi * g.frequency(i).squaredNorm());
        worst = std::max(worst, std::abs(F.coeffs()[i] - expected));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("round trip and Parseval") {
    const GridSpec g = GridSpec::cube(2, 8.0, 64);
    const SpatialField f = random_field(g, 11);
    const SpatialField back = from_spectrum(to_spectrum(f));
    CHECK((back.samples() - f.samples()).abs().maxCoeff() < 1e-12 * f.samples().abs().maxCoeff());
    CHECK(l2_norm(f) == doctest::Approx(spectral_l2_norm(to_spectrum(f))).epsilon(1e-10));
}

TEST_CASE("refine_field keeps the band-limited function") {
    const GridSpec g = GridSpec::cube(1, 8.0, 16);
    SpectralField F = SpectralField::zero(g);
    F.coeffs()[3] = Complex(1.0, -2.0);   // mode 3/L
    F.coeffs()[13] = Complex(0.5, 0.25);  // mode -3/L
    const SpatialField f = from_spectrum(F);
    const SpatialField fine = refine_field(f);
    CHECK(fine.grid().points[0] == 32);
    // same continuous function sampled on the finer lattice
    Real worst = 0.0;
    for (Index i = 0; i < fine.grid().size(); ++i) {
        const Real x = fine.grid().coordinate(i)[0];
        const Complex expected = (Complex(1.0, -2.0) * std::polar(1.0, kTwoPi * (3.0 / 8.0) * x) +
                                  Complex(0.5, 0.25) * std::polar(1.0, -kTwoPi * (3.0 / 8.0) * x)) /
                                 8.0;
        worst = std::max(worst, std::abs(fine.samples()[i] - expected));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("field files round trip") {
    const GridSpec g = GridSpec::cube(2, 4.0, 16);
    const SpatialField f = random_field(g, 5);
    const auto dir = std::filesystem::temp_directory_path() / "anisolp_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "roundtrip.fld";
    save_field(path, f);
    const SpatialField back = load_spatial_field(path);
    CHECK(back.grid() == g);
    CHECK((back.samples() - f.samples()).abs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(load_spectral_field(path), ShapeError);  // kind mismatch

    const SpectralField F = to_spectrum(f);
    const auto spath = dir / "roundtrip_spec.fld";
    save_field(spath, F);
    const SpectralField backF = load_spectral_field(spath);
    CHECK((backF.coeffs() - F.coeffs()).abs().maxCoeff() == 0.0);
}

TEST_CASE("transform linearity") {
    const GridSpec g = GridSpec::cube(2, 8.0, 32);
    const SpatialField a = random_field(g, 1), b = random_field(g, 2);
    const Complex c(0.7, -1.3);
    SpatialField combo(g, c * a.samples() + b.samples());
    const SpectralField lhs = to_spectrum(combo);
    const Eigen::ArrayXcd rhs = c * to_spectrum(a).coeffs() + to_spectrum(b).coeffs();
    CHECK((lhs.coeffs() - rhs).abs().maxCoeff() < 1e-12 * rhs.abs().maxCoeff());
}
